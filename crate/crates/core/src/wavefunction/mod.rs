//! Two-particle wavefunctions `Ψ(r1, r2, cos γ) = Φ(R) ψ(r)` with the
//! center of mass in its trap ground state.
//!
//! `R = |r1 + r2| / 2` and `r = |r1 - r2|`, so that
//! `2R² + r²/2 = r1² + r2²`.

mod table;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::EigenState;

pub use table::ChebyshevTable;

/// Center-of-mass ground state `Φ(R) = 2√2 e^{-2R²} / π^{3/4}`.
pub fn com_ground(big_r: f64) -> f64 {
    2.0 * 2f64.sqrt() * PI.powf(-0.75) * (-2.0 * big_r * big_r).exp()
}

/// Center-of-mass and relative distances `(R, r)`.
pub fn coordinates(r1: f64, r2: f64, cos_gamma: f64) -> (f64, f64) {
    let s = r1 * r1 + r2 * r2;
    let p = 2.0 * r1 * r2 * cos_gamma;
    (0.5 * (s + p).max(0.0).sqrt(), (s - p).max(0.0).sqrt())
}

/// Which relative wavefunction a [`TwoBodyState`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateKind {
    Trap(EigenState),
    /// Closed form of the `k`-th s-wave level at infinite scattering length.
    Unitarity {
        k: usize,
    },
}

/// `ψ_k(r) = c_k / (2√2 π^{3/4}) · e^{-r²/2} p_k(r²) / r` at unitarity.
const UNITARITY_PREFACTOR: [f64; 3] = [2.0, std::f64::consts::SQRT_2, 1.224_744_871_391_589];

fn unitarity_poly(k: usize, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 1.0 - 2.0 * x,
        _ => 1.0 - 4.0 * x + 4.0 / 3.0 * x * x,
    }
}

fn unitarity_reduced(k: usize, r: f64) -> f64 {
    let c = UNITARITY_PREFACTOR[k] / (2.0 * 2f64.sqrt() * PI.powf(0.75));
    c * (-0.5 * r * r).exp() * unitarity_poly(k, r * r)
}

/// A full two-particle state, evaluatable at `(r1, r2, cos γ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoBodyState {
    pub kind: StateKind,
}

impl TwoBodyState {
    pub fn trap(state: EigenState) -> Self {
        Self {
            kind: StateKind::Trap(state),
        }
    }

    /// Closed-form unitarity state, `k ∈ {0, 1, 2}`.
    pub fn unitarity(k: usize) -> Result<Self> {
        if k > 2 {
            return Err(Error::InvalidParameter(format!(
                "unitarity closed forms exist for k = 0, 1, 2, got {k}"
            )));
        }
        Ok(Self {
            kind: StateKind::Unitarity { k },
        })
    }

    /// The product state of two oscillator ground states.
    pub fn noninteracting() -> Result<Self> {
        Ok(Self::trap(EigenState::noninteracting(0)?))
    }

    /// Relative energy in trap quanta.
    pub fn energy(&self) -> f64 {
        match self.kind {
            StateKind::Trap(s) => s.energy,
            StateKind::Unitarity { k } => 0.5 + 2.0 * k as f64,
        }
    }

    /// `u(r) = r ψ(r)` of the relative motion; finite at `r = 0`.
    pub fn relative_reduced(&self, r: f64) -> Result<f64> {
        match self.kind {
            StateKind::Trap(s) => s.reduced(r),
            StateKind::Unitarity { k } => {
                if !(r >= 0.0) || !r.is_finite() {
                    return Err(Error::Domain {
                        function: "relative_reduced",
                        arg: r,
                        reason: "r must be finite and non-negative",
                    });
                }
                Ok(unitarity_reduced(k, r))
            }
        }
    }

    /// Tabulates `u(r)` on `[0, r_hi]` for repeated evaluation.
    pub fn reduced_table(&self, r_hi: f64) -> Result<ChebyshevTable> {
        ChebyshevTable::build(0.0, r_hi, |r| self.relative_reduced(r))
    }

    /// `Ψ(r1, r2, cos γ)`. Fails at the coincidence point `r = 0`.
    pub fn psi_full(&self, r1: f64, r2: f64, cos_gamma: f64) -> Result<f64> {
        check_point(r1, r2, cos_gamma)?;
        let (big_r, r) = coordinates(r1, r2, cos_gamma);
        if r == 0.0 {
            return Err(Error::Coincidence);
        }
        let psi = match self.kind {
            StateKind::Trap(s) => s.psi_rel(r)?,
            StateKind::Unitarity { k } => unitarity_reduced(k, r) / r,
        };
        Ok(com_ground(big_r) * psi)
    }
}

fn check_point(r1: f64, r2: f64, cos_gamma: f64) -> Result<()> {
    for (arg, name) in [(r1, "r1"), (r2, "r2")] {
        if !(arg >= 0.0) || !arg.is_finite() {
            return Err(Error::Domain {
                function: "psi_full",
                arg,
                reason: if name == "r1" {
                    "r1 must be finite and non-negative"
                } else {
                    "r2 must be finite and non-negative"
                },
            });
        }
    }
    if !(cos_gamma.abs() <= 1.0) {
        return Err(Error::Domain {
            function: "psi_full",
            arg: cos_gamma,
            reason: "cos(gamma) must lie in [-1, 1]",
        });
    }
    Ok(())
}

/// Closed-form unitarity state `Ψ_{1k}` evaluated directly:
///
/// ```text
/// Ψ_10 = 2/π^{3/2}      e^{-r1²-r2²} / r
/// Ψ_11 = √2/π^{3/2}     e^{-r1²-r2²} (1 - 2r²) / r
/// Ψ_12 = √(3/2)/π^{3/2} e^{-r1²-r2²} (1 - 4r² + 4r⁴/3) / r
/// ```
pub fn unitarity_state(k: usize, r1: f64, r2: f64, cos_gamma: f64) -> Result<f64> {
    if k > 2 {
        return Err(Error::InvalidParameter(format!(
            "unitarity closed forms exist for k = 0, 1, 2, got {k}"
        )));
    }
    check_point(r1, r2, cos_gamma)?;
    let (_, r) = coordinates(r1, r2, cos_gamma);
    if r == 0.0 {
        return Err(Error::Coincidence);
    }
    let pref = UNITARITY_PREFACTOR[k] / PI.powf(1.5);
    Ok(pref * (-r1 * r1 - r2 * r2).exp() * unitarity_poly(k, r * r) / r)
}
