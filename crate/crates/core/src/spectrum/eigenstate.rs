use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{gauss_legendre, is_gamma_pole, kummer_u_3half, ln_gamma_signed};
use crate::spectrum::condition::{
    branch_kummer_interval, energy_of_kummer_a, inv_a_of_kummer_a, inv_a_slope, kummer_a,
};

/// Knobs for [`energy_of_inv_a_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Number of supported branches; valid indices are `0..branch_max`.
    pub branch_max: usize,
    /// Lowest energy the ground-branch bracket may expand to.
    pub energy_floor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            branch_max: 3,
            energy_floor: -1.0e4,
        }
    }
}

/// A normalized s-wave eigenstate of the relative Hamiltonian.
///
/// The wavefunction is `ψ(r) = A e^{-r²/2} U(ν, 3/2, r²)` with `ν = 3/4 - E/2`,
/// times a sign chosen so that `r ψ(r) > 0` as `r → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenState {
    pub branch: usize,
    pub inv_a: f64,
    pub energy: f64,
    /// Positive normalization constant `A`.
    pub norm_const: f64,
    #[serde(skip)]
    nu: f64,
    #[serde(skip)]
    phase: f64,
}

impl EigenState {
    fn from_kummer_a(branch: usize, inv_a: f64, nu: f64) -> Result<Self> {
        let phase = if is_gamma_pole(nu) {
            // U(-k, 3/2, 0) has sign (-1)^k
            if (nu as i64) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        } else {
            ln_gamma_signed(nu)?.1
        };
        let mut state = Self {
            branch,
            inv_a,
            energy: energy_of_kummer_a(nu),
            norm_const: 1.0,
            nu,
            phase,
        };
        let norm = 4.0 * PI * integrate_radial(&state, |u| u * u)?;
        state.norm_const = norm.sqrt().recip();
        Ok(state)
    }

    /// The noninteracting state (`a = 0`) on the given branch.
    pub fn noninteracting(branch: usize) -> Result<Self> {
        Self::from_kummer_a(branch, f64::NEG_INFINITY, -(branch as f64))
    }

    /// First Kummer parameter `ν = 3/4 - E/2`.
    pub fn kummer_a(&self) -> f64 {
        self.nu
    }

    /// Overall sign applied to `A e^{-r²/2} U`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// ψ(r), normalized so that `4π ∫ r² ψ² dr = 1`.
    pub fn psi_rel(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain {
                function: "psi_rel",
                arg: r,
                reason: "r must be positive",
            });
        }
        Ok(self.reduced(r)? / r)
    }

    /// `u(r) = r ψ(r)`, finite at the origin.
    pub fn reduced(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain {
                function: "reduced",
                arg: r,
                reason: "r must be finite and non-negative",
            });
        }
        if r == 0.0 {
            return Ok(self.contact_amplitude());
        }
        let x = r * r;
        Ok(self.phase * self.norm_const * r * (-0.5 * x).exp() * kummer_u_3half(self.nu, x)?)
    }

    /// `lim_{r→0} r ψ(r)`; zero for the noninteracting states.
    pub fn contact_amplitude(&self) -> f64 {
        if is_gamma_pole(self.nu) {
            return 0.0;
        }
        // U(ν, 3/2, r²) ~ √π / Γ(ν) · r^{-1}
        let (lg, _) = ln_gamma_signed(self.nu).expect("checked above");
        self.norm_const * (0.5 * PI.ln() - lg).exp()
    }

    /// Radial probability density `4π r² |ψ(r)|²`.
    pub fn radial_density(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain {
                function: "radial_density",
                arg: r,
                reason: "r must be positive",
            });
        }
        let u = self.reduced(r)?;
        Ok(4.0 * PI * u * u)
    }

    /// Radius beyond which `u(r)` is below `e^{-90}` of its scale.
    pub fn extent(&self) -> f64 {
        let kappa = (4.0 * self.nu - 3.0).max(0.0).sqrt();
        -kappa + (kappa * kappa + 180.0).sqrt()
    }

    /// Natural length scale of the short-range part of `u`.
    pub(crate) fn panel_width(&self) -> f64 {
        let kappa = (4.0 * self.nu - 3.0).max(0.0).sqrt();
        0.5f64.min(2.0 / (kappa + 1.0))
    }
}

/// `∫₀^∞ g(u(r)) dr` with `u` the unnormalized-by-`A` reduced wavefunction of
/// `state`, by Gauss–Legendre panels. `u` is bounded, so no endpoint
/// treatment is needed at the origin.
fn integrate_radial<G: Fn(f64) -> f64>(state: &EigenState, g: G) -> Result<f64> {
    let rule = gauss_legendre(crate::specfun::DEFAULT_QUAD_ORDER)?;
    let cut = state.extent();
    let width = state.panel_width();
    let panels = (cut / width).ceil() as usize;
    let width = cut / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = p as f64 * width;
        for (r, w) in rule.mapped(a, a + width) {
            let u = state.reduced(r)? / state.norm_const;
            total += w * g(u);
        }
    }
    Ok(total)
}

/// Eigenstate on `branch` at the given inverse scattering length, with
/// default [`SolverOptions`].
pub fn energy_of_inv_a(inv_a: f64, branch: usize) -> Result<EigenState> {
    energy_of_inv_a_with(inv_a, branch, &SolverOptions::default())
}

/// Solves `2 Γ(ν)/Γ(ν - 1/2) = inv_a` for `ν` inside the branch interval,
/// where the left side increases monotonically from `-∞` to `+∞`.
///
/// `inv_a = -∞` gives the noninteracting level `E = 3/2 + 2b` exactly, and
/// `inv_a = +∞` the level `2b - 1/2` for `b ≥ 1`.
pub fn energy_of_inv_a_with(inv_a: f64, branch: usize, opts: &SolverOptions) -> Result<EigenState> {
    if branch >= opts.branch_max {
        return Err(Error::InvalidParameter(format!(
            "branch {branch} outside supported range 0..{}",
            opts.branch_max
        )));
    }
    if inv_a.is_nan() {
        return Err(Error::InvalidParameter("1/a is NaN".into()));
    }
    let (nu_lo, nu_hi) = branch_kummer_interval(branch);
    if inv_a == f64::NEG_INFINITY {
        return EigenState::from_kummer_a(branch, inv_a, nu_lo);
    }
    if inv_a == f64::INFINITY {
        if branch == 0 {
            return Err(Error::Bracket {
                branch,
                inv_a,
                floor: opts.energy_floor,
            });
        }
        return EigenState::from_kummer_a(branch, inv_a, nu_hi);
    }

    let hi = if nu_hi.is_finite() {
        nu_hi
    } else {
        ground_upper_bracket(inv_a, opts)?
    };
    let nu = solve_kummer_a(inv_a, nu_lo, hi)?;
    EigenState::from_kummer_a(branch, inv_a, nu)
}

/// Finds `ν` on the ground branch with `1/a(ν) > target`, expanding the
/// energy downward by doubling from just below the dimer estimate.
fn ground_upper_bracket(target: f64, opts: &SolverOptions) -> Result<f64> {
    let pos = target.max(0.0);
    let mut e = (0.5f64.min(-0.5 * pos * pos) - 1.0).max(opts.energy_floor);
    loop {
        let nu = kummer_a(e);
        if inv_a_of_kummer_a(nu)? > target {
            return Ok(nu);
        }
        if e <= opts.energy_floor {
            return Err(Error::Bracket {
                branch: 0,
                inv_a: target,
                floor: opts.energy_floor,
            });
        }
        e = (2.0 * e).max(opts.energy_floor);
    }
}

/// Root of `1/a(ν) = target` on the open interval `(lo, hi)`, across which
/// `1/a` increases. Endpoints are never evaluated (they may be poles).
fn solve_kummer_a(target: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f = |nu: f64| -> Result<f64> { Ok(inv_a_of_kummer_a(nu)? - target) };

    // bisection down to 1e-6, relative to the distance from the nearest pole
    let mut x = 0.5 * (lo + hi);
    let mut fx = f(x)?;
    while hi - lo > 1e-6 * (1.0 + x.abs()) {
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        x = 0.5 * (lo + hi);
        fx = f(x)?;
    }

    // safeguarded Newton polish
    let mut trace = Vec::new();
    for _ in 0..200 {
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = inv_a_slope(x, fx + target)
            .filter(|d| *d > 0.0 && d.is_finite())
            .map(|d| x - fx / d)
            .filter(|n| *n > lo && *n < hi);
        let next = newton.unwrap_or(0.5 * (lo + hi));
        let step = (next - x).abs();
        x = next;
        fx = f(x)?;
        trace.push(x);
        if step <= 1e-15 * x.abs().max(1e-300) || hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        if step <= 1e-12 * x.abs() {
            // one more Newton step settles the last bits
            if let Some(d) = inv_a_slope(x, fx + target).filter(|d| *d > 0.0) {
                let n = x - fx / d;
                if n > lo && n < hi {
                    x = n;
                }
            }
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        what: "eigenvalue root",
        trace: format!("{trace:?}"),
    })
}
