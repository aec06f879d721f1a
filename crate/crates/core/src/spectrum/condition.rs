//! The s-wave eigenvalue condition of the regularized contact interaction,
//!
//! ```text
//! 1/a = 2 Γ(-E/2 + 3/4) / Γ(-E/2 + 1/4),
//! ```
//!
//! written in terms of the first Kummer parameter `ν = 3/4 - E/2` of the
//! relative wavefunction, so that `1/a = 2 Γ(ν) / Γ(ν - 1/2)`.
//!
//! Poles of `Γ(ν)` (`E = 3/2, 7/2, ...`) are the noninteracting levels
//! (`a = 0`); poles of `Γ(ν - 1/2)` (`E = 1/2, 5/2, ...`) are the unitarity
//! levels (`1/a = 0`).

use crate::error::{Error, PoleFamily, Result};
use crate::specfun::{digamma, is_gamma_pole, ln_gamma_signed};

/// Human-readable tag of the condition, written into output headers.
pub const CONDITION_VARIANT: &str = "1/a = 2*Gamma(-E/2+3/4)/Gamma(-E/2+1/4)";

/// Kummer parameter `ν = 3/4 - E/2` for energy `E`.
#[inline]
pub fn kummer_a(energy: f64) -> f64 {
    0.75 - 0.5 * energy
}

/// Inverse of [`kummer_a`].
#[inline]
pub fn energy_of_kummer_a(nu: f64) -> f64 {
    1.5 - 2.0 * nu
}

/// `1/a` as a function of `ν`. Zero at the unitarity levels; an error at the
/// noninteracting levels, where it diverges.
pub fn inv_a_of_kummer_a(nu: f64) -> Result<f64> {
    if is_gamma_pole(nu) {
        return Err(Error::ConditionPole {
            energy: energy_of_kummer_a(nu),
            family: PoleFamily::Noninteracting,
        });
    }
    if is_gamma_pole(nu - 0.5) {
        return Ok(0.0);
    }
    let (ln_num, s_num) = ln_gamma_signed(nu)?;
    let (ln_den, s_den) = ln_gamma_signed(nu - 0.5)?;
    Ok(2.0 * s_num * s_den * (ln_num - ln_den).exp())
}

/// Inverse scattering length for which `energy` is a relative-motion
/// s-wave eigenvalue.
pub fn inv_a_of_energy(energy: f64) -> Result<f64> {
    if !energy.is_finite() {
        return Err(Error::Domain {
            function: "inv_a_of_energy",
            arg: energy,
            reason: "energy must be finite",
        });
    }
    inv_a_of_kummer_a(kummer_a(energy))
}

/// `d(1/a)/dν`, or `None` where the logarithmic form is unavailable.
pub(crate) fn inv_a_slope(nu: f64, inv_a: f64) -> Option<f64> {
    let d = digamma(nu).ok()? - digamma(nu - 0.5).ok()?;
    Some(inv_a * d)
}

/// Open interval of `ν` covered by a branch; `1/a` rises from `-∞` to `+∞`
/// across it.
pub fn branch_kummer_interval(branch: usize) -> (f64, f64) {
    if branch == 0 {
        (0.0, f64::INFINITY)
    } else {
        let b = branch as f64;
        (-b, 1.0 - b)
    }
}

/// Open energy interval of a branch: `(-∞, 3/2)` for the ground branch and
/// `(2b - 1/2, 2b + 3/2)` above it.
pub fn branch_energy_interval(branch: usize) -> (f64, f64) {
    let (lo, hi) = branch_kummer_interval(branch);
    (energy_of_kummer_a(hi), energy_of_kummer_a(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn unitarity_levels_are_zeros() {
        for e in [0.5, 2.5, 4.5, 6.5] {
            assert_eq!(inv_a_of_energy(e).unwrap(), 0.0);
        }
    }

    #[test]
    fn noninteracting_levels_are_poles() {
        for e in [1.5, 3.5, 5.5] {
            match inv_a_of_energy(e) {
                Err(Error::ConditionPole { energy, family }) => {
                    assert_eq!(energy, e);
                    assert_eq!(family, PoleFamily::Noninteracting);
                }
                other => panic!("expected pole error, got {other:?}"),
            }
        }
        // approaching from either side on the ground branch
        assert!(inv_a_of_energy(1.5 - 1e-9).unwrap() < -1e8);
        assert!(inv_a_of_energy(1.5 + 1e-9).unwrap() > 1e8);
    }

    #[test]
    fn value_at_minus_two() {
        // oracle: independent gamma evaluation, 2 Γ(7/4) / Γ(5/4)
        let expected = 2.0 * gamma(1.75).unwrap() / gamma(1.25).unwrap();
        let got = inv_a_of_energy(-2.0).unwrap();
        assert!((got - expected).abs() < 1e-13);
        assert!((got - 2.027_94).abs() < 1e-4);
    }

    #[test]
    fn no_overflow_at_large_energy() {
        for e in [-200.0, -150.5, 150.3, 199.9] {
            let v = inv_a_of_energy(e).unwrap();
            assert!(v.is_finite(), "E = {e}: {v}");
        }
        // deep-dimer scaling 1/a ≈ √(-2E)
        let v = inv_a_of_energy(-200.0).unwrap();
        assert!((v / 20.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn branch_intervals() {
        assert_eq!(branch_energy_interval(0), (f64::NEG_INFINITY, 1.5));
        assert_eq!(branch_energy_interval(1), (1.5, 3.5));
        assert_eq!(branch_energy_interval(2), (3.5, 5.5));
    }

    #[test]
    fn slope_matches_finite_difference() {
        for nu in [0.3, 1.7, -0.4, -1.3] {
            let g = inv_a_of_kummer_a(nu).unwrap();
            let h = 1e-6;
            let fd = (inv_a_of_kummer_a(nu + h).unwrap() - inv_a_of_kummer_a(nu - h).unwrap())
                / (2.0 * h);
            let s = inv_a_slope(nu, g).unwrap();
            assert!(
                (s - fd).abs() < 1e-6 * fd.abs().max(1.0),
                "nu = {nu}: {s} vs {fd}"
            );
            assert!(s > 0.0);
        }
    }
}
