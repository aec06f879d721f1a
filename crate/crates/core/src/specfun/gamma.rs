//! Gamma-family functions of a real argument.
//!
//! `ln |Γ(x)|` comes from a Lanczos sum (g = 7, nine terms) for `x ≥ 1/2`;
//! smaller arguments go through the reflection formula with the sign of
//! `Γ(x)` tracked separately, so ratios of gamma functions at large negative
//! arguments never overflow.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln(2π) / 2`
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// True when `x` is a pole of Γ (zero or a negative integer).
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r <= -1.0 {
        r += 2.0;
    } else if r > 1.0 {
        r -= 2.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// `cos(πx)` with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x % 2.0).abs();
    // cos(πr) on [0, 2): fold onto sin of a reduced argument.
    if r <= 0.5 {
        sin_pi(0.5 - r)
    } else if r <= 1.5 {
        -sin_pi(r - 0.5)
    } else {
        sin_pi(r - 1.5)
    }
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Returns `(ln |Γ(x)|, sign Γ(x))`.
///
/// Fails with [`Error::GammaPole`] at zero and the negative integers.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain {
            function: "ln_gamma_signed",
            arg: x,
            reason: "NaN",
        });
    }
    if is_gamma_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x >= 0.5 {
        return Ok((ln_gamma_lanczos(x), 1.0));
    }
    // Γ(x) Γ(1 - x) = π / sin(πx)
    let s = sin_pi(x);
    let ln_mag = PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x);
    Ok((ln_mag, s.signum()))
}

/// Γ(x); overflows to ±∞ for large positive arguments like the plain function.
pub fn gamma(x: f64) -> Result<f64> {
    let (m, s) = ln_gamma_signed(x)?;
    Ok(s * m.exp())
}

/// 1/Γ(x), an entire function: exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((m, s)) => s * (-m).exp(),
        Err(_) if x.is_nan() => f64::NAN,
        Err(_) => 0.0,
    }
}

/// Digamma ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    if is_gamma_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        // ψ(1 - x) - ψ(x) = π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 20.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    Ok(acc + x.ln() - 0.5 / x - tail)
}
