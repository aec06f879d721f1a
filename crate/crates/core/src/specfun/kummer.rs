//! Confluent hypergeometric functions.
//!
//! `U(a, 3/2, x)` is evaluated from its Laplace-type integral
//!
//! ```text
//! U(a, b, x) = 1/Γ(a) ∫₀^∞ e^{-xt} t^{a-1} (1+t)^{b-a-1} dt,   a > 0,
//! ```
//!
//! after the substitution `t = e^s`, which turns it into an integral over the
//! whole real line of a log-concave analytic function. The trapezoidal rule on
//! such integrands converges geometrically in the step size, so the result is
//! accurate to near machine precision at every `x > 0` with no cancellation.
//! For `a < 1` the value is carried down from `U(a+n)`, `U(a+n+1)` by the
//! three-term recurrence in `a`, which is the stable direction for `U`.

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma_signed;

const B: f64 = 1.5;
/// Integrand values below `exp(peak - TAIL_DROP)` are dropped.
const TAIL_DROP: f64 = 45.0;
const MAX_STEP: f64 = 0.15;

/// log of the transformed integrand: a s - x e^s + (b - a - 1) ln(1 + e^s)
#[inline]
fn log_integrand(a: f64, x: f64, s: f64) -> f64 {
    let es = s.exp();
    a * s - x * es + (B - a - 1.0) * es.ln_1p()
}

#[inline]
fn logistic(s: f64) -> f64 {
    1.0 / (1.0 + (-s).exp())
}

/// Location and curvature of the integrand peak.
fn peak(a: f64, x: f64) -> (f64, f64) {
    let c = B - a - 1.0;
    let slope = |s: f64| a - x * s.exp() + c * logistic(s);
    let curvature = |s: f64| {
        let sg = logistic(s);
        -x * s.exp() + c * sg * (1.0 - sg)
    };
    // slope(s) >= min(a, b - 1) - x e^s and <= max(a, b - 1) - x e^s
    let mut lo = (0.5 * a.min(B - 1.0) / x).ln();
    let mut hi = ((a.max(B - 1.0) + 1.0) / x).ln();
    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = slope(s);
        if f > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let step = f / curvature(s);
        let next = s - step;
        s = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if step.abs() < 1e-13 * s.abs().max(1.0) || hi - lo < 1e-13 * s.abs().max(1.0) {
            break;
        }
    }
    (s, -curvature(s))
}

/// `U(a, 3/2, x)` for `a >= 1` straight from the integral.
fn u_integral(a: f64, x: f64) -> f64 {
    debug_assert!(a >= 1.0 && x > 0.0);
    let (s0, kappa) = peak(a, x);
    let h = MAX_STEP.min(0.5 / kappa.sqrt());
    let f0 = log_integrand(a, x, s0);
    let mut sum = 1.0;
    for dir in [-1.0, 1.0] {
        let mut k = 1.0;
        loop {
            let d = log_integrand(a, x, s0 + dir * k * h) - f0;
            if d < -TAIL_DROP {
                break;
            }
            sum += d.exp();
            k += 1.0;
        }
    }
    let (lg, _) = ln_gamma_signed(a).expect("a >= 1");
    (f0 - lg + (h * sum).ln()).exp()
}

/// Tricomi's confluent hypergeometric function `U(alpha, 3/2, x)`.
///
/// Valid for any real `alpha` and `x > 0`; `U` is singular like `x^{-1/2}` at
/// the origin, so `x <= 0` is rejected.
pub fn kummer_u_3half(alpha: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "kummer_u_3half",
            arg: x,
            reason: "U(a, 3/2, x) requires finite x > 0",
        });
    }
    if !alpha.is_finite() {
        return Err(Error::Domain {
            function: "kummer_u_3half",
            arg: alpha,
            reason: "alpha must be finite",
        });
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    if alpha >= 1.0 {
        return Ok(u_integral(alpha, x));
    }
    let steps = (1.0 - alpha).ceil();
    let top = alpha + steps;
    let mut upper = u_integral(top + 1.0, x);
    let mut cur = u_integral(top, x);
    let mut a = top;
    // U(a-1) = (2a + x - b) U(a) - a (a - b + 1) U(a+1)
    for _ in 0..steps as usize {
        let next = (2.0 * a + x - B) * cur - a * (a - B + 1.0) * upper;
        upper = cur;
        cur = next;
        a -= 1.0;
    }
    Ok(cur)
}

/// Kummer's regular function `M(a, b, x) = ₁F₁(a; b; x)` by direct summation.
///
/// Intended for moderate `|x|`; the series is summed until the terms stop
/// contributing at double precision.
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain {
            function: "kummer_m",
            arg: b,
            reason: "b must not be a non-positive integer",
        });
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..20_000 {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if term == 0.0 || (term.abs() < 1e-17 * sum.abs() && kf > x.abs()) {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        what: "kummer_m series",
        trace: format!("a = {a}, b = {b}, x = {x}"),
    })
}
