//! Independent energy solver: integrates `u'' = (r² - 2E) u` from the contact
//! condition at the origin and from the gaussian tail, and matches the two
//! at `r = 1`.

use crate::error::{Error, Result};

const STEP: f64 = 1e-4;
const START: f64 = 1e-4;
const MATCH_RADIUS: f64 = 1.0;
const SCAN_STEP: f64 = 0.05;

/// State `(u, u')`.
type Pair = (f64, f64);

fn rk4(energy: f64, mut r: f64, mut y: Pair, r_end: f64) -> Pair {
    let n = ((r_end - r).abs() / STEP).ceil().max(1.0) as usize;
    let h = (r_end - r) / n as f64;
    let f = |r: f64, (u, v): Pair| -> Pair { (v, (r * r - 2.0 * energy) * u) };
    for _ in 0..n {
        let k1 = f(r, y);
        let k2 = f(r + 0.5 * h, (y.0 + 0.5 * h * k1.0, y.1 + 0.5 * h * k1.1));
        let k3 = f(r + 0.5 * h, (y.0 + 0.5 * h * k2.0, y.1 + 0.5 * h * k2.1));
        let k4 = f(r + h, (y.0 + h * k3.0, y.1 + h * k3.1));
        y.0 += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        y.1 += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        r += h;
    }
    y
}

/// Power series of the regular solution about the origin with
/// `u(0) = c0`, `u'(0) = c1`, summed at `r`.
fn series_start(energy: f64, c0: f64, c1: f64, r: f64) -> Pair {
    let mut c = [0.0f64; 12];
    c[0] = c0;
    c[1] = c1;
    for k in 0..10 {
        let prev = if k >= 2 { c[k - 2] } else { 0.0 };
        c[k + 2] = (prev - 2.0 * energy * c[k]) / ((k + 2) as f64 * (k + 1) as f64);
    }
    let mut u = 0.0;
    let mut du = 0.0;
    for (k, ck) in c.iter().enumerate().rev() {
        u = u * r + ck;
        if k > 0 {
            du = du * r + k as f64 * ck;
        }
    }
    (u, du)
}

fn contact_values(inv_a: f64) -> (f64, f64) {
    if inv_a.is_infinite() {
        (0.0, 1.0)
    } else {
        (1.0, -inv_a)
    }
}

/// `u(r)` of the outward solution normalized to `u(0) = 1`
/// (or `u'(0) = 1` when `inv_a` is infinite).
pub fn outward_profile(inv_a: f64, energy: f64, r: f64) -> Result<f64> {
    if !(r >= START) {
        return Err(Error::Domain {
            function: "outward_profile",
            arg: r,
            reason: "r must be at least the start radius 1e-4",
        });
    }
    let (c0, c1) = contact_values(inv_a);
    let y = series_start(energy, c0, c1, START);
    Ok(rk4(energy, START, y, r).0)
}

/// Normalized Wronskian of the outward and inward solutions at the
/// matching radius. Zero exactly at eigenvalues.
fn mismatch(inv_a: f64, energy: f64) -> f64 {
    let (c0, c1) = contact_values(inv_a);
    let out = rk4(
        energy,
        START,
        series_start(energy, c0, c1, START),
        MATCH_RADIUS,
    );
    let r_far = 6.0f64.max((2.0 * energy).max(0.0).sqrt() + 6.0);
    let tail = (1.0, -r_far + (energy - 0.5) / r_far);
    let inw = rk4(energy, r_far, tail, MATCH_RADIUS);
    let w = out.0 * inw.1 - out.1 * inw.0;
    w / ((out.0.hypot(out.1)) * (inw.0.hypot(inw.1)))
}

/// Energy of the given branch by shooting.
///
/// Scans upward from below the deepest possible bound state and bisects the
/// `(branch + 1)`-th sign change of the matching function to 1e-12.
/// For `inv_a = +∞` the ground branch does not exist and the count starts at
/// branch 1.
pub fn shooting_oracle(inv_a: f64, branch: usize) -> Result<f64> {
    if inv_a.is_nan() {
        return Err(Error::InvalidParameter("1/a is NaN".into()));
    }
    let target = if inv_a == f64::INFINITY {
        if branch == 0 {
            return Err(Error::InvalidParameter(
                "no ground branch at 1/a = +inf".into(),
            ));
        }
        branch - 1
    } else {
        branch
    };
    let pos = if inv_a.is_finite() {
        inv_a.max(0.0)
    } else {
        0.0
    };
    let e_start = -pos * pos - 3.0;
    let e_stop = 2.0 * branch as f64 + 4.0;

    let mut trace = Vec::new();
    let mut e0 = e_start;
    let mut f0 = mismatch(inv_a, e0);
    let mut seen = 0usize;
    while e0 < e_stop {
        let e1 = e0 + SCAN_STEP;
        let f1 = mismatch(inv_a, e1);
        if f0 == 0.0 || f0.signum() != f1.signum() {
            trace.push(e0);
            if seen == target {
                return Ok(if f0 == 0.0 {
                    e0
                } else {
                    bisect(inv_a, e0, e1, f0)
                });
            }
            seen += 1;
        }
        e0 = e1;
        f0 = f1;
    }
    Err(Error::NoConvergence {
        what: "shooting scan",
        trace: format!(
            "found {seen} sign changes in [{e_start}, {e_stop}] at {trace:?}, needed {}",
            target + 1
        ),
    })
}

fn bisect(inv_a: f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let f = mismatch(inv_a, mid);
        if f == 0.0 {
            return mid;
        }
        if f.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
