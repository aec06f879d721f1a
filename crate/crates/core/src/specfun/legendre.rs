use crate::error::{Error, Result};

/// Legendre polynomials `P_0(x) ..= P_{l_max}(x)` by the three-term recurrence.
pub fn legendre_all(l_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain {
            function: "legendre_all",
            arg: x,
            reason: "|x| must not exceed 1",
        });
    }
    let mut out = vec![0.0; l_max + 1];
    legendre_fill(x, &mut out);
    Ok(out)
}

/// Fills `out[l] = P_l(x)` for `l < out.len()`. No domain check.
#[inline]
pub fn legendre_fill(x: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    out[0] = 1.0;
    if n == 1 {
        return;
    }
    out[1] = x;
    for l in 2..n {
        let lf = l as f64;
        out[l] = ((2.0 * lf - 1.0) * x * out[l - 1] - (lf - 1.0) * out[l - 2]) / lf;
    }
}

/// `P_n(x)` together with its derivative.
pub(crate) fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for l in 2..=n {
        let lf = l as f64;
        let p2 = ((2.0 * lf - 1.0) * x * p1 - (lf - 1.0) * p0) / lf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
