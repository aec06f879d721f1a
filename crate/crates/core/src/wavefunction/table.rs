use crate::error::{Error, Result};

const PANEL_WIDTH: f64 = 0.125;
const DEGREE: usize = 16;

/// Piecewise Chebyshev interpolant of a smooth function on `[a, b]`.
#[derive(Debug, Clone)]
pub struct ChebyshevTable {
    a: f64,
    b: f64,
    width: f64,
    /// `DEGREE + 1` coefficients per panel.
    coeffs: Vec<f64>,
}

impl ChebyshevTable {
    pub fn build<F: Fn(f64) -> Result<f64>>(a: f64, b: f64, f: F) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "table interval [{a}, {b}] is empty or not finite"
            )));
        }
        let panels = ((b - a) / PANEL_WIDTH).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        let m = DEGREE + 1;
        let theta: Vec<f64> = (0..m)
            .map(|k| std::f64::consts::PI * (k as f64 + 0.5) / m as f64)
            .collect();
        let mut coeffs = Vec::with_capacity(panels * m);
        let mut values = vec![0.0; m];
        for p in 0..panels {
            let lo = a + p as f64 * width;
            for (v, t) in values.iter_mut().zip(&theta) {
                *v = f(lo + 0.5 * width * (1.0 + t.cos()))?;
            }
            for j in 0..m {
                let s: f64 = values
                    .iter()
                    .zip(&theta)
                    .map(|(v, t)| v * (j as f64 * t).cos())
                    .sum();
                let c = 2.0 * s / m as f64;
                coeffs.push(if j == 0 { 0.5 * c } else { c });
            }
        }
        Ok(Self {
            a,
            b,
            width,
            coeffs,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Interpolated value; arguments outside the domain are clamped to it.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.a, self.b);
        let m = DEGREE + 1;
        let panels = self.coeffs.len() / m;
        let p = (((x - self.a) / self.width) as usize).min(panels - 1);
        let lo = self.a + p as f64 * self.width;
        let t = 2.0 * (x - lo) / self.width - 1.0;
        let c = &self.coeffs[p * m..(p + 1) * m];
        // Clenshaw
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c[1..].iter().rev() {
            let b0 = 2.0 * t * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + c[0]
    }
}
