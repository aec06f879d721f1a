use serde::Serialize;

use crate::error::{Error, Result};

/// Midpoint grid `r_i = (i + 1/2) dr`, `i = 0..N`, with `N dr = r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    pub dr: f64,
    pub r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub const DEFAULT_DR: f64 = 0.01;
    pub const DEFAULT_R_MAX: f64 = 3.5;

    /// `r_max` must be a whole multiple of `dr` (to 1e-9 relative).
    pub fn new(dr: f64, r_max: f64) -> Result<Self> {
        if !(dr > 0.0) || !dr.is_finite() || !(r_max > dr) || !r_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < dr < r_max, got dr = {dr}, r_max = {r_max}"
            )));
        }
        let n = (r_max / dr).round();
        if (n * dr - r_max).abs() > 1e-9 * r_max {
            return Err(Error::InvalidParameter(format!(
                "r_max = {r_max} is not a multiple of dr = {dr}"
            )));
        }
        Ok(Self {
            dr,
            r_max,
            n: n as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dr
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Same range with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            dr: 0.5 * self.dr,
            r_max: self.r_max,
            n: 2 * self.n,
        }
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DR, Self::DEFAULT_R_MAX).expect("default grid is valid")
    }
}
