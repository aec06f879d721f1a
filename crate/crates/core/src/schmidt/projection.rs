//! Legendre projection of `Ψ(r1, r2, cos γ)`.
//!
//! Changing variables from `cos γ` to the relative distance `r` turns
//!
//! ```text
//! α_l(r1, r2) = (2l+1)/2 ∫ Ψ P_l(cos γ) d(cos γ)
//! ```
//!
//! into `r1 r2 α_l = (2l+1)/2 ∫_{|r1-r2|}^{r1+r2} Φ(R) u(r) P_l(x) dr`
//! with `x = (r1² + r2² - r²) / (2 r1 r2)` and `u = r ψ` bounded, so the
//! integrand is smooth and Gauss–Legendre converges fast.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::schmidt::RadialGrid;
use crate::specfun::{gauss_legendre, legendre_fill, QuadratureRule, DEFAULT_QUAD_ORDER};
use crate::wavefunction::{com_ground, ChebyshevTable, TwoBodyState};

/// Gauss–Legendre order used when projecting up to `l_max`.
pub fn projection_order(l_max: usize) -> usize {
    DEFAULT_QUAD_ORDER.max(l_max + 32)
}

/// `r1 r2 α_l(r1, r2)` for `l = 0..=l_max`, given `u` as a callable.
fn weighted_alphas<U: Fn(f64) -> f64>(
    rule: &QuadratureRule,
    u: &U,
    r1: f64,
    r2: f64,
    out: &mut [f64],
    p: &mut [f64],
) {
    out.fill(0.0);
    let lo = (r1 - r2).abs();
    let hi = r1 + r2;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let s = r1 * r1 + r2 * r2;
    let inv = 1.0 / (2.0 * r1 * r2);
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let r = mid + half * t;
        let big_r2 = (2.0 * s - r * r).max(0.0) / 4.0;
        let x = ((s - r * r) * inv).clamp(-1.0, 1.0);
        let f = w * com_ground(big_r2.sqrt()) * u(r);
        legendre_fill(x, p);
        for (o, pl) in out.iter_mut().zip(p.iter()) {
            *o += f * pl;
        }
    }
    for (l, o) in out.iter_mut().enumerate() {
        *o *= (l as f64 + 0.5) * half;
    }
}

/// `α_0..α_{l_max}` at a single point, evaluating `u` directly.
pub fn project_pair(state: &TwoBodyState, r1: f64, r2: f64, l_max: usize) -> Result<Vec<f64>> {
    for arg in [r1, r2] {
        if !(arg > 0.0) || !arg.is_finite() {
            return Err(Error::Domain {
                function: "project_pair",
                arg,
                reason: "radii must be positive and finite",
            });
        }
    }
    let rule = gauss_legendre(projection_order(l_max))?;
    let u = |r: f64| state.relative_reduced(r).unwrap_or(0.0);
    let mut out = vec![0.0; l_max + 1];
    let mut p = vec![0.0; l_max + 1];
    weighted_alphas(&rule, &u, r1, r2, &mut out, &mut p);
    Ok(out.into_iter().map(|v| v / (r1 * r2)).collect())
}

/// Kernels `r_i r_j α_l(r_i, r_j)` on the grid for each `l` in `ls`.
pub fn project_kernels(
    state: &TwoBodyState,
    grid: &RadialGrid,
    ls: std::ops::Range<usize>,
) -> Result<Vec<DMatrix<f64>>> {
    let l_hi = ls.end.saturating_sub(1);
    let rule = gauss_legendre(projection_order(l_hi))?;
    let table = state.reduced_table(2.0 * grid.r_max)?;
    Ok(project_with_table(&table, &rule, grid, ls))
}

fn project_with_table(
    table: &ChebyshevTable,
    rule: &QuadratureRule,
    grid: &RadialGrid,
    ls: std::ops::Range<usize>,
) -> Vec<DMatrix<f64>> {
    let n = grid.len();
    let count = ls.len();
    if count == 0 {
        return Vec::new();
    }
    let l_hi = ls.end - 1;
    let u = |r: f64| table.eval(r);
    // row i holds j = i..n for every requested l
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let r1 = grid.point(i);
            let mut out = vec![0.0; l_hi + 1];
            let mut p = vec![0.0; l_hi + 1];
            let mut row = vec![0.0; count * (n - i)];
            for j in i..n {
                weighted_alphas(rule, &u, r1, grid.point(j), &mut out, &mut p);
                for (k, l) in ls.clone().enumerate() {
                    row[k * (n - i) + (j - i)] = out[l];
                }
            }
            row
        })
        .collect();
    (0..count)
        .map(|k| {
            let mut m = DMatrix::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                let width = n - i;
                for (dj, &v) in row[k * width..(k + 1) * width].iter().enumerate() {
                    m[(i, i + dj)] = v;
                    m[(i + dj, i)] = v;
                }
            }
            m
        })
        .collect()
}

/// `α_l(r_i, r_j)` on the grid.
pub fn project_legendre(state: &TwoBodyState, l: usize, grid: &RadialGrid) -> Result<DMatrix<f64>> {
    let mut k = project_kernels(state, grid, l..l + 1)?.remove(0);
    for j in 0..grid.len() {
        for i in 0..grid.len() {
            k[(i, j)] /= grid.point(i) * grid.point(j);
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::energy_of_inv_a;

    #[test]
    fn noninteracting_is_angle_independent() {
        let st = TwoBodyState::noninteracting().unwrap();
        for (r1, r2) in [(0.3, 0.3), (0.5, 1.7), (2.2, 1.1)] {
            let a = project_pair(&st, r1, r2, 12).unwrap();
            let psi = st.psi_full(r1, r2, 0.0).unwrap();
            assert!((a[0] - psi).abs() < 1e-12 * psi);
            for al in &a[1..] {
                assert!(al.abs() < 1e-10 * psi);
            }
        }
    }

    #[test]
    fn kernel_is_exactly_symmetric() {
        let st = TwoBodyState::trap(energy_of_inv_a(1.0, 0).unwrap());
        let g = RadialGrid::new(0.1, 2.0).unwrap();
        for k in project_kernels(&st, &g, 0..4).unwrap() {
            assert_eq!(k, k.transpose());
        }
    }

    #[test]
    fn single_pair_matches_grid() {
        let st = TwoBodyState::unitarity(1).unwrap();
        let g = RadialGrid::new(0.25, 2.0).unwrap();
        let a3 = project_legendre(&st, 3, &g).unwrap();
        let direct = project_pair(&st, g.point(2), g.point(5), 3).unwrap();
        assert!((a3[(2, 5)] - direct[3]).abs() < 1e-12 * direct[3].abs().max(1e-3));
    }
}
