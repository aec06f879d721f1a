//! Independent Schmidt oracle that never goes through Legendre channels.
//!
//! `Ψ` depends on the azimuths only through `Δφ = φ1 - φ2`, so
//! `Ψ = Σ_m K_m(r1, c1; r2, c2) χ_m(φ1) χ_m(φ2)*` with `χ_m = e^{imφ}/√(2π)`
//! and `K_m = 2 ∫_0^π Ψ cos(mΔφ) dΔφ`. Each `K_m` is discretized on a
//! product grid of `(r, cos θ)` for each particle and its singular values
//! squared are Schmidt weights of the full state; `±m` contribute equally.

#![allow(dead_code)]

use nalgebra::DMatrix;
use rayon::prelude::*;

use trapent::specfun::gauss_legendre;
use trapent::wavefunction::{com_ground, coordinates, TwoBodyState};

pub struct OracleGrid {
    pub dr: f64,
    pub r_max: f64,
    /// Polar nodes for particle 1 and particle 2; unequal counts keep the
    /// two grids from sharing a direction, where `Ψ` is singular.
    pub n_c1: usize,
    pub n_c2: usize,
    pub m_max: usize,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            dr: 0.1,
            r_max: 2.5,
            n_c1: 12,
            n_c2: 13,
            m_max: 12,
        }
    }
}

pub struct OracleResult {
    pub k: f64,
    /// `Σ λ`, the captured norm.
    pub total: f64,
    pub lambdas: Vec<f64>,
}

/// `(x, w)` nodes on `[0, π]`, panels halving toward `Δφ = 0`.
fn azimuth_nodes() -> Vec<(f64, f64)> {
    let rule = gauss_legendre(8).unwrap();
    let mut edges = vec![std::f64::consts::PI];
    while *edges.last().unwrap() > 1e-5 {
        let next = edges.last().unwrap() * 0.5;
        edges.push(next);
    }
    edges.push(0.0);
    edges.reverse();
    edges
        .windows(2)
        .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect()
}

pub fn rdm_schmidt(state: &TwoBodyState, g: &OracleGrid) -> OracleResult {
    let n_r = (g.r_max / g.dr).round() as usize;
    let radii: Vec<f64> = (0..n_r).map(|i| (i as f64 + 0.5) * g.dr).collect();
    let side = |n_c: usize| -> Vec<(f64, f64, f64)> {
        let rule = gauss_legendre(n_c).unwrap();
        let mut pts = Vec::new();
        for &r in &radii {
            for (&c, &w) in rule.nodes().iter().zip(rule.weights()) {
                pts.push((r, c, (r * r * g.dr * w).sqrt()));
            }
        }
        pts
    };
    let p1 = side(g.n_c1);
    let p2 = side(g.n_c2);
    let table = state.reduced_table(2.0 * g.r_max).unwrap();
    let phis = azimuth_nodes();
    let n_m = g.m_max + 1;

    // rows of every sector at once: blocks[m][i * p2.len() + j]
    let rows: Vec<Vec<f64>> = p1
        .par_iter()
        .map(|&(r1, c1, w1)| {
            let s1 = (1.0 - c1 * c1).sqrt();
            let mut out = vec![0.0; n_m * p2.len()];
            for (j, &(r2, c2, w2)) in p2.iter().enumerate() {
                let s2 = (1.0 - c2 * c2).sqrt();
                let mut acc = vec![0.0; n_m];
                for &(phi, wphi) in &phis {
                    let cg = (c1 * c2 + s1 * s2 * phi.cos()).clamp(-1.0, 1.0);
                    let (big_r, r) = coordinates(r1, r2, cg);
                    let psi = com_ground(big_r) * table.eval(r) / r;
                    // cos(mφ) by the three-term recurrence
                    let (mut prev, mut cur) = (phi.cos(), 1.0);
                    let two_cos = 2.0 * phi.cos();
                    for a in acc.iter_mut() {
                        *a += wphi * psi * cur;
                        let next = two_cos * cur - prev;
                        prev = cur;
                        cur = next;
                    }
                }
                for (m, a) in acc.iter().enumerate() {
                    out[m * p2.len() + j] = 2.0 * a * w1 * w2;
                }
            }
            out
        })
        .collect();

    let mut lambdas = Vec::new();
    for m in 0..n_m {
        let mat = DMatrix::from_fn(p1.len(), p2.len(), |i, j| rows[i][m * p2.len() + j]);
        let mult = if m == 0 { 1 } else { 2 };
        for s in mat.singular_values().iter() {
            for _ in 0..mult {
                lambdas.push(s * s);
            }
        }
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let total = lambdas.iter().sum();
    let k = 1.0 / lambdas.iter().map(|l| l * l).sum::<f64>();
    OracleResult { k, total, lambdas }
}
