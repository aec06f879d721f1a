//! Brute-force quadratures shared by the integration tests.

#![allow(dead_code)]

use trapent::specfun::gauss_legendre;
use trapent::wavefunction::{com_ground, TwoBodyState};

/// Gauss–Legendre panels on `[a, b]` with breakpoints `edges`.
pub fn panel_nodes(edges: &[f64], order: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(order).unwrap();
    edges
        .windows(2)
        .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect()
}

/// Breakpoints on `[a, b]` refined geometrically toward `a` down to `a + tiny`.
pub fn graded_toward_start(a: f64, b: f64, ratio: f64, tiny: f64) -> Vec<f64> {
    let mut offsets = vec![b - a];
    while *offsets.last().unwrap() > tiny {
        let next = offsets.last().unwrap() * ratio;
        offsets.push(next);
    }
    offsets.push(0.0);
    offsets.iter().rev().map(|d| a + d).collect()
}

/// `⟨Ψa|Ψb⟩ = ∫∫∫ 8π² r1² r2² Ψa Ψb dr1 dr2 d(cos γ)` by direct quadrature.
///
/// The angular integral runs over `t = ln r`, where `r² Ψa Ψb` is smooth and
/// is evaluated from `(R, r)` directly, since recovering a tiny `r` from
/// `cos γ` cancels. The logarithmic singularity left on `r1 = r2` is handled
/// by panels graded toward the diagonal.
pub fn overlap_3d(a: &TwoBodyState, b: &TwoBodyState, extent: f64) -> f64 {
    let outer_edges: Vec<f64> = (0..=36).map(|i| extent * i as f64 / 36.0).collect();
    let outer = panel_nodes(&outer_edges, 8);
    let rule = gauss_legendre(8).unwrap();
    let mut total = 0.0;
    for &(r1, w1) in &outer {
        let mut inner_edges = graded_toward_start(r1, extent, 0.25, 1e-10);
        let mut below: Vec<f64> = graded_toward_start(0.0, r1, 0.25, 1e-10)
            .iter()
            .map(|d| r1 - d)
            .rev()
            .collect();
        below.pop();
        below.append(&mut inner_edges);
        let mut line = 0.0;
        for &(r2, w2) in &panel_nodes(&below, 8) {
            let lo = (r1 - r2).abs().ln();
            let hi = (r1 + r2).ln();
            let panels = ((hi - lo) / 0.5).ceil().max(1.0) as usize;
            let h = (hi - lo) / panels as f64;
            let mut ang = 0.0;
            for p in 0..panels {
                for (t, wt) in rule.mapped(lo + p as f64 * h, lo + (p + 1) as f64 * h) {
                    // d(cos γ) = r dr / (r1 r2) = r² dt / (r1 r2), and r Ψ = Φ(R) u(r)
                    let r = t.exp();
                    let big_r = ((2.0 * (r1 * r1 + r2 * r2) - r * r).max(0.0)).sqrt() / 2.0;
                    let phi = com_ground(big_r);
                    let ua = a.relative_reduced(r).unwrap();
                    let ub = b.relative_reduced(r).unwrap();
                    ang += wt * phi * phi * ua * ub / (r1 * r2);
                }
            }
            line += w2 * r2 * r2 * ang;
        }
        total += w1 * r1 * r1 * line;
    }
    8.0 * std::f64::consts::PI.powi(2) * total
}
