use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::legendre::legendre_with_derivative;

/// A fixed-order Gauss rule on `[-1, 1]`, nodes in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_{-1}^{1} f
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// ∫_a^b f
    pub fn integrate_on<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Gauss–Legendre rule of the given order (Newton iteration on `P_order`).
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidParameter(
            "Gauss-Legendre order must be at least 1".into(),
        ));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_orders() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_relative_eq!(r1.weights()[0], 2.0, max_relative = 1e-15);

        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r2.nodes()[0], -s, max_relative = 1e-15);
        assert_relative_eq!(r2.nodes()[1], s, max_relative = 1e-15);
        for w in r2.weights() {
            assert_relative_eq!(*w, 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn order_zero_rejected() {
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn structural_invariants() {
        for n in [3, 8, 31, 64, 65, 128] {
            let r = gauss_legendre(n).unwrap();
            assert_eq!(r.order(), n);
            assert!(r.weights().iter().all(|&w| w > 0.0));
            assert!(r.nodes().windows(2).all(|p| p[0] < p[1]));
            let total: f64 = r.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13);
            for i in 0..n {
                assert_eq!(r.nodes()[i], -r.nodes()[n - 1 - i]);
            }
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let r = gauss_legendre(64).unwrap();
        let v = r.integrate(|x| x.powi(126));
        assert_relative_eq!(v, 2.0 / 127.0, max_relative = 1e-12);
        assert!(r.integrate(|x| x.powi(127)).abs() < 1e-15);

        for n in [1usize, 2, 5, 12] {
            let r = gauss_legendre(n).unwrap();
            for d in 0..2 * n {
                let exact = if d % 2 == 1 {
                    0.0
                } else {
                    2.0 / (d as f64 + 1.0)
                };
                let v = r.integrate(|x| x.powi(d as i32));
                assert!(
                    (v - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn mapped_interval() {
        let r = gauss_legendre(16).unwrap();
        let v = r.integrate_on(0.0, std::f64::consts::PI, f64::sin);
        assert_relative_eq!(v, 2.0, max_relative = 1e-14);
        let s: f64 = r.mapped(1.0, 3.0).map(|(x, w)| w * x * x).sum();
        assert_relative_eq!(s, 26.0 / 3.0, max_relative = 1e-14);
    }
}
