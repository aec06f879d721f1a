use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::schmidt::RadialGrid;

/// Weights below this fraction of the channel's largest `λ` count as
/// numerical noise; see [`ChannelDecomposition::retained`].
pub const RETAIN_FLOOR: f64 = 1e-12;

/// Schmidt decomposition of one Legendre channel.
///
/// `kernel[(i, j)] = r_i r_j α_l(r_i, r_j)`. The weighted kernel
/// `kernel · dr` has eigenvalues `σ_n`; `λ_nl = σ_n²` and the radial modes are
/// the eigenvectors scaled by `1/√dr`.
#[derive(Debug, Clone)]
pub struct ChannelDecomposition {
    pub l: usize,
    pub grid: RadialGrid,
    pub kernel: DMatrix<f64>,
    /// Non-increasing.
    pub lambdas: Vec<f64>,
    /// Sign of each `σ_n`.
    pub signs: Vec<f64>,
    /// Column `n - 1` is `u_nl` on the grid, orthonormal under `Σ u u' dr`.
    pub modes: DMatrix<f64>,
}

fn eigen(a: DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    let norm = a.norm();
    let n = a.nrows();
    SymmetricEigen::try_new(a, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Eigen(format!("{n}x{n} kernel, Frobenius norm {norm:e}")))
}

/// `(σ, index)` pairs by descending `|σ|`.
fn ordered(eigenvalues: &[f64]) -> Vec<(f64, usize)> {
    let mut pairs: Vec<(f64, usize)> = eigenvalues.iter().copied().zip(0..).collect();
    pairs.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()).then(a.1.cmp(&b.1)));
    pairs
}

/// Schmidt weights `λ_nl` only, without modes.
pub fn channel_lambdas(kernel: &DMatrix<f64>, grid: &RadialGrid) -> Result<Vec<f64>> {
    check_kernel(kernel, grid)?;
    let values = (kernel * grid.dr).symmetric_eigenvalues();
    Ok(ordered(values.as_slice())
        .into_iter()
        .map(|(s, _)| s * s)
        .collect())
}

fn check_kernel(kernel: &DMatrix<f64>, grid: &RadialGrid) -> Result<()> {
    if kernel.nrows() != grid.len() || kernel.ncols() != grid.len() {
        return Err(Error::InvalidParameter(format!(
            "kernel is {}x{} but the grid has {} points",
            kernel.nrows(),
            kernel.ncols(),
            grid.len()
        )));
    }
    if !kernel.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter(
            "kernel has non-finite entries".into(),
        ));
    }
    Ok(())
}

/// Symmetric eigendecomposition of `kernel · dr`.
pub fn decompose_channel(
    l: usize,
    kernel: DMatrix<f64>,
    grid: &RadialGrid,
) -> Result<ChannelDecomposition> {
    check_kernel(&kernel, grid)?;
    let eig = eigen(&kernel * grid.dr)?;
    let pairs = ordered(eig.eigenvalues.as_slice());
    let n = grid.len();
    let scale = grid.dr.sqrt().recip();
    let mut modes = DMatrix::zeros(n, pairs.len());
    for (col, &(_, idx)) in pairs.iter().enumerate() {
        let w = eig.eigenvectors.column(idx);
        let peak = w.amax();
        let first = w
            .iter()
            .find(|v| v.abs() > 1e-8 * peak)
            .copied()
            .unwrap_or(1.0);
        let sign = if first < 0.0 { -scale } else { scale };
        modes.set_column(col, &(w * sign));
    }
    Ok(ChannelDecomposition {
        l,
        grid: *grid,
        kernel,
        lambdas: pairs.iter().map(|(s, _)| s * s).collect(),
        signs: pairs.iter().map(|(s, _)| s.signum()).collect(),
        modes,
    })
}

impl ChannelDecomposition {
    /// Number of leading modes with `λ` above [`RETAIN_FLOOR`] times the
    /// largest.
    pub fn retained(&self) -> usize {
        let top = self.lambdas.first().copied().unwrap_or(0.0);
        self.lambdas
            .iter()
            .take_while(|&&l| l > RETAIN_FLOOR * top)
            .count()
    }

    /// `Σ_n σ_n u_n(r_i) u_n(r_j)`, which reproduces the kernel.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.grid.len(), self.grid.len());
        for (n, (&lam, &sign)) in self.lambdas.iter().zip(&self.signs).enumerate() {
            let u = self.modes.column(n);
            out.ger(sign * lam.sqrt(), &u, &u, 1.0);
        }
        out
    }

    /// `u_nl` on the grid; `n` counts from 1.
    pub fn mode(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 || n > self.lambdas.len() {
            return Err(Error::Index(format!(
                "mode n = {n} for l = {} (available 1..={})",
                self.l,
                self.lambdas.len()
            )));
        }
        Ok(self.modes.column(n - 1).iter().copied().collect())
    }
}

/// `ρ_nl(r_i) = |u_nl(r_i)|²`; `n` counts from 1.
pub fn mode_density(channel: &ChannelDecomposition, n: usize) -> Result<Vec<f64>> {
    Ok(channel.mode(n)?.into_iter().map(|u| u * u).collect())
}
