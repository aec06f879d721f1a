use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schmidt::{ChannelDecomposition, RadialGrid};

/// Largest completeness defect `|1 - Σ p_nl|` accepted without a warning.
pub const DEFAULT_COMPLETENESS_BOUND: f64 = 1e-3;

/// Entries below this fraction of the largest `λ` over all channels are
/// left out of the spectrum.
const GLOBAL_FLOOR: f64 = 1e-12;

const SIXTEEN_PI_SQ: f64 = 16.0 * PI * PI;

/// One `(n, l)` term of the Schmidt spectrum. It stands for `2l + 1` equally
/// weighted Schmidt pairs `(l, m) ↔ (l, -m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtEntry {
    /// Radial index, counting from 1.
    pub n: usize,
    pub l: usize,
    /// Radial Schmidt weight `λ_nl`.
    pub lambda: f64,
    /// `Λ_nl = 16π² λ_nl / (2l+1)^{3/2}`.
    pub big_lambda: f64,
    /// Probability of each of the `2l + 1` pairs, `16π² λ_nl / (2l+1)²`.
    pub mode_prob: f64,
    /// Total weight of the manifold, `(2l+1) · mode_prob`.
    pub channel_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    /// Ordered by `l`, then `n`.
    pub entries: Vec<SchmidtEntry>,
    /// Schmidt number `1 / Σ Λ²`.
    pub k: f64,
    /// Entanglement entropy in nats.
    pub entropy: f64,
    /// `1 - Σ p_nl`.
    pub completeness_defect: f64,
    /// Whether the defect is within [`DEFAULT_COMPLETENESS_BOUND`].
    pub completeness_ok: bool,
    pub l_max: usize,
    pub grid: RadialGrid,
}

impl SchmidtSpectrum {
    /// Entry with the largest manifold weight.
    pub fn dominant(&self) -> Option<&SchmidtEntry> {
        self.entries
            .iter()
            .max_by(|a, b| a.channel_prob.total_cmp(&b.channel_prob))
    }

    pub fn entry(&self, n: usize, l: usize) -> Option<&SchmidtEntry> {
        self.entries.iter().find(|e| e.n == n && e.l == l)
    }

    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.channel_prob).sum()
    }
}

/// Assembles the spectrum from per-channel weights; `lambdas[l]` lists
/// `λ_nl` in non-increasing order. `n_keep` caps the radial modes per
/// channel.
pub fn assemble_from_lambdas(
    lambdas: &[Vec<f64>],
    grid: &RadialGrid,
    n_keep: Option<usize>,
) -> Result<SchmidtSpectrum> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("no channels to assemble".into()));
    }
    let top = lambdas
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |m, &v| m.max(v));
    let mut entries = Vec::new();
    for (l, channel) in lambdas.iter().enumerate() {
        let deg = (2 * l + 1) as f64;
        let keep = n_keep.unwrap_or(usize::MAX);
        for (i, &lambda) in channel.iter().enumerate().take(keep) {
            if !(lambda > GLOBAL_FLOOR * top) {
                continue;
            }
            let mode_prob = SIXTEEN_PI_SQ * lambda / (deg * deg);
            entries.push(SchmidtEntry {
                n: i + 1,
                l,
                lambda,
                big_lambda: SIXTEEN_PI_SQ * lambda / deg.powf(1.5),
                mode_prob,
                channel_prob: deg * mode_prob,
            });
        }
    }
    let sum_sq: f64 = entries.iter().map(|e| e.big_lambda * e.big_lambda).sum();
    let entropy: f64 = entries
        .iter()
        .map(|e| -((2 * e.l + 1) as f64) * e.mode_prob * e.mode_prob.ln())
        .sum();
    let total: f64 = entries.iter().map(|e| e.channel_prob).sum();
    let defect = 1.0 - total;
    Ok(SchmidtSpectrum {
        entries,
        k: 1.0 / sum_sq,
        entropy,
        completeness_defect: defect,
        completeness_ok: defect.abs() <= DEFAULT_COMPLETENESS_BOUND,
        l_max: lambdas.len() - 1,
        grid: *grid,
    })
}

/// Assembles decomposed channels `l = 0..=l_max` sharing one grid.
pub fn assemble_spectrum(
    channels: &[ChannelDecomposition],
    n_keep: Option<usize>,
) -> Result<SchmidtSpectrum> {
    let grid = channels
        .first()
        .ok_or_else(|| Error::InvalidParameter("no channels to assemble".into()))?
        .grid;
    for (l, c) in channels.iter().enumerate() {
        if c.l != l {
            return Err(Error::InvalidParameter(format!(
                "channel {l} carries l = {}; channels must cover 0..=l_max in order",
                c.l
            )));
        }
        if c.grid != grid {
            return Err(Error::InvalidParameter(format!(
                "channel {l} uses a different grid"
            )));
        }
    }
    let lambdas: Vec<Vec<f64>> = channels.iter().map(|c| c.lambdas.clone()).collect();
    assemble_from_lambdas(&lambdas, &grid, n_keep)
}

/// `K = 1 / Σ Λ_nl²`.
pub fn schmidt_number(spectrum: &SchmidtSpectrum) -> f64 {
    1.0 / spectrum
        .entries
        .iter()
        .map(|e| e.big_lambda * e.big_lambda)
        .sum::<f64>()
}

/// `1 / Σ p²` for an explicit list of Schmidt probabilities.
pub fn schmidt_number_from_probabilities(p: &[f64]) -> f64 {
    1.0 / p.iter().map(|v| v * v).sum::<f64>()
}

/// `-Σ p ln p` over the positive entries.
pub fn entropy_from_probabilities(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|v| -v * v.ln()).sum()
}
