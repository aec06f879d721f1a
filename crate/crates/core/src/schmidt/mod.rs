//! Schmidt decomposition of `Ψ(r1, r2, cos γ)` through Legendre channels.
//!
//! Each channel `l` contributes a symmetric radial kernel `r1 r2 α_l`, whose
//! eigenvalues give the radial Schmidt weights `λ_nl`. The angular part pairs
//! `Y_lm` with `Y_l,-m` at equal weight, so every `(n, l)` carries a
//! `(2l + 1)`-fold degenerate manifold.

mod assembly;
mod channel;
mod converge;
mod grid;
mod projection;

pub use assembly::{
    assemble_from_lambdas, assemble_spectrum, entropy_from_probabilities, schmidt_number,
    schmidt_number_from_probabilities, SchmidtEntry, SchmidtSpectrum, DEFAULT_COMPLETENESS_BOUND,
};
pub use channel::{
    channel_lambdas, decompose_channel, mode_density, ChannelDecomposition, RETAIN_FLOOR,
};
pub use converge::{converge, schmidt_spectrum, ConvergenceReport, GridCheck, KPoint, Tolerances};
pub use grid::RadialGrid;
pub use projection::{project_kernels, project_legendre, project_pair, projection_order};

use crate::error::Result;
use crate::wavefunction::TwoBodyState;

/// Full per-channel decompositions (kernels, weights and modes) for
/// `l = 0..=l_max`.
pub fn decompose_state(
    state: &TwoBodyState,
    grid: &RadialGrid,
    l_max: usize,
) -> Result<Vec<ChannelDecomposition>> {
    project_kernels(state, grid, 0..l_max + 1)?
        .into_iter()
        .enumerate()
        .map(|(l, k)| decompose_channel(l, k, grid))
        .collect()
}
