use serde::Serialize;

use crate::error::{Error, Result};
use crate::schmidt::assemble_from_lambdas;
use crate::schmidt::{channel_lambdas, project_kernels, RadialGrid, SchmidtSpectrum};
use crate::wavefunction::TwoBodyState;

/// Stopping rules for [`converge`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative change of K between successive `l_max` values.
    pub tol_k: f64,
    /// Relative change of K when `dr` is halved.
    pub tol_grid: f64,
    pub l_step: usize,
    pub l_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_k: 1e-3,
            tol_grid: 1e-2,
            l_step: 5,
            l_cap: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KPoint {
    pub l_max: usize,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridCheck {
    pub dr_fine: f64,
    pub k_coarse: f64,
    pub k_fine: f64,
    pub rel_change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// K at each `l_max` tried, in order.
    pub trace: Vec<KPoint>,
    /// First `l_max` whose successor changed K by less than `tol_k`.
    pub l_converged: usize,
    /// `l_max` of the returned spectrum.
    pub l_final: usize,
    pub grid_check: GridCheck,
}

/// Channels `l` in order, projected in batches to bound memory.
pub(crate) struct ChannelStream<'a> {
    state: &'a TwoBodyState,
    grid: RadialGrid,
    pub lambdas: Vec<Vec<f64>>,
}

const BATCH: usize = 16;

impl<'a> ChannelStream<'a> {
    pub fn new(state: &'a TwoBodyState, grid: RadialGrid) -> Self {
        Self {
            state,
            grid,
            lambdas: Vec::new(),
        }
    }

    /// Ensures channels `0..=l_max` are present.
    pub fn extend_to(&mut self, l_max: usize) -> Result<()> {
        while self.lambdas.len() <= l_max {
            let lo = self.lambdas.len();
            let hi = (lo + BATCH).min(l_max + 1);
            for kernel in project_kernels(self.state, &self.grid, lo..hi)? {
                self.lambdas.push(channel_lambdas(&kernel, &self.grid)?);
            }
        }
        Ok(())
    }

    pub fn spectrum(&self, l_max: usize) -> Result<SchmidtSpectrum> {
        assemble_from_lambdas(&self.lambdas[..=l_max], &self.grid, None)
    }
}

/// Schmidt spectrum with channels `0..=l_max`.
pub fn schmidt_spectrum(
    state: &TwoBodyState,
    grid: &RadialGrid,
    l_max: usize,
) -> Result<SchmidtSpectrum> {
    let mut stream = ChannelStream::new(state, *grid);
    stream.extend_to(l_max)?;
    stream.spectrum(l_max)
}

fn trace_string(trace: &[KPoint]) -> String {
    trace
        .iter()
        .map(|p| format!("l_max={}: K={:.10}", p.l_max, p.k))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Raises `l_max` by `l_step` from `l_start` until K settles, then halves
/// `dr` once to confirm the grid.
pub fn converge(
    state: &TwoBodyState,
    base_grid: &RadialGrid,
    l_start: usize,
    tol: &Tolerances,
) -> Result<(SchmidtSpectrum, ConvergenceReport)> {
    if !(tol.tol_k > 0.0) || !(tol.tol_grid > 0.0) || tol.l_step == 0 {
        return Err(Error::InvalidParameter(
            "tolerances and l_step must be positive".into(),
        ));
    }
    let mut stream = ChannelStream::new(state, *base_grid);
    let mut trace = Vec::new();
    let mut l = l_start.min(tol.l_cap);
    stream.extend_to(l)?;
    let mut spectrum = stream.spectrum(l)?;
    trace.push(KPoint {
        l_max: l,
        k: spectrum.k,
    });
    let l_converged = loop {
        let next = l + tol.l_step;
        if next > tol.l_cap {
            return Err(Error::NoConvergence {
                what: "Schmidt number in l_max",
                trace: trace_string(&trace),
            });
        }
        stream.extend_to(next)?;
        let s = stream.spectrum(next)?;
        let change = ((s.k - spectrum.k) / s.k).abs();
        trace.push(KPoint {
            l_max: next,
            k: s.k,
        });
        spectrum = s;
        if change < tol.tol_k {
            break l;
        }
        l = next;
    };
    let l_final = spectrum.l_max;
    let fine = schmidt_spectrum(state, &base_grid.refined(), l_final)?;
    let rel_change = ((fine.k - spectrum.k) / spectrum.k).abs();
    let grid_check = GridCheck {
        dr_fine: base_grid.refined().dr,
        k_coarse: spectrum.k,
        k_fine: fine.k,
        rel_change,
    };
    if rel_change > tol.tol_grid {
        return Err(Error::NoConvergence {
            what: "Schmidt number under grid refinement",
            trace: format!(
                "{}; dr={} gives K={:.10}",
                trace_string(&trace),
                grid_check.dr_fine,
                fine.k
            ),
        });
    }
    Ok((
        spectrum,
        ConvergenceReport {
            trace,
            l_converged,
            l_final,
            grid_check,
        },
    ))
}
