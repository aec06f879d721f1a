use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const ENTROPY_NOTE: &str = "Entropies are in nats; divide by ln 2 = 0.6931471806 for bits.";

#[derive(Debug, Parser)]
#[command(
    name = "trapent",
    version,
    about = "Spectrum and entanglement of two trapped atoms with a contact interaction"
)]
#[command(after_help = ENTROPY_NOTE)]
pub struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output format (default depends on the command)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of (E, 1/a) pairs along the eigenvalue condition
    SpectrumSweep(SpectrumSweepArgs),
    /// Radial densities 4π r² |ψ(r)|² of relative-motion eigenstates
    Density(DensityArgs),
    /// Schmidt spectrum, K and entropy of one state
    #[command(after_help = ENTROPY_NOTE)]
    Schmidt(SchmidtArgs),
    /// Schmidt number against 1/a for the lowest three branches
    KSweep(KSweepArgs),
    /// K of the three closed-form states at infinite scattering length
    Unitarity(UnitarityArgs),
    /// Radial Schmidt mode functions u_nl(r)
    Modes(ModesArgs),
}

/// `MIN:MAX:POINTS`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, points] = parts.as_slice() else {
        return Err(format!("expected MIN:MAX:POINTS, got '{s}'"));
    };
    let min: f64 = min.parse().map_err(|_| format!("bad MIN '{min}'"))?;
    let max: f64 = max.parse().map_err(|_| format!("bad MAX '{max}'"))?;
    let points: usize = points
        .parse()
        .map_err(|_| format!("bad POINTS '{points}'"))?;
    if !min.is_finite() || !max.is_finite() {
        return Err("sweep bounds must be finite".into());
    }
    if points == 0 {
        return Err("sweep range is empty (POINTS = 0)".into());
    }
    if min > max || (points > 1 && min == max) {
        return Err(format!(
            "sweep range is empty: MIN {min} must be below MAX {max}"
        ));
    }
    Ok(Sweep { min, max, points })
}

/// Real number; `inf`, `-inf` and `+inf` are accepted for 1/a.
pub fn parse_inv_a(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_nan() {
        return Err("1/a cannot be NaN".into());
    }
    Ok(v)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v <= 0.0 || !v.is_finite() {
        return Err(format!("{v} must be positive and finite"));
    }
    Ok(v)
}

/// `n:l` with `n ≥ 1`.
pub fn parse_mode(s: &str) -> Result<(usize, usize), String> {
    let (n, l) = s
        .split_once(':')
        .ok_or_else(|| format!("expected n:l, got '{s}'"))?;
    let n: usize = n.parse().map_err(|_| format!("bad n in '{s}'"))?;
    let l: usize = l.parse().map_err(|_| format!("bad l in '{s}'"))?;
    if n == 0 {
        return Err("radial index n counts from 1".into());
    }
    Ok((n, l))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchSel {
    All,
    One(usize),
}

impl BranchSel {
    pub fn branches(&self) -> Vec<usize> {
        match self {
            BranchSel::All => vec![0, 1, 2],
            BranchSel::One(b) => vec![*b],
        }
    }
}

pub fn parse_branch_sel(s: &str) -> Result<BranchSel, String> {
    if s == "all" {
        return Ok(BranchSel::All);
    }
    parse_branch(s).map(BranchSel::One)
}

pub fn parse_branch(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(b) if b <= 2 => Ok(b),
        _ => Err(format!("unknown branch '{s}' (expected 0, 1 or 2)")),
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    /// Radial grid spacing
    #[arg(long, default_value = "0.01", value_parser = parse_positive)]
    pub dr: f64,
    /// Radial grid extent
    #[arg(long, default_value = "3.5", value_parser = parse_positive)]
    pub r_max: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ChannelArgs {
    /// Highest Legendre channel
    #[arg(long, default_value_t = 30)]
    pub l_max: usize,
    /// Raise l_max until K settles, then confirm on a grid with half the spacing
    #[arg(long)]
    pub converge: bool,
    /// First l_max tried by --converge
    #[arg(long, default_value_t = 0)]
    pub l_start: usize,
    /// Largest l_max tried by --converge
    #[arg(long, default_value_t = 60)]
    pub l_cap: usize,
}

#[derive(Debug, Args)]
pub struct SpectrumSweepArgs {
    /// Energy range MIN:MAX:POINTS
    #[arg(long, value_parser = parse_sweep, default_value = "-4:6:1001", conflicts_with = "energy", allow_hyphen_values = true)]
    pub e_range: Sweep,
    /// Explicit energies instead of a range
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub energy: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Inverse scattering lengths, one column each
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_inv_a, default_value = "-2,0,2")]
    pub inv_a: Vec<f64>,
    #[arg(long, default_value = "0", value_parser = parse_branch)]
    pub branch: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    /// Inverse scattering length of a trap eigenstate
    #[arg(long, allow_hyphen_values = true, value_parser = parse_inv_a, required_unless_present = "unitarity")]
    pub inv_a: Option<f64>,
    #[arg(long, default_value = "0", value_parser = parse_branch)]
    pub branch: usize,
    /// Use the closed-form unitarity state k (0, 1 or 2) instead
    #[arg(long, conflicts_with = "inv_a", value_parser = parse_branch)]
    pub unitarity: Option<usize>,
    /// Entries of the Λ table to print, largest first (0 for all)
    #[arg(long, default_value_t = 50)]
    pub top: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
}

#[derive(Debug, Args)]
pub struct KSweepArgs {
    /// Range of 1/a as MIN:MAX:POINTS
    #[arg(long, value_parser = parse_sweep, default_value = "-4:4:17", allow_hyphen_values = true)]
    pub inv_a_range: Sweep,
    /// Branches: 0, 1, 2 or all
    #[arg(long, default_value = "all", value_parser = parse_branch_sel)]
    pub branch: BranchSel,
    /// Keep branch 0 above 1/a = 2
    #[arg(long)]
    pub no_truncate: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
}

#[derive(Debug, Args)]
pub struct UnitarityArgs {
    /// Skip recomputing each state from the eigenvalue condition at 1/a = 0
    #[arg(long)]
    pub no_cross_check: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
}

#[derive(Debug, Args)]
pub struct ModesArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_inv_a)]
    pub inv_a: f64,
    #[arg(long, default_value = "0", value_parser = parse_branch)]
    pub branch: usize,
    /// Modes to print as n:l pairs
    #[arg(long, value_delimiter = ',', value_parser = parse_mode, default_value = "1:0,1:1,2:0")]
    pub modes: Vec<(usize, usize)>,
    #[command(flatten)]
    pub grid: GridArgs,
}
