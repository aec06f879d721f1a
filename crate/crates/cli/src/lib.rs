//! Command-line front end for `trapent`.

pub mod args;
pub mod commands;
pub mod output;

use std::fs;

use args::{Cli, Command, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] trapent::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl CliError {
    /// 2 for bad input, 3 when a convergence loop gave up, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use trapent::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::InvalidParameter(_)
                | E::Domain { .. }
                | E::Index(_)
                | E::Bracket { .. }
                | E::ConditionPole { .. } => 2,
                E::NoConvergence { .. } => 3,
                _ => 1,
            },
            CliError::Io(_) | CliError::Pool(_) => 1,
        }
    }
}

/// Runs the command and returns the rendered document.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let fmt = |default| cli.format.unwrap_or(default);
    let job = || match &cli.command {
        Command::SpectrumSweep(a) => commands::spectrum_sweep(a, fmt(Format::Csv)),
        Command::Density(a) => commands::density(a, fmt(Format::Csv)),
        Command::Schmidt(a) => commands::schmidt(a, fmt(Format::Json)),
        Command::KSweep(a) => commands::k_sweep(a, fmt(Format::Csv)),
        Command::Unitarity(a) => commands::unitarity(a, fmt(Format::Json)),
        Command::Modes(a) => commands::modes(a, fmt(Format::Csv)),
    };
    match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Pool(e.to_string()))?
            .install(job),
        None => job(),
    }
}

/// Runs the command and writes the result to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let doc = execute(cli)?;
    match &cli.out {
        Some(path) => fs::write(path, doc)?,
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(doc.as_bytes())?;
        }
    }
    Ok(())
}
