use thiserror::Error;

/// Which family of poles an energy hit in the eigenvalue condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleFamily {
    /// `E = 3/2 + 2k`: the scattering length vanishes and `1/a` diverges.
    Noninteracting,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{function}: argument {arg} is outside the domain ({reason})")]
    Domain {
        function: &'static str,
        arg: f64,
        reason: &'static str,
    },

    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("energy {energy} is a pole of the eigenvalue condition ({family:?}): 1/a diverges")]
    ConditionPole { energy: f64, family: PoleFamily },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "could not bracket branch-{branch} root for 1/a = {inv_a}: energy went below the floor {floor}; \
         lower `energy_floor` to reach deeper bound states"
    )]
    Bracket {
        branch: usize,
        inv_a: f64,
        floor: f64,
    },

    #[error("{what} did not converge: {trace}")]
    NoConvergence { what: &'static str, trace: String },

    #[error("the coincidence point r1 = r2 is singular for this state")]
    Coincidence,

    #[error("index out of range: {0}")]
    Index(String),

    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
