use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {reason}")]
    Domain { func: &'static str, reason: String },

    #[error(
        "flux-reflection compatibility constraint nu1 + epsilon*nu2 = 0 violated: \
         nu1={nu1}, nu2={nu2}, epsilon={epsilon:+}, theta={theta} (residual {residual:e})"
    )]
    ConstraintViolation {
        nu1: f64,
        nu2: f64,
        epsilon: i8,
        theta: f64,
        residual: f64,
    },

    #[error("inadmissible state: {0}")]
    Inadmissible(String),

    #[error("no admissible state with energy <= {cutoff} (ground energy {ground})")]
    EmptySpectrum { cutoff: f64, ground: f64 },

    #[error("cutoff {cutoff} too small: tail bound {tail:e} exceeds {allowed:e}")]
    CutoffTooSmall {
        cutoff: f64,
        tail: f64,
        allowed: f64,
    },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            func,
            reason: reason.into(),
        }
    }
}
