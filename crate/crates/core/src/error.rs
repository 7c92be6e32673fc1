use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value {value} at point {point:?}")]
    Evaluation { point: Vec<f64>, value: f64 },

    #[error("adaptive integration did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    ConvergenceFailure { estimate: f64, error_bound: f64 },

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("cannot parse `{input}`; expected {grammar}")]
    Parse { input: String, grammar: &'static str },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
