use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("context invalid: {0}")]
    ContextInvalid(String),

    #[error("range error: {0} (retry in extended mode)")]
    Range(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "sampling failed after {attempts} attempts ({accepted} accepted, \
         accept rate {rate:.2e}); loosen the spec or raise max_rejects"
    )]
    SamplingFailure {
        attempts: u64,
        accepted: u64,
        rate: f64,
    },

    #[error("feasible region exhausted: {0}")]
    Exhausted(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn context(msg: impl Into<String>) -> Self {
        Error::ContextInvalid(msg.into())
    }
}
