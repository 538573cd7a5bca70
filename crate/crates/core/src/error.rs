use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Carries the congruence that has no solution.
    #[error("{value} is not a square in Q_{prime}: {witness}")]
    NotASquare {
        value: String,
        prime: u64,
        witness: String,
    },

    #[error("unsupported rank {rank}: {reason}")]
    UnsupportedRank { rank: usize, reason: String },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    /// One entry per failing (subject, condition) pair.
    #[error("validation failed: {}", .failures.join("; "))]
    Validation { failures: Vec<String> },

    #[error("prime search exhausted after scanning {scanned} candidates")]
    SearchExhausted { scanned: u64 },

    #[error("insufficient precision: requested {requested} digits, certificate carries {available}")]
    InsufficientPrecision { requested: u32, available: u32 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not a spin element: {0}")]
    NotSpin(String),

    #[error("pipeline step `{step}` failed (inputs: {inputs}): {witness}")]
    PipelineStep {
        step: String,
        inputs: String,
        witness: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
