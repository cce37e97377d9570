use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid marginal: {0}")]
    InvalidMarginal(String),

    #[error("invalid problem definition: {0}")]
    InvalidProblem(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("covariance matrix is ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("surrogate training failed: {0}")]
    Training(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("evaluator fault at sample {index}: {message}")]
    Evaluator { index: usize, message: String },

    #[error("optimization aborted at generation {generation}: {message}")]
    Optimization { generation: usize, message: String },

    #[error("refinement aborted at step {step}: {message}")]
    Refinement { step: usize, message: String },

    #[error("no candidates: {0}")]
    NoCandidates(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("external evaluator error: {0}")]
    Bridge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
