//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by corpus loading, training, and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty corpus")]
    EmptyCorpus,

    /// A malformed record in a line-oriented input file.
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    /// A gold label that is not a leaf of the active taxonomy.
    #[error("unknown genre: {0}")]
    UnknownGenre(String),

    /// Zero-variance input where a correlation is requested.
    #[error("constant input")]
    ConstantInput,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A posterior or prior map lacking an entry for a model state.
    #[error("missing genre key: {0}")]
    MissingGenre(String),

    /// Catch-all for violated preconditions; the message states which one.
    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
