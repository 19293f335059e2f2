use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum QlError {
    /// A token or configuration file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A word was syntactically valid but not an element of the expected set
    /// (e.g. a negative letter where a positive word is required).
    #[error("not a positive word: {0}")]
    NotPositive(String),

    /// The base group does not expose a least-upper-element map into the
    /// associated subgroup, so order queries across a stable letter cannot
    /// be answered.
    #[error("unsupported: base group provides no subgroup ceiling map")]
    CeilingUnsupported,

    /// Every column of a truncated operator check was masked as unsafe, so
    /// the check carries no information at this truncation length.
    #[error("insufficient truncation: every column is masked")]
    InsufficientTruncation,

    /// Construction parameters describe no valid presentation.
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// A presentation failed hypothesis validation during checked
    /// construction.
    #[error("hypothesis validation failed: {0}")]
    HypothesesFailed(String),

    /// I/O failure while reading configuration or writing reports.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
