use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("mixed scalar fields: {0}")]
    MixedFields(String),
    #[error("straightening failed: {0}")]
    Straightening(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("linear system: {0}")]
    LinearSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
