use thiserror::Error;

/// Errors raised by the engine. Failing mathematical claims are not errors;
/// they are reported through [`crate::report::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("bidegree violation: {0}")]
    Bidegree(String),

    #[error("differential does not square to zero: {0}")]
    NotSquareZero(String),

    #[error("differential is not well defined: {0}")]
    IllDefined(String),

    #[error("coaction data is only valid through degree {valid_through}, degree {requested} was requested")]
    Truncated { valid_through: u32, requested: u32 },

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("parameters do not satisfy the preconditions: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

pub(crate) fn invalid(msg: impl Into<String>) -> EngineError {
    EngineError::InvalidInput(msg.into())
}
