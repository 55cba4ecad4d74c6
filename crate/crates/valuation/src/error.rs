use thiserror::Error;

/// Error kinds shared by every ramcoh crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::PreconditionViolation(_) => "precondition-violation",
            Error::InvalidInput(_) => "invalid-input",
            Error::PrecisionExhausted(_) => "precision-exhausted",
            Error::ResourceLimit(_) => "resource-limit",
            Error::UnsupportedRegime(_) => "unsupported-regime",
        }
    }
}
