use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation failed: {0}")]
    Numeric(String),
}

impl Error {
    /// True for errors caused by bad caller input rather than by the computation.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Invalid(_) | Error::Cap(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
