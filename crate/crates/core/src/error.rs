use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("outside domain of convergence: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Argument and hypothesis errors are caller mistakes; the rest are
    /// failed assertions.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Argument(_) | Error::Hypothesis(_) | Error::Domain(_) | Error::Pole(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
