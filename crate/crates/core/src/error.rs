use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("outside the supported regime: {0}")]
    Regime(String),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("grid under-resolved: {0}")]
    Resolution(String),
    #[error("insufficient data: need at least {need} rows, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
