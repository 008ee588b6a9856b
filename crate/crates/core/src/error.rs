use thiserror::Error;

/// Errors produced by model construction and integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical or mathematical precondition was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrator or scenario configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// A delayed lookup fell outside the stored history. This indicates a bug
    /// in a right-hand side or in the step-size guard.
    #[error("history lookup at t = {t} outside stored range [{start}, {end}]")]
    Lookup { t: f64, start: f64, end: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
