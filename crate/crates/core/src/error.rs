use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Quadrature or series failed to reach the requested accuracy.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A configured work budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
