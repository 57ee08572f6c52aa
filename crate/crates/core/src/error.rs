use thiserror::Error;

/// Errors returned by the geometry, metric and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation is not defined on this kind of domain (for example
    /// `w` on a non-convex domain, or the hyperbolic metric on a polygon).
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
    Error::UnsupportedDomain(msg.into())
}
