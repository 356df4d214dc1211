use thiserror::Error;

/// Failure classes shared by every operation in the crate.
///
/// `Input` and `Domain` errors are caller mistakes, `Resource` marks a
/// configured exhaustive limit, and `Internal` means an invariant check
/// tripped (an orientation or convention bug, never a user error).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Short machine-readable tag used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
