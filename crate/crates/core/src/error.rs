use alloc::string::String;
use core::fmt;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input violates a precondition (wrong shape, wrong group, not
    /// lopsided, non-invariant submodule, ...).
    Domain(String),
    /// A computed object failed its own consistency check. Never expected.
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
