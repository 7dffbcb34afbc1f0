use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {what}: {message}")]
    Parse { what: String, message: String },

    /// One or more named fields violate a declared invariant.
    #[error("invalid {}", .violations.join("; "))]
    Invariant { violations: Vec<String> },

    #[error("domain error: {0}")]
    Domain(String),

    /// A caller broke an operation's precondition (a programming bug).
    #[error("contract violated: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// True for errors caused by bad user input (arguments, schema, invariants).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Invariant { .. })
    }
}
