use std::io;

use thiserror::Error;

/// Errors reported by the library and the command-line driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("malformed table dump: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => 2,
            Error::BudgetExceeded(_) => 3,
            Error::Internal(_) => 4,
            Error::Format(_) | Error::Io(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
