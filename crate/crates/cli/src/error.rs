//! Error type carrying the process exit code.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 usage or
//! configuration error, 2 data error (unreadable/malformed files, failed
//! processing).

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config file, inconsistent parameters. Exit code 1.
    Usage(String),
    /// Bad or unprocessable data at run time. Exit code 2.
    Data(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<leakdet_core::Error> for CliError {
    fn from(e: leakdet_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Attaches a file path to an I/O error and classifies it as a data error.
pub fn io_err(path: &std::path::Path, e: impl fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}
