//! Command implementations behind the `coauthnet` binary.
//!
//! Each subcommand loads and cleans the corpus, runs one analysis and
//! writes CSV results plus a `run_<command>.json` manifest into the output
//! directory. Files are written to a temporary name and renamed into place.

pub mod args;
pub mod commands;

use std::fmt;

pub use args::{Cli, Command, RunArgs};
pub use commands::run;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Data = 2,
    Convergence = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: ExitCode::Usage,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            code: ExitCode::Data,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<coauthnet_core::Error> for CliError {
    fn from(e: coauthnet_core::Error) -> Self {
        use coauthnet_core::Error;
        let code = match e {
            Error::Convergence { .. } => ExitCode::Convergence,
            Error::Config(_) => ExitCode::Usage,
            _ => ExitCode::Data,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::data(e.to_string())
    }
}
