use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The header row lacks one of the mandatory columns.
    #[error("malformed header: missing column `{0}`")]
    MissingColumn(String),

    /// A data row could not be read; `line` is 1-based and counts the header.
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },

    #[error("duplicate record id `{id}` at line {line}")]
    DuplicateRecord { id: String, line: usize },

    #[error("invalid author name {raw:?}: {reason}")]
    Name { raw: String, reason: &'static str },

    /// Invalid user configuration, e.g. a cyclic merge map.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called outside its domain (empty graph, bad arguments, ...).
    #[error("{0}")]
    Domain(String),

    #[error("pagerank did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
