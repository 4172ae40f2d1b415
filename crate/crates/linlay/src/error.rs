//! Error type shared by parsing, drivers and the CLI surface.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A text input could not be parsed; `line` is 1-based.
    Parse { line: usize, message: String },
    /// An instance exceeds a documented size limit of an operation.
    SizeLimit { what: &'static str, limit: usize, actual: usize },
    /// The input is well-formed but violates a contract of the operation.
    InvalidInput(String),
    /// An internal re-verification failed or an oracle answered inconsistently.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::SizeLimit { what, limit, actual } => {
                write!(f, "size limit exceeded for {what}: {actual} > {limit}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
