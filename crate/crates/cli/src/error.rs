//! CLI error channel with the documented exit codes.

use std::fmt;

/// Exit codes: 1 I/O, 2 validation, 3 numeric, 4 check failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Validation(String),
    Numeric(String),
    CheckFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::CheckFailure(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Numeric(m) => write!(f, "{m}"),
            CliError::CheckFailure(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sirsec_core::Error> for CliError {
    fn from(e: sirsec_core::Error) -> Self {
        match e {
            sirsec_core::Error::Domain(m) => CliError::Validation(m),
            err @ sirsec_core::Error::Numeric { .. } => CliError::Numeric(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
