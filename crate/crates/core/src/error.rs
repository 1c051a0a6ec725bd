//! Error types shared by every module in the crate.

use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to deliver the requested accuracy.
    ///
    /// `partial` carries the best value available when the routine gave up,
    /// so callers can log diagnostics; it must not be used as a result.
    #[error("numeric error: {what}{}", partial.map(|p| format!(" (partial result {p:e})")).unwrap_or_default())]
    Numeric {
        /// What failed and where.
        what: String,
        /// Best available value at the point of failure, if any.
        partial: Option<f64>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(what: impl Into<String>, partial: Option<f64>) -> Self {
        Error::Numeric {
            what: what.into(),
            partial,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
