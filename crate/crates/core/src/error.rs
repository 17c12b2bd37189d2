use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A deliberately enumerative routine was asked for more than its budget.
    #[error("{name}: budget guard allows at most {limit}, got {requested}")]
    Budget {
        name: &'static str,
        limit: u64,
        requested: u64,
    },

    /// A stated hypothesis of the formula being evaluated does not hold.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
