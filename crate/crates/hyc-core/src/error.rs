//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the mathematical domain of the operation
    /// (e.g. an exponent out of range, a nonpositive tolerance).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data failed structural validation (unsorted breakpoints,
    /// negative weights, overlapping intervals, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested quantity has a divergent tail: no finite certified
    /// bound exists for the parameters given.
    #[error("tail bound diverges: {0}")]
    TailDivergence(String),

    /// The requested tolerance could not be certified within the internal
    /// work limits; the message reports the error level actually achieved.
    #[error("tolerance not achieved: {0}")]
    ToleranceNotAchieved(String),

    /// The operation is not defined for this combination of inputs
    /// (e.g. a check that requires a purely atomic measure).
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
