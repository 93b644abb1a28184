use thiserror::Error;

/// Failure modes shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The instance is valid but the certified method does not cover it.
    #[error("out of method range: {0}")]
    OutOfMethodRange(String),

    /// A comparison stayed undecided at the largest permitted precision.
    #[error("precision cap of {cap} bits exceeded while {context}")]
    PrecisionExhausted { cap: u32, context: String },

    /// Two independent computations disagreed. Always an implementation bug.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// A certification stage could not be completed.
    #[error("uncertified: {0}")]
    Uncertified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InternalConsistency(msg.into())
}
