use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller violated a documented precondition (bad index, wrong
    /// length, malformed input).
    #[error("invalid usage: {0}")]
    Usage(String),

    /// A checked 64-bit or rational computation overflowed.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    /// An enumeration would exceed the configured resource ceiling.
    #[error("{what} exceeds the configured cap of {cap}")]
    Capacity { what: &'static str, cap: u64 },

    /// Two routes that must agree produced different answers.  This always
    /// indicates a bug and is never downgraded to a normal result.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Error {
        Error::Usage(msg.into())
    }
}
