use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A requested table, sieve, or truncation exceeds a configured cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An exact integer computation would exceed its 128-bit storage.
    #[error("exact arithmetic overflow: {0}")]
    Overflow(String),

    /// A part set fails a structural or coprimality requirement.
    #[error("invalid part set: {0}")]
    InvalidSet(String),

    /// An operation's stated hypothesis does not hold for these inputs.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two table-like inputs do not cover the same index range.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A guarded brute-force path refuses inputs past its enumeration cap.
    #[error("refused: {0}")]
    Refusal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
