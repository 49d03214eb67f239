use thiserror::Error;

/// Errors raised by the kernel. Arithmetic itself never fails; only
/// preconditions on inputs and series shapes do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q must be a positive rational, got {0}")]
    NonPositiveQ(String),

    #[error("cannot parse rational literal {0:?}")]
    BadRational(String),

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient c_{index} = {value} is not invertible")]
    NotInvertible { index: usize, value: String },

    #[error("cannot divide by t: constant term is {0}, expected 0")]
    NonZeroConstant(String),

    #[error("series of order 0 has no room left to divide by t")]
    OrderExhausted,

    #[error("unknown family {0:?} (expected bernoulli or genocchi)")]
    UnknownFamily(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
