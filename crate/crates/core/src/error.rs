use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("incompatible algebras: {0}")]
    IncompatibleAlgebras(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("order {order} exceeds truncation {truncation}")]
    TruncationExceeded { order: u32, truncation: u32 },

    #[error("truncation too small: cutoff {given} given, at least {required} required")]
    TruncationTooSmall { given: u32, required: u32 },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("order {order} beyond cap {cap}")]
    OrderBeyondCap { order: u32, cap: u32 },

    #[error("non-finite numeric value")]
    NonFinite,

    #[error("invalid seminorm: {0}")]
    InvalidSeminorm(String),

    #[error("degree box overflow: exponent {exponent} exceeds bound {bound}")]
    BoxOverflow { exponent: u32, bound: u32 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Parse(#[from] crate::parse::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
