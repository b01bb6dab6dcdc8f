use thiserror::Error;

/// Errors raised by the exact-arithmetic routines.
///
/// Matrix and vector positions are reported 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational {text:?}: {reason}")]
    ParseRational { text: String, reason: &'static str },

    #[error("limit at t = 0 does not exist: nonzero term t^{exponent}")]
    LimitDoesNotExist { exponent: i64 },

    #[error("matrix is not regular semisimple: diagonal entries {first} and {second} coincide")]
    NotRegularSemisimple { first: usize, second: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} outside the supported range 1..={max}")]
    DimensionOutOfRange { n: usize, max: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("matrix is not {0}")]
    Shape(&'static str),

    #[error("coordinates i'[{index}] and j'[{index}] are both nonzero")]
    InvalidFiberPoint { index: usize },

    #[error("quadruple is not in the regular semisimple zero fiber of the moment map")]
    NotInFiber,

    #[error("target x-coordinates {first} and {second} coincide")]
    NotInTarget { first: usize, second: usize },

    #[error("symbolic expansion supports n <= {max}, got {n}")]
    SymbolicBound { n: usize, max: usize },

    #[error("zero polynomial has no initial term")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("instance generation failed after {attempts} draws")]
    Generation { attempts: usize },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
