use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument {0} is positive; expected s <= 0")]
    PositiveArgument(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("composition {0} is not convergent (need all parts >= 1 and s1 >= 2)")]
    NotConvergent(String),

    #[error("numeric evaluation failed: {0}")]
    NumericFailure(String),

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("rational function has a pole at delta = 0")]
    PoleAtZero,

    #[error("series in delta is known only up to d^{known}; the value at delta = 0 needs more orders")]
    DeltaPrecision { known: i64 },

    #[error("empty window: [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("exponent {k} is outside the window [{lo}, {hi}]; rebuild with a larger window")]
    OutOfWindow { k: i64, lo: i64, hi: i64 },

    #[error("window [{lo}, {hi}] does not contain [{need}, 0]")]
    WindowTooSmall { lo: i64, hi: i64, need: i64 },

    #[error("invalid direction {0}: need c >= 0, m >= 0, not both zero")]
    InvalidDirection(String),

    #[error("word {0} has a positive exponent; only non-positive words are supported here")]
    PositiveExponent(String),

    #[error("mixed-sign arguments {0}: renormalized values are defined only when all arguments are positive or all are non-positive")]
    UnsupportedSignature(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}
