use thiserror::Error;

/// Errors produced by the q-rook engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("diagram {0} is not symmetric")]
    NotSymmetric(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An odd exponent survived extraction from the half-power domain.
    #[error("odd exponent {0} in half-power polynomial")]
    OddExponent(i64),

    #[error("polynomial has negative exponent {0}")]
    NegativeExponent(i64),

    #[error("evaluation at zero of a polynomial with negative exponents")]
    ZeroDivision,

    #[error("unsupported field order {0}")]
    UnsupportedFieldOrder(u32),

    #[error("enumeration of {required} matrices exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
