use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(&'static str),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("factor {0} is constant")]
    ConstantFactor(usize),

    #[error("factors {i} and {j} share the common factor {common}")]
    FactorsNotCoprime { i: usize, j: usize, common: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("root isolation failed: {0}")]
    IsolationFailed(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
}
