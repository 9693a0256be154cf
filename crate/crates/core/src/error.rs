//! Error types shared across the engine.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero in Q(i)")]
    DivisionByZero,
    #[error("cannot parse Gaussian rational literal `{0}`")]
    BadLiteral(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    /// Exact division failed: the divisor does not divide the dividend.
    /// This is a mathematical signal, not a crash.
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("substitution produced a zero denominator")]
    ZeroDenominator,
    #[error("variable {0} has no value in the evaluation map")]
    UnboundVariable(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpError {
    #[error("z-variable index {0} out of range for group size {1}")]
    IndexOutOfRange(String, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("term budget exceeded: intermediate polynomial has {got} terms (budget {budget})")]
    BudgetExceeded { got: usize, budget: usize },
    #[error("representation index out of range: {0}")]
    BadIndex(String),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}
