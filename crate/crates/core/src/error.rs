use thiserror::Error;

/// Errors raised across the crate.
///
/// `NotDivisible` and `NonIntegerCoefficient` are never expected in normal
/// operation: they mean an identity that should hold exactly did not.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("coefficient is not integral: {0}")]
    NonIntegerCoefficient(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("power is not rational: {0}")]
    NonIntegralPower(String),
    #[error("pole hit: denominator factor {0} vanishes")]
    PoleHit(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
