use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed literal `{0}`")]
    MalformedLiteral(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("fraction syntax `{0}` is not accepted over a prime field")]
    FractionInPrimeField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} does not divide the annihilator")]
    NotADivisor(String),
    #[error("exponent of {poly} in the annihilator is {actual}, not {given}")]
    ExponentMismatch {
        poly: String,
        given: usize,
        actual: usize,
    },
    #[error("inconsistent classification record: {0}")]
    InconsistentRecord(String),
    #[error("{0} is reducible")]
    Reducible(String),
    #[error("invalid symbolic endomorphism: {0}")]
    InvalidSymbolic(String),
    #[error("instance too large for enumeration: {0}")]
    TooLarge(String),
    #[error("bad input document: {0}")]
    Format(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
