use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (expected 2..=16)")]
    UnsupportedDegree(u32),
    #[error("modulus {0} is not irreducible over GF(2)")]
    NonIrreducibleModulus(String),
    #[error("modulus {0} is irreducible but not primitive")]
    NonPrimitiveModulus(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("minimal polynomial of alpha^{exponent} has a coefficient outside GF(2)")]
    CoefficientNotInBaseField { exponent: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cyclotomic cosets {0} and {1} intersect")]
    CosetCollision(u32, u32),
    #[error("division was not exact: {0}")]
    InexactDivision(String),
    #[error("BCH certificate failed: {0}")]
    CertificateFailure(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid radius {r} for n = {n}")]
    InvalidRadius { r: u64, n: u64 },
    #[error("rounded eigenvector is identically zero; retry with more digits")]
    DegenerateWitness,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("bound not applicable: {0}")]
    NotApplicable(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error("proof chain violated at step `{step}`: lhs = {lhs}, rhs = {rhs}")]
    ChainViolation { step: String, lhs: f64, rhs: f64 },
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidParameters,
    NotApplicable,
    BudgetExceeded,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::UnsupportedDegree(_)
            | Error::NonIrreducibleModulus(_)
            | Error::NonPrimitiveModulus(_)
            | Error::DivisionByZeroPolynomial
            | Error::InvalidParameters(_)
            | Error::LengthMismatch { .. }
            | Error::InvalidRadius { .. }
            | Error::OutOfRange(_)
            | Error::DimensionMismatch(..) => ErrorClass::InvalidParameters,
            Error::NotApplicable(_) => ErrorClass::NotApplicable,
            Error::BudgetExceeded(_) => ErrorClass::BudgetExceeded,
            Error::CoefficientNotInBaseField { .. }
            | Error::CosetCollision(..)
            | Error::InexactDivision(_)
            | Error::CertificateFailure(_)
            | Error::DegenerateWitness
            | Error::ChainViolation { .. } => ErrorClass::Internal,
        }
    }

    /// Short kebab-case tag, stable across releases.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::UnsupportedDegree(_) => "unsupported-degree",
            Error::NonIrreducibleModulus(_) => "non-irreducible-modulus",
            Error::NonPrimitiveModulus(_) => "non-primitive-modulus",
            Error::DivisionByZeroPolynomial => "division-by-zero-polynomial",
            Error::CoefficientNotInBaseField { .. } => "coefficient-not-in-base-field",
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::CosetCollision(..) => "coset-collision",
            Error::InexactDivision(_) => "inexact-division",
            Error::CertificateFailure(_) => "certificate-failure",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::InvalidRadius { .. } => "invalid-radius",
            Error::DegenerateWitness => "degenerate-witness",
            Error::OutOfRange(_) => "out-of-range",
            Error::NotApplicable(_) => "not-applicable",
            Error::DimensionMismatch(..) => "dimension-mismatch",
            Error::ChainViolation { .. } => "chain-violation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
