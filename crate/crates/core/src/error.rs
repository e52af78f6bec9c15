use alloc::string::String;
use alloc::vec::Vec;

use crate::field::FieldElem;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order exceeds the supported maximum")]
    FieldTooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to the field")]
    FieldMismatch,
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a finite field")]
    RequiresFiniteField,
    #[error("evaluation set exceeds the enumeration cap of {cap} points")]
    CapExceeded { cap: u64 },
    #[error("duplicate point in evaluation set")]
    DuplicatePoint,
    #[error("`all` is only a finite evaluation set over a finite field")]
    InfiniteDomain,
    #[error("polynomial system has no generators")]
    NoGenerators,
    #[error("all polynomials of the system are zero")]
    ZeroSystem,
    #[error("containment Z(P) in Z(Q) fails: Q is nonzero at {display}")]
    ContainmentFails { point: Vec<FieldElem>, display: String },
    #[error("value set is empty")]
    EmptyValueSet,
    #[error("value set contains zero")]
    ZeroInValueSet,
    #[error("value set does not contain zero")]
    ZeroNotInValueSet,
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("expected {expected} image sets, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("binomial coefficient C({n}, {m}) requires m <= n")]
    BinomialRange { n: u64, m: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
