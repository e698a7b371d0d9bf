use thiserror::Error;

use crate::exact_algebra::Ring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("simplex {0:?} must list strictly increasing vertices")]
    InvalidSimplex(Vec<u32>),

    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<u32>),

    #[error("dimension {requested} out of range 1..={max}")]
    DimensionOutOfRange { requested: usize, max: usize },

    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("operation requires coefficients in {expected}, got {got}")]
    WrongRing { expected: String, got: Ring },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected a cochain of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("b is not a bounding cochain for Sq^2 c")]
    NotBounding,

    #[error("Sq^2 alpha != 0: class is not in the kernel N^2")]
    NotInSq2Kernel,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
