use thiserror::Error;

use crate::complex::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("matrix is not invertible over F2[U]")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("complex failed validation ({} violation(s)); first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(Vec<Violation>),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),

    #[error("staircase needs at least one step, got none")]
    EmptySteps,

    #[error("step lengths must be positive")]
    NonPositiveStep,

    #[error("Alexander exponents must satisfy 0 < w1 < w2 < ...; got {0:?}")]
    NonIncreasing(Vec<i64>),

    #[error("entry from `{source_gen}` to `{target}` has a negative U-power after restricting to the region")]
    NegativePower { source_gen: String, target: String },

    #[error("vector is not homogeneous with respect to the grading")]
    Inhomogeneous,

    #[error("differential is not homogeneous of degree -1 at ({row}, {col})")]
    NotGraded { row: usize, col: usize },

    #[error("Smith normal form produced a non-monomial diagonal entry {0}")]
    NonMonomialDiagonal(String),

    #[error("expected free rank {expected}, found {found}")]
    FreeRank { expected: usize, found: usize },

    #[error("tower generator sits in odd grading {0}")]
    OddGrading(i64),

    #[error("the Q-action on the towers has rank {0}, expected 1")]
    QRank(usize),

    #[error("involution does not preserve the region: {0}")]
    RegionNotPreserved(String),

    #[error("involution check failed: {0}")]
    BadInvolution(String),

    #[error("not a staircase complex: {0}")]
    NotStaircase(String),

    #[error("boxes are not mirrored: {0:?} vs {1:?}")]
    NotMirrored((i64, i64), (i64, i64)),

    #[error("invalid pretzel parameters m={m}, n={n}: {reason}")]
    InvalidParams { m: i64, n: i64, reason: String },

    #[error("box multiplicities do not reproduce the expected knot Floer homology: {0}")]
    HfkMismatch(String),

    #[error("the complex has {0} generators in vertical homology, expected exactly 1")]
    VerticalRank(usize),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
