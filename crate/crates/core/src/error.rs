use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("torus parameter must be nonzero")]
    ZeroParameter,

    /// Neither `rho1(v') = iota1_inv(v)` nor `rho2(v') = iota2_inv(v)` holds.
    #[error("orbit intersection hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid delta: {0}")]
    InvalidDelta(String),

    #[error("index {index} outside [0, {d}]")]
    IndexOutOfRange { index: Rational, d: usize },

    #[error("index {0} is not in the index set")]
    MissingIndex(Rational),

    /// First consecutive pair `(i, j)` at which the series is not exact.
    #[error("not exact: first failing pair ({}, {})", .0.0, .0.1)]
    NotExact(Box<(Rational, Rational)>),

    #[error("not minimal: non-integer index {0} has m = 0")]
    NotMinimal(Rational),

    #[error("image multiplicity {multiplicity} over T_{component}, expected 1")]
    Multiplicity {
        component: usize,
        multiplicity: usize,
    },

    #[error("generator failed: {0}")]
    Generation(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
