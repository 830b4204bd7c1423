//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level must be an odd prime >= 5, got {0}")]
    InvalidLevel(u64),

    #[error("index {0} is zero mod p")]
    ZeroIndex(i64),

    #[error("{0} is not a unit mod p")]
    NotAUnit(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("ring or variable mismatch: {0}")]
    RingMismatch(String),

    #[error("comparison order {requested} exceeds truncation order {available}")]
    TruncationExceeded { requested: i64, available: i64 },

    #[error("invalid triple ({0}, {1}, {2})")]
    InvalidTriple(i64, i64, i64),

    #[error("polynomial is not weighted-homogeneous of degree two")]
    NotWeightedQuadric,

    #[error("point has no nonzero coordinate")]
    ZeroPoint,

    #[error("missing value for variable {0}")]
    MissingVariable(String),

    #[error("cusp orbit closed at {got} points, expected {expected}")]
    OrbitSize { expected: usize, got: usize },

    #[error("point does not satisfy the quadratic relations ({0})")]
    NotOnVariety(String),

    #[error("order-{order} linear system inconsistent while solving the flow")]
    RecursionInconsistent { order: i64 },

    #[error("relation {relation} fails at z^{order}")]
    RelationFailure { relation: String, order: i64 },

    #[error("kappa ambiguous: every candidate annihilates the expansions")]
    KappaAmbiguous,

    #[error("kappa inconsistent: no candidate annihilates the expansions")]
    KappaInconsistent,

    #[error("singular values straddle the rank tolerance band: {0:e} relative")]
    RankAmbiguous(f64),

    #[error("theta-quotient calibration failed: {0}")]
    CalibrationFailure(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
