use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator factor restricts to (1 - t^0)")]
    ZeroGradeDenominator,
    #[error("empty validity window [{lower}, {order}]")]
    EmptyWindow { lower: i64, order: i64 },
    #[error("degree {degree} outside window [{lower}, {order}]")]
    OutOfWindow { degree: i64, lower: i64, order: i64 },
    #[error("character contains the trivial weight; lambda would contain a zero factor")]
    UnitWeight,
    #[error("elementary index {index} exceeds lambda order {max}")]
    IndexTooLarge { index: usize, max: usize },
    #[error("rank {n} invalid for a weight list of size {dim}")]
    BadRank { n: i64, dim: usize },
    #[error("degenerate grading: {0}")]
    DegenerateGrading(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("truncation {k} has not stabilized: {detail}")]
    Unstable { k: i64, detail: String },
    #[error("index range {k} exceeds {max}")]
    BadRange { k: i64, max: i64 },
    #[error("no stabilization after {rounds} escalation rounds")]
    NoStabilization { rounds: usize },
    #[error("integer overflow in the dense series kernel")]
    Overflow,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
