use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} exceeds bound {bound}")]
    BoundExceeded { what: String, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {0} is not a square")]
    NotASquare(u64),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("coset action is not faithful (image order {image}, group order {group})")]
    NotFaithful { image: u128, group: u128 },
    #[error("unsupported q = {0}")]
    UnsupportedQ(u64),
    #[error("invalid block size {k} for v = {v}")]
    BlockSizeInvalid { v: usize, k: usize },
    #[error("not a 2-design: pair ({}, {}) lies in {count} blocks, expected {expected}", pair.0, pair.1)]
    NotTwoDesign { pair: (u32, u32), count: u64, expected: u64 },
    #[error("blocks have unequal sizes")]
    UnequalBlockSizes,
    #[error("invalid k = {k} for complete design on {v} points")]
    InvalidK { v: usize, k: usize },
    #[error("point lies on the hyperoval")]
    PointOnHyperoval,
    #[error("q = {q} violates the condition of case {case}: {reason}")]
    CaseConditionViolated { case: u8, q: u64, reason: String },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bound(what: impl Into<String>, bound: u64) -> Error {
    Error::BoundExceeded {
        what: what.into(),
        bound,
    }
}
