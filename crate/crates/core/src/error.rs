use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("corner-ring model unavailable: {0}")]
    CornerUnavailable(String),
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group of order {0} exceeds the supported maximum")]
    GroupTooLarge(usize),
    #[error("{0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("basis enumeration requested at degree {requested} beyond cap {cap}")]
    BeyondDegreeCap { requested: u32, cap: u32 },
    #[error("graded algebra requires a degree bound")]
    DegreeRequired,
    #[error("action verification failed: {0}")]
    ActionVerification(String),
    #[error("value at coset {coset} is not fixed by {witness}")]
    NotInvariant { coset: String, witness: String },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("element does not lie in the corner e(A x G)e: {0}")]
    NotInCorner(String),
    #[error("matrix is not G-invariant: witness s = {s}, entry ({row}, {col})")]
    MatrixNotInvariant { s: String, row: String, col: String },
    #[error("cocycle condition {condition} fails: {witness}")]
    CocycleCondition { condition: char, witness: String },
    #[error("context does not have the required shape: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
