//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("layer {layer} exceeds the supported cap of {cap}")]
    LayerCap { layer: u32, cap: u32 },

    #[error("excluded prime: 5 is totally ramified")]
    ExcludedPrime,

    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: i64, n: u64 },

    #[error("residue degree {required} exceeds the configured cap {cap}")]
    ResidueDegreeCap { required: u64, cap: u64 },

    #[error("no element of order {order}: {order} does not divide q^d - 1")]
    OrderUnavailable { order: u64 },

    #[error("retries exhausted while {context}")]
    RetriesExhausted { context: String },

    #[error("coefficient denominator divisible by {prime}")]
    DenominatorDivisible { prime: u64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("not divisible")]
    NotDivisible,

    #[error("resultant undefined: both inputs have degree 0 in the elimination variable")]
    ResultantDegenerateInput,

    #[error("resultant vanishes identically (common factor)")]
    DegenerateResultant,

    #[error("unlucky specialization: prime witnesses disagree after retries")]
    UnluckySpecialization,

    #[error("unexpected kernel dimension: expected {expected}, found {found}")]
    KernelDimension { expected: usize, found: usize },

    #[error("invariant vectors are not comparable: {0}")]
    NonComparable(String),

    #[error("computation over configured cost cap: {0}")]
    CostCap(String),

    #[error("invalid input: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
