use thiserror::Error;

/// Errors raised while validating states, certifying maps or evaluating measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("NonHermitian: ||M - M^dagger||_F = {residual:.3e}")]
    NonHermitian { residual: f64 },

    #[error("NotPSD: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("TraceNotOne: |Tr M - 1| = {residual:.3e}")]
    TraceNotOne { residual: f64 },

    #[error("NotSquare: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("NonFinite: matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("BadRank: rank {rank} outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("BadDimension: {0}")]
    BadDimension(String),

    #[error("DimensionMismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("NotTracePreserving: ||sum K^dagger K - I||_F = {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("NotCompletelyPositive: Choi matrix eigenvalue {min_eigenvalue:.3e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("NotIdempotent: ||S^2 - S||_F = {residual:.3e}")]
    NotIdempotent { residual: f64 },

    #[error("NotUnital: ||E(I) - I||_F = {residual:.3e}")]
    NotUnital { residual: f64 },

    #[error("NotUnitary: ||U^dagger U - I||_F = {residual:.3e} for element {index}")]
    NotUnitary { index: usize, residual: f64 },

    #[error("NotAGroup: {0}")]
    NotAGroup(String),

    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),

    #[error("NotFineGrained: block {block} has {size} indices")]
    NotFineGrained { block: usize, size: usize },

    #[error("InvalidOrder: a = {0} outside (0, 2]")]
    InvalidOrder(f64),

    #[error("NotFixedPoint: ||E(sigma) - sigma||_F = {residual:.3e}")]
    NotFixedPoint { residual: f64 },

    #[error("InfiniteValue: {0}")]
    InfiniteValue(String),

    #[error("NoFiniteObjective: every oracle evaluation returned +inf")]
    NoFiniteObjective,

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of the idempotency / unitality certification step.
    pub fn is_certification(&self) -> bool {
        matches!(self, Error::NotIdempotent { .. } | Error::NotUnital { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
