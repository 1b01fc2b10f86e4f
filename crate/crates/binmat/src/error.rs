use crate::regularity::RefinementStep;

/// Errors shared across the library.
///
/// Cost guards are errors, never silent approximations: an operation that
/// would exceed its configured ceiling refuses to run.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vector {mask:#b} has bits outside dimension {dim}")]
    BitOutOfRange { mask: u32, dim: usize },

    #[error("the zero vector is not a point of a simple matroid")]
    ZeroInSet,

    #[error("cost ceiling exceeded in {guard}: needs {needed}, ceiling {ceiling}")]
    CostCeilingExceeded {
        guard: String,
        needed: String,
        ceiling: u64,
    },

    #[error("subset contains vectors outside the point set")]
    SubsetNotContained,

    #[error("point set has critical number {chi}, not 2")]
    NotCriticalTwo { chi: usize },

    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },

    #[error("base point set has rank {rank} < ambient dimension {dim}")]
    RankDeficientBase { rank: usize, dim: usize },

    #[error(
        "generation budget exhausted after {attempts} attempts \
         (rejected: {gamma_rejects} by circuit screen, {zeta_rejects} by subspace screen, \
         {verify_rejects} by final verification)"
    )]
    GenerationBudgetExhausted {
        attempts: u64,
        gamma_rejects: u64,
        zeta_rejects: u64,
        verify_rejects: u64,
    },

    #[error("no {eps}-regular subspace found within codimension {max_codim}")]
    MaxCodimExceeded {
        eps: String,
        max_codim: usize,
        steps: Vec<RefinementStep>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
