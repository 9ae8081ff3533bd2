use thiserror::Error;

use crate::surface_map::TriangulationDefect;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("alpha is not an involution at dart {dart}")]
    NonInvolution { dart: usize },
    #[error("alpha fixes dart {dart}")]
    FixedPointInAlpha { dart: usize },
    #[error("dart sets do not match: {0}")]
    DartSetMismatch(String),
    #[error("vertex {vertex} has no darts")]
    IsolatedVertex { vertex: usize },
    #[error("map is disconnected (vertex {vertex} unreachable)")]
    Disconnected { vertex: usize },
    #[error("not a closed surface: {0}")]
    NotASurface(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("Euler genus {genus} is below 2")]
    GenusTooSmall { genus: i64 },
    #[error("input is not a triangulation: {0}")]
    NotATriangulation(TriangulationDefect),
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

impl SolveError {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        SolveError::InternalInvariantViolation(msg.into())
    }
}

pub type SolveResult<T> = Result<T, SolveError>;
