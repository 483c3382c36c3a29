use thiserror::Error;

/// Errors raised by the exact-arithmetic, lattice and polytope routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index must be positive")]
    ZeroIndex,
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    Empty,
    #[error("sublattice is not saturated; saturate it first")]
    NotSaturated,
    #[error("sublattices do not span the same rational space")]
    SpanMismatch,
    #[error("sublattice is not contained in the reference lattice")]
    NotContained,
    #[error("dual unbounded: origin is not strictly interior")]
    DualUnbounded,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope is not a lattice polytope")]
    NotLattice,
    #[error("polytope is not a canonical Fano polytope")]
    NotCanonical,
    #[error("origin is not strictly interior")]
    OriginNotInterior,
    #[error("not a simplex: {0}")]
    NotSimplex(String),
    #[error("invalid barycentric vector: {0}")]
    InvalidBarycentric(String),
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("invalid gluing spec: {0}")]
    InvalidSpec(String),
    #[error("degenerate gluing: {0}")]
    DegenerateGluing(String),
    #[error("decomposition constraint violated: {0}")]
    ProfileViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("external data required: {0}")]
    ExternalData(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
