use thiserror::Error;

/// Errors surfaced by the lattice, polytope, Cox ring and solver layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("support has no term with a nonzero coefficient")]
    EmptySupport,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set spans only {dim} dimensions, {needed} required")]
    LowerDimensional { dim: usize, needed: usize },

    #[error("ray matrix has rank {rank}, full rank {needed} required")]
    RankDeficientRays { rank: usize, needed: usize },

    #[error("ray configuration does not positively span the space; graded pieces are unbounded")]
    UnboundedDegree,

    #[error("exponent {exponent:?} violates facet {facet} of the homogenization polytope")]
    HomogenizationOutside { exponent: Vec<i64>, facet: usize },

    #[error(
        "regularity failure: expected corank {expected}, observed {observed} (gap ratio {gap:.3e})"
    )]
    RegularityFailure {
        expected: usize,
        observed: usize,
        gap: f64,
    },

    #[error("basis map has rank {rank} < {needed}; h0 is not generic or vanishes at a solution")]
    RankDeficientBasis { rank: usize, needed: usize },

    #[error("system must be square: {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },

    #[error("facet index {index} out of range (polytope has {count} facets)")]
    FacetIndexOutOfRange { index: usize, count: usize },

    #[error("all monomials of the graded piece vanish at the given point")]
    AllMonomialsVanish,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
