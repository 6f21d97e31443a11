use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by fan construction, positivity analysis, and polytope
/// operations. `Internal` signals a broken invariant of this library, never
/// bad user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("cone is not unimodular (det = {0})")]
    NotUnimodular(BigInt),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid rays: {0}")]
    InvalidRays(String),

    #[error("invalid maximal cones: {0}")]
    InvalidCones(String),

    #[error("not smooth: maximal cone {cone} is not unimodular (det = {det})")]
    NotSmooth { cone: usize, det: BigInt },

    #[error("not a fan: maximal cones {cone_a} and {cone_b} do not intersect in a common face")]
    NotAFan { cone_a: usize, cone_b: usize },

    #[error("fan not complete: {0}")]
    NotComplete(String),

    #[error("wall not smooth")]
    WallNotSmooth,

    #[error("divisor not ample: vertex of maximal cone {cone} violates the strict inequality at ray {ray}")]
    DivisorNotAmple { cone: usize, ray: usize },

    #[error("no ample divisor found (fan may be non-projective)")]
    NoAmpleDivisor,

    #[error("face is not planar/2-dimensional")]
    NonPlanarFace,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, ToricError>;
