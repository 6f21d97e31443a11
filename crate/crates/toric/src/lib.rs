//! Exact lattice combinatorics of smooth complete toric varieties.
//!
//! The crate computes, in arbitrary-precision integer arithmetic:
//!
//! - fans with validated smoothness and the fan condition ([`fan`]),
//! - the splitting type of the tangent bundle on every invariant curve and
//!   the resulting ample / nef / not-nef classification ([`splitting`]),
//! - the lattice polytope of an ample invariant divisor, its 2-face
//!   combinatorics and the angle-sum trichotomy ([`polytope`]),
//! - recognition of projective-space fans, per-instance verification that an
//!   ample tangent bundle forces projective space, and a bounded census of
//!   smooth complete toric surfaces ([`theorem`]).
//!
//! No floating point is used anywhere; every verdict is exact.

pub mod error;
pub mod fan;
mod feasibility;
pub mod lattice;
pub mod polytope;
pub mod splitting;
pub mod theorem;

pub use error::{Result, ToricError};
pub use fan::{Fan, Wall};
pub use lattice::{dual_basis, IntegerMatrix, LatticeVector};
pub use polytope::{
    all_two_faces_triangular, ample_violation, angle_sum_sign, anticanonical, find_ample_divisor,
    is_divisor_ample, is_simplex, normal_fan, polytope_from_divisor, AngleSign,
    DivisorCoefficients, LatticePolytope, TwoFace,
};
pub use splitting::{
    associated_characters, classify_tangent, splitting_type, wall_relation, AssociatedCharacters,
    PositivityClass, SplittingSummand, SplittingType, Verdict, WallRelation,
};
pub use theorem::{
    canonical_surface_code, census, enumerate_smooth_surfaces, is_projective_space_fan,
    verify_theorem, CensusEntry, CensusTable, PolytopeChecks, SurfaceCode, TheoremReport,
};
