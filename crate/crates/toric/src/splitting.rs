//! Splitting types of the tangent bundle on invariant curves.
//!
//! For a wall τ between maximal cones σ and σ′, write v_1, ..., v_{n-1} for
//! the shared rays, v_n and v′_n for the opposite rays, and u_i, u′_i for the
//! dual bases on the two sides (with the shared rays in matching order). Each
//! difference u_i - u′_i is an integer multiple a_i of the distinguished
//! character u_n, and the tangent bundle restricted to the curve of τ splits
//! as the sum of line bundles of degrees a_1, ..., a_{n-1}, 2. The same
//! integers appear as the coefficients of the wall relation
//! b_1 v_1 + ... + b_{n-1} v_{n-1} + v_n + v′_n = 0, which this module
//! computes independently and cross-checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Result, ToricError};
use crate::fan::{Fan, Wall};
use crate::lattice::{dual_basis, IntegerMatrix, LatticeVector};

/// The characters of the equivariant splitting of the tangent bundle over the
/// affine chart of a maximal cone: the dual basis of the cone's generators,
/// in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedCharacters {
    pub cone: usize,
    pub characters: Vec<LatticeVector>,
}

pub fn associated_characters(fan: &Fan, cone: usize) -> Result<AssociatedCharacters> {
    let gens = fan.generators(fan.cone(cone));
    if gens.len() != fan.dim() {
        return Err(ToricError::DimensionMismatch {
            expected: fan.dim(),
            got: gens.len(),
        });
    }
    let characters = dual_basis(&gens)?;
    Ok(AssociatedCharacters { cone, characters })
}

/// Coefficients b_i of the wall relation; the shared rays follow the wall's
/// stored order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Wall,
    pub coefficients: Vec<BigInt>,
}

/// Expands v′_n in the basis (v_1, ..., v_{n-1}, v_n) of side σ. Smoothness
/// across the wall forces the v_n-coefficient to be exactly -1; the b_i are
/// the negated remaining coefficients.
pub fn wall_relation(fan: &Fan, wall: &Wall) -> Result<WallRelation> {
    let basis = fan.generators(&wall.ordered_generators(false));
    let m = IntegerMatrix::from_columns(&basis);
    let x = m.solve_unimodular(fan.ray(wall.opposite_b))?;
    let n = fan.dim();
    if *x.coord(n - 1) != BigInt::from(-1) {
        return Err(ToricError::WallNotSmooth);
    }
    let coefficients = (0..n - 1).map(|i| -x.coord(i)).collect();
    Ok(WallRelation {
        wall: wall.clone(),
        coefficients,
    })
}

/// One line-bundle summand of the restriction to the wall's curve: the pair
/// of characters on the two sides and the degree a with u - u′ = a·u_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingSummand {
    pub u: LatticeVector,
    pub u_prime: LatticeVector,
    pub degree: BigInt,
}

/// The splitting of the tangent bundle on one invariant curve. The last
/// summand is the distinguished one with degree 2 coming from (u_n, -u_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub wall: Wall,
    pub summands: Vec<SplittingSummand>,
}

impl SplittingType {
    /// The degrees as a sorted multiset.
    pub fn multiset(&self) -> Vec<BigInt> {
        let mut degrees: Vec<BigInt> = self.summands.iter().map(|s| s.degree.clone()).collect();
        degrees.sort();
        degrees
    }

    pub fn min_degree(&self) -> BigInt {
        self.summands
            .iter()
            .map(|s| s.degree.clone())
            .min()
            .expect("splitting has at least the distinguished summand")
    }
}

pub fn splitting_type(fan: &Fan, wall: &Wall) -> Result<SplittingType> {
    let n = fan.dim();
    let side_a = fan.generators(&wall.ordered_generators(false));
    let side_b = fan.generators(&wall.ordered_generators(true));
    let u = dual_basis(&side_a)?;
    let u_prime = dual_basis(&side_b)?;
    let distinguished = &u[n - 1];

    // The distinguished characters sit opposite each other across the wall.
    if u_prime[n - 1] != distinguished.neg() {
        return Err(ToricError::Internal(
            "distinguished characters across the wall are not opposite".into(),
        ));
    }

    let mut summands = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let diff = u[i].sub(&u_prime[i]);
        let degree = diff.ratio_to(distinguished).ok_or_else(|| {
            ToricError::Internal(format!(
                "character difference {diff:?} is not a multiple of the distinguished character"
            ))
        })?;
        summands.push(SplittingSummand {
            u: u[i].clone(),
            u_prime: u_prime[i].clone(),
            degree,
        });
    }
    summands.push(SplittingSummand {
        u: distinguished.clone(),
        u_prime: u_prime[n - 1].clone(),
        degree: BigInt::from(2),
    });

    // Independent route: the wall-relation coefficients must agree.
    let relation = wall_relation(fan, wall)?;
    for (i, b) in relation.coefficients.iter().enumerate() {
        if *b != summands[i].degree {
            return Err(ToricError::Internal(format!(
                "wall relation coefficient {b} disagrees with splitting degree {}",
                summands[i].degree
            )));
        }
    }

    Ok(SplittingType {
        wall: wall.clone(),
        summands,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ample,
    NefNotAmple,
    NotNef,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Ample => "Ample",
            Verdict::NefNotAmple => "NefNotAmple",
            Verdict::NotNef => "NotNef",
        }
    }

    pub fn is_nef(&self) -> bool {
        !matches!(self, Verdict::NotNef)
    }
}

/// Positivity of the tangent bundle with witness walls: for `NefNotAmple` the
/// first wall whose splitting contains a 0, for `NotNef` the first wall with
/// a negative summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityClass {
    pub verdict: Verdict,
    pub witness: Option<Wall>,
}

/// Classifies the tangent bundle by folding the curve criterion over all
/// walls: ample iff every splitting degree is positive, nef iff non-negative.
pub fn classify_tangent(fan: &Fan) -> Result<PositivityClass> {
    let walls = fan.walls()?;
    let mut zero_witness: Option<Wall> = None;
    for wall in &walls {
        let split = splitting_type(fan, wall)?;
        let min = split.min_degree();
        if min.is_negative() {
            return Ok(PositivityClass {
                verdict: Verdict::NotNef,
                witness: Some(wall.clone()),
            });
        }
        if min.is_zero() && zero_witness.is_none() {
            zero_witness = Some(wall.clone());
        }
    }
    if let Some(wall) = zero_witness {
        Ok(PositivityClass {
            verdict: Verdict::NefNotAmple,
            witness: Some(wall),
        })
    } else {
        Ok(PositivityClass {
            verdict: Verdict::Ample,
            witness: None,
        })
    }
}
