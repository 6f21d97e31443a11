//! Fans of smooth toric varieties: rays, maximal cones, walls.
//!
//! A `Fan` is validated on construction: rays are stored primitively and must
//! be pairwise distinct, every maximal cone must be unimodular (smoothness),
//! and any two maximal cones must intersect in a common face (the fan
//! condition, decided exactly by Fourier-Motzkin feasibility). Completeness is
//! a query, not a construction invariant: a fan is complete iff it has no
//! boundary facets, i.e. every facet of a maximal cone is shared by exactly
//! two maximal cones and all maximal cones are full-dimensional.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::feasibility::{feasible, Row};
use crate::lattice::{IntegerMatrix, LatticeVector};

/// A complete smooth fan's codimension-1 cone τ together with the two maximal
/// cones on its sides. Walls index the invariant curves of the variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// Ray indices spanning τ, sorted ascending; n-1 of them.
    pub shared_rays: Vec<usize>,
    /// Index of the maximal cone σ (the smaller cone index).
    pub side_a: usize,
    /// Index of the maximal cone σ′ on the other side.
    pub side_b: usize,
    /// The ray of side_a not in τ.
    pub opposite_a: usize,
    /// The ray of side_b not in τ.
    pub opposite_b: usize,
}

impl Wall {
    /// Generators of the requested side ordered wall-first: the shared rays in
    /// stored order, then the opposite ray last. This ordering makes the
    /// splitting pairing positional.
    pub fn ordered_generators(&self, side_b: bool) -> Vec<usize> {
        let mut g = self.shared_rays.clone();
        g.push(if side_b { self.opposite_b } else { self.opposite_a });
        g
    }
}

#[derive(Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    warnings: Vec<String>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        // Warnings are ingestion notes, not part of the fan's identity.
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("dim", &self.dim)
            .field("rays", &self.rays)
            .field("max_cones", &self.max_cones)
            .finish()
    }
}

impl Fan {
    /// Validates and builds a fan from raw data.
    ///
    /// Input rays are primitivized (with a warning) rather than rejected; ray
    /// and cone order follow the input, while ray indices inside each cone
    /// are sorted. Maximal cones of dimension lower than the ambient
    /// dimension are accepted (such a fan simply fails `is_complete`).
    pub fn build(
        dim: usize,
        rays: Vec<LatticeVector>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        if dim == 0 {
            return Err(ToricError::InvalidRays("ambient dimension must be ≥ 1".into()));
        }
        if rays.is_empty() {
            return Err(ToricError::InvalidRays("fan has no rays".into()));
        }
        let mut warnings = Vec::new();
        let mut stored = Vec::with_capacity(rays.len());
        for (i, ray) in rays.into_iter().enumerate() {
            if ray.dim() != dim {
                return Err(ToricError::DimensionMismatch {
                    expected: dim,
                    got: ray.dim(),
                });
            }
            if ray.is_zero() {
                return Err(ToricError::InvalidRays(format!("ray {i} is zero")));
            }
            let (p, k) = ray.primitive()?;
            if !k.is_one() {
                warnings.push(format!("ray {i} was not primitive; divided by {k}"));
            }
            stored.push(p);
        }
        for i in 0..stored.len() {
            for j in i + 1..stored.len() {
                if stored[i] == stored[j] {
                    return Err(ToricError::InvalidRays(format!(
                        "rays {i} and {j} coincide after primitivization"
                    )));
                }
            }
        }

        if max_cones.is_empty() {
            return Err(ToricError::InvalidCones("fan has no maximal cones".into()));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            if cone.is_empty() || cone.len() > dim {
                return Err(ToricError::InvalidCones(format!(
                    "maximal cone {c} has {} rays; expected between 1 and {dim}",
                    cone.len()
                )));
            }
            let mut sorted = cone;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ToricError::InvalidCones(format!(
                    "maximal cone {c} repeats a ray index"
                )));
            }
            if let Some(&bad) = sorted.iter().find(|&&r| r >= stored.len()) {
                return Err(ToricError::InvalidCones(format!(
                    "maximal cone {c} references ray {bad}, but there are only {} rays",
                    stored.len()
                )));
            }
            cones.push(sorted);
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if cones[i] == cones[j] {
                    return Err(ToricError::InvalidCones(format!(
                        "maximal cones {i} and {j} have the same ray set"
                    )));
                }
            }
        }

        let mut used = vec![false; stored.len()];
        for cone in &cones {
            for &r in cone {
                used[r] = true;
            }
        }
        if let Some(idle) = used.iter().position(|u| !u) {
            return Err(ToricError::InvalidRays(format!(
                "ray {idle} does not belong to any maximal cone"
            )));
        }

        for (c, cone) in cones.iter().enumerate() {
            if let Some(det) = smoothness_violation(&stored, cone) {
                return Err(ToricError::NotSmooth { cone: c, det });
            }
        }

        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if !cones_meet_in_common_face(&stored, &cones[a], &cones[b]) {
                    return Err(ToricError::NotAFan { cone_a: a, cone_b: b });
                }
            }
        }

        Ok(Fan {
            dim,
            rays: stored,
            max_cones: cones,
            warnings,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, c: usize) -> &[usize] {
        &self.max_cones[c]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn generators(&self, ray_indices: &[usize]) -> Vec<LatticeVector> {
        ray_indices.iter().map(|&r| self.rays[r].clone()).collect()
    }

    /// Facet keys (sorted ray-index sets of the codimension-1 faces of the
    /// maximal cones) together with the incident (cone, opposite ray) pairs.
    fn facet_incidence(&self) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
        let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for drop in 0..cone.len() {
                let key: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &r)| r)
                    .collect();
                facets.entry(key).or_default().push((c, cone[drop]));
            }
        }
        facets
    }

    /// Completeness via the boundary criterion: the fan is pure of full
    /// dimension and every facet is shared by exactly two maximal cones.
    ///
    /// Note that a complete smooth fan need not be projective in dimension
    /// ≥ 3; completeness says nothing about the existence of an ample
    /// divisor there.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        self.facet_incidence().values().all(|inc| inc.len() == 2)
    }

    /// All walls of a complete fan, ordered by their shared-ray sets.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        if self.max_cones.iter().any(|c| c.len() != self.dim) {
            return Err(ToricError::NotComplete(
                "a maximal cone is not full-dimensional".into(),
            ));
        }
        let mut walls = Vec::new();
        for (key, inc) in self.facet_incidence() {
            if inc.len() != 2 {
                return Err(ToricError::NotComplete(format!(
                    "facet {key:?} lies in {} maximal cone(s), expected 2",
                    inc.len()
                )));
            }
            let (mut first, mut second) = (inc[0], inc[1]);
            if first.0 > second.0 {
                std::mem::swap(&mut first, &mut second);
            }
            walls.push(Wall {
                shared_rays: key,
                side_a: first.0,
                side_b: second.0,
                opposite_a: first.1,
                opposite_b: second.1,
            });
        }
        Ok(walls)
    }

    /// The fan of projective n-space: rays e_1, ..., e_n, -(e_1 + ... + e_n)
    /// and all n-subsets as maximal cones.
    pub fn projective_space(n: usize) -> Fan {
        assert!(n >= 1);
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        rays.push(LatticeVector::new(vec![BigInt::from(-1); n]));
        let cones = subsets_of_size(n + 1, n);
        Fan::build(n, rays, cones).expect("projective space fan is valid")
    }

    /// The Hirzebruch surface fan with parameter a ≥ 0 (a = 0 gives P1 x P1).
    pub fn hirzebruch(a: u64) -> Fan {
        let rays = vec![
            LatticeVector::from_i64(&[1, 0]),
            LatticeVector::from_i64(&[0, 1]),
            LatticeVector::new(vec![BigInt::from(-1), BigInt::from(a)]),
            LatticeVector::from_i64(&[0, -1]),
        ];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
        Fan::build(2, rays, cones).expect("Hirzebruch fan is valid")
    }

    /// The product fan: rays of each factor embedded in the direct sum, one
    /// maximal cone per pair of factor cones.
    pub fn product(a: &Fan, b: &Fan) -> Fan {
        let dim = a.dim + b.dim;
        let mut rays = Vec::with_capacity(a.rays.len() + b.rays.len());
        for r in &a.rays {
            let mut coords = r.coords().to_vec();
            coords.extend(std::iter::repeat_with(BigInt::zero).take(b.dim));
            rays.push(LatticeVector::new(coords));
        }
        for r in &b.rays {
            let mut coords = vec![BigInt::zero(); a.dim];
            coords.extend_from_slice(r.coords());
            rays.push(LatticeVector::new(coords));
        }
        let mut cones = Vec::with_capacity(a.max_cones.len() * b.max_cones.len());
        for ca in &a.max_cones {
            for cb in &b.max_cones {
                let mut cone = ca.clone();
                cone.extend(cb.iter().map(|&r| r + a.rays.len()));
                cones.push(cone);
            }
        }
        Fan::build(dim, rays, cones).expect("product of valid fans is valid")
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Returns the offending determinant data if the cone spanned by the given
/// rays is not smooth. A full-dimensional cone is smooth iff |det| = 1; a
/// lower-dimensional cone iff the gcd of its maximal minors is 1 (its
/// generators then extend to a lattice basis).
pub fn smoothness_violation(rays: &[LatticeVector], cone: &[usize]) -> Option<BigInt> {
    let k = cone.len();
    let n = rays[cone[0]].dim();
    let gens: Vec<&LatticeVector> = cone.iter().map(|&r| &rays[r]).collect();
    if k == n {
        let det = IntegerMatrix::from_columns(
            &gens.iter().map(|g| (*g).clone()).collect::<Vec<_>>(),
        )
        .determinant();
        if det.abs().is_one() {
            None
        } else {
            Some(det)
        }
    } else {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for row_set in subsets_of_size(n, k) {
            let cols: Vec<LatticeVector> = gens
                .iter()
                .map(|gen| {
                    LatticeVector::new(row_set.iter().map(|&i| gen.coord(i).clone()).collect())
                })
                .collect();
            g = g.gcd(&IntegerMatrix::from_columns(&cols).determinant());
        }
        if g.is_one() {
            None
        } else {
            Some(g)
        }
    }
}

/// Exact test that two simplicial smooth cones intersect in the common face
/// spanned by their shared rays. The intersection is contained in that face
/// iff, for every generator of one cone outside the other, the corresponding
/// barycentric coordinate cannot be made positive inside the intersection;
/// each such question is a small linear feasibility problem.
fn cones_meet_in_common_face(
    rays: &[LatticeVector],
    cone_a: &[usize],
    cone_b: &[usize],
) -> bool {
    let n = rays[cone_a[0]].dim();
    let set_b: BTreeSet<usize> = cone_b.iter().copied().collect();
    let probes: Vec<usize> = (0..cone_a.len())
        .filter(|&i| !set_b.contains(&cone_a[i]))
        .collect();
    if probes.is_empty() {
        // cone_a's rays all lie in cone_b, so cone_a is a face of cone_b.
        return true;
    }

    if cone_a.len() == n {
        // Work in cone_b's coefficient space: x = V_b μ, μ ≥ 0, and x ∈ σ_a
        // iff the σ_a-coordinates λ = M_a⁻¹ V_b μ are all non-negative.
        let ma = IntegerMatrix::from_columns(
            &cone_a.iter().map(|&r| rays[r].clone()).collect::<Vec<_>>(),
        );
        let lambda_rows: Vec<Vec<BigInt>> = {
            // Row i of M_a⁻¹ V_b, computed by unimodular solves per column.
            let cols: Vec<LatticeVector> = cone_b
                .iter()
                .map(|&r| ma.solve_unimodular(&rays[r]).expect("cone is unimodular"))
                .collect();
            (0..n)
                .map(|i| cols.iter().map(|c| c.coord(i).clone()).collect())
                .collect()
        };
        let k = cone_b.len();
        let mut base_rows: Vec<Row> = Vec::new();
        for row in &lambda_rows {
            base_rows.push(Row {
                coeffs: row.clone(),
                constant: BigInt::zero(),
            });
        }
        for j in 0..k {
            let mut coeffs = vec![BigInt::zero(); k];
            coeffs[j] = BigInt::one();
            base_rows.push(Row {
                coeffs,
                constant: BigInt::zero(),
            });
        }
        for &i in &probes {
            let mut rows = base_rows.clone();
            rows.push(Row {
                coeffs: lambda_rows[i].clone(),
                constant: BigInt::from(-1),
            });
            if feasible(k, rows) {
                return false;
            }
        }
        true
    } else if cone_b.len() == n {
        // Symmetric: test from cone_b's side instead.
        cones_meet_in_common_face(rays, cone_b, cone_a)
    } else {
        // Both cones lower-dimensional: use the joint parameterization
        // V_a λ = V_b μ with λ, μ ≥ 0 and probe λ_i ≥ 1.
        let ka = cone_a.len();
        let kb = cone_b.len();
        let vars = ka + kb;
        let mut base_rows: Vec<Row> = Vec::new();
        for coord in 0..n {
            let mut coeffs = vec![BigInt::zero(); vars];
            for (slot, &r) in cone_a.iter().enumerate() {
                coeffs[slot] = rays[r].coord(coord).clone();
            }
            for (slot, &r) in cone_b.iter().enumerate() {
                coeffs[ka + slot] = -rays[r].coord(coord).clone();
            }
            base_rows.push(Row {
                coeffs: coeffs.clone(),
                constant: BigInt::zero(),
            });
            base_rows.push(Row {
                coeffs: coeffs.into_iter().map(|c| -c).collect(),
                constant: BigInt::zero(),
            });
        }
        for j in 0..vars {
            let mut coeffs = vec![BigInt::zero(); vars];
            coeffs[j] = BigInt::one();
            base_rows.push(Row {
                coeffs,
                constant: BigInt::zero(),
            });
        }
        for &i in &probes {
            let mut rows = base_rows.clone();
            let mut coeffs = vec![BigInt::zero(); vars];
            coeffs[i] = BigInt::one();
            rows.push(Row {
                coeffs,
                constant: BigInt::from(-1),
            });
            if feasible(vars, rows) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn v(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    pub(crate) fn p2_fan() -> Fan {
        Fan::build(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    pub(crate) fn p1p1_fan() -> Fan {
        Fan::build(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    pub(crate) fn f1_fan() -> Fan {
        Fan::build(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    #[test]
    fn builds_golden_surface_fans() {
        assert!(p2_fan().is_complete());
        assert!(p1p1_fan().is_complete());
        assert!(f1_fan().is_complete());
    }

    #[test]
    fn rejects_overlapping_cones() {
        // cone{(1,0),(1,1)} and cone{(1,0),(0,1)} overlap: not a fan.
        let err = Fan::build(
            2,
            vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1])],
            vec![vec![0, 1], vec![0, 2]],
        )
        .unwrap_err();
        assert_eq!(err, ToricError::NotAFan { cone_a: 0, cone_b: 1 });
    }

    #[test]
    fn rejects_non_smooth_cone() {
        // det((1,0),(1,2)) = 2 by the 2x2 formula.
        let err = Fan::build(2, vec![v(&[1, 0]), v(&[1, 2])], vec![vec![0, 1]]).unwrap_err();
        assert_eq!(
            err,
            ToricError::NotSmooth {
                cone: 0,
                det: BigInt::from(2)
            }
        );
    }

    #[test]
    fn rejects_bad_rays() {
        assert!(matches!(
            Fan::build(2, vec![v(&[0, 0]), v(&[1, 0])], vec![vec![0, 1]]),
            Err(ToricError::InvalidRays(_))
        ));
        // (2,4) primitivizes to (1,2), clashing with the existing ray.
        assert!(matches!(
            Fan::build(2, vec![v(&[1, 2]), v(&[2, 4])], vec![vec![0, 1]]),
            Err(ToricError::InvalidRays(_))
        ));
    }

    #[test]
    fn primitivizes_with_warning() {
        let fan = Fan::build(
            2,
            vec![v(&[2, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert_eq!(fan.ray(0), &v(&[1, 0]));
        assert_eq!(fan.warnings().len(), 1);
        assert_eq!(fan, p2_fan());
    }

    #[test]
    fn affine_fan_is_smooth_but_not_complete() {
        let fan = Fan::build(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap();
        assert!(!fan.is_complete());
        assert!(matches!(fan.walls(), Err(ToricError::NotComplete(_))));
    }

    #[test]
    fn lower_dimensional_maximal_cone_is_accepted_but_incomplete() {
        let fan = Fan::build(2, vec![v(&[1, 0])], vec![vec![0]]).unwrap();
        assert!(!fan.is_complete());
        // Two opposite rays cover only a line, not the plane.
        let line = Fan::build(2, vec![v(&[1, 0]), v(&[-1, 0])], vec![vec![0], vec![1]]).unwrap();
        assert!(!line.is_complete());
    }

    #[test]
    fn wall_counts_for_golden_fans() {
        assert_eq!(p2_fan().walls().unwrap().len(), 3);
        assert_eq!(p1p1_fan().walls().unwrap().len(), 4);
        // 2-subsets of the 4 rays of projective 3-space, all of them faces.
        assert_eq!(Fan::projective_space(3).walls().unwrap().len(), 6);
    }

    #[test]
    fn every_ray_is_a_wall_in_dimension_two() {
        for fan in [p2_fan(), p1p1_fan(), f1_fan(), Fan::hirzebruch(3)] {
            let walls = fan.walls().unwrap();
            assert_eq!(walls.len(), fan.rays().len());
            let mut seen: Vec<usize> = walls.iter().map(|w| w.shared_rays[0]).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..fan.rays().len()).collect::<Vec<_>>());
            // In dimension 2, #max_cones = #rays for complete fans.
            assert_eq!(fan.max_cones().len(), fan.rays().len());
        }
    }

    #[test]
    fn wall_sides_partition_their_cones() {
        for fan in [p2_fan(), f1_fan(), Fan::projective_space(3)] {
            for wall in fan.walls().unwrap() {
                let mut a = wall.shared_rays.clone();
                a.push(wall.opposite_a);
                a.sort_unstable();
                assert_eq!(a, fan.cone(wall.side_a));
                let mut b = wall.shared_rays.clone();
                b.push(wall.opposite_b);
                b.sort_unstable();
                assert_eq!(b, fan.cone(wall.side_b));
            }
        }
    }

    #[test]
    fn rebuild_is_idempotent() {
        for fan in [p2_fan(), f1_fan(), Fan::projective_space(4)] {
            let rebuilt = Fan::build(
                fan.dim(),
                fan.rays().to_vec(),
                fan.max_cones().to_vec(),
            )
            .unwrap();
            assert_eq!(rebuilt, fan);
        }
    }

    #[test]
    fn projective_space_family_is_complete() {
        for n in 1..=5 {
            let fan = Fan::projective_space(n);
            assert!(fan.is_complete(), "P^{n} fan must be complete");
            assert_eq!(fan.rays().len(), n + 1);
        }
    }

    #[test]
    fn products_are_complete() {
        let p1 = Fan::projective_space(1);
        let p2 = p2_fan();
        let p1p2 = Fan::product(&p1, &p2);
        assert_eq!(p1p2.dim(), 3);
        assert_eq!(p1p2.max_cones().len(), 6);
        assert!(p1p2.is_complete());
        let cube = Fan::product(&p1, &Fan::product(&p1, &p1));
        assert_eq!(cube.max_cones().len(), 8);
        assert!(cube.is_complete());
    }

    #[test]
    fn projective_line_has_one_wall() {
        let fan = Fan::projective_space(1);
        let walls = fan.walls().unwrap();
        assert_eq!(walls.len(), 1);
        assert!(walls[0].shared_rays.is_empty());
    }
}
