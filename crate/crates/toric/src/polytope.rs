//! Lattice polytopes of ample invariant divisors.
//!
//! A polytope here is never built from a raw vertex list: it is always derived
//! from a complete smooth fan together with divisor coefficients c (one per
//! ray, D = Σ c_k D_k). The vertex of a maximal cone σ is the unique lattice
//! point p_σ with ⟨p_σ, v_i⟩ = -c_i on the rays of σ; the divisor is ample
//! exactly when every vertex satisfies the strict inequality ⟨p_σ, v⟩ > -c_v
//! at all other rays. Edges come from walls and 2-faces from codimension-2
//! cones, so every combinatorial face is read off the cone-face dictionary.
//!
//! The angle-sum trichotomy on a 2-face is computed by exact lattice-length
//! comparison (never floating-point angles): if s and s′ are the primitive
//! directions of the two face edges flanking a polytope edge with primitive
//! direction w, then s - s′ = a·w for an integer a, and the two adjacent
//! angles sum to less than, exactly, or more than π according to the sign
//! of a.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::fan::{Fan, Wall};
use crate::lattice::{dual_basis, IntegerMatrix, LatticeVector};

/// Divisor coefficients c_k, one per ray of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCoefficients {
    pub coeffs: Vec<BigInt>,
}

impl DivisorCoefficients {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// The anticanonical divisor -K: every coefficient 1.
pub fn anticanonical(fan: &Fan) -> DivisorCoefficients {
    DivisorCoefficients::new(vec![BigInt::one(); fan.rays().len()])
}

/// First vertex/ray pair violating the strict ampleness inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmpleViolation {
    pub cone: usize,
    pub ray: usize,
}

fn vertex_of_cone(fan: &Fan, cone: usize, c: &DivisorCoefficients) -> Result<LatticeVector> {
    let gens = fan.generators(fan.cone(cone));
    let rows = IntegerMatrix::from_rows(&gens);
    let rhs = LatticeVector::new(
        fan.cone(cone)
            .iter()
            .map(|&r| -c.coeffs[r].clone())
            .collect(),
    );
    rows.solve_unimodular(&rhs)
}

fn check_divisor(fan: &Fan, c: &DivisorCoefficients) -> Result<()> {
    if !fan.is_complete() {
        return Err(ToricError::NotComplete(
            "divisor polytopes require a complete fan".into(),
        ));
    }
    if c.len() != fan.rays().len() {
        return Err(ToricError::DimensionMismatch {
            expected: fan.rays().len(),
            got: c.len(),
        });
    }
    Ok(())
}

/// Scans all vertices against all outside rays; `None` means the divisor is
/// ample. The witness is the first violated (cone, ray) pair in cone order.
pub fn ample_violation(fan: &Fan, c: &DivisorCoefficients) -> Result<Option<AmpleViolation>> {
    check_divisor(fan, c)?;
    for cone in 0..fan.max_cones().len() {
        let p = vertex_of_cone(fan, cone, c)?;
        let in_cone: BTreeSet<usize> = fan.cone(cone).iter().copied().collect();
        for ray in 0..fan.rays().len() {
            if in_cone.contains(&ray) {
                continue;
            }
            if p.dot(fan.ray(ray)) <= -c.coeffs[ray].clone() {
                return Ok(Some(AmpleViolation { cone, ray }));
            }
        }
    }
    Ok(None)
}

pub fn is_divisor_ample(fan: &Fan, c: &DivisorCoefficients) -> Result<bool> {
    Ok(ample_violation(fan, c)?.is_none())
}

/// Searches for ample coefficients. The anticanonical divisor is tried first
/// (so Fano fans return all ones); otherwise the wall-degree inequalities
/// c_opp_a + c_opp_b + Σ b_j c_shared_j ≥ 1 — one per wall, with b the wall
/// relation — are solved exactly by Fourier-Motzkin elimination. Strict
/// convexity is wall-local on a complete fan, so feasibility of this system
/// is equivalent to the existence of an ample divisor; infeasibility is
/// reported as such (the fan is then non-projective).
pub fn find_ample_divisor(fan: &Fan) -> Result<DivisorCoefficients> {
    let all_ones = anticanonical(fan);
    if ample_violation(fan, &all_ones)?.is_none() {
        return Ok(all_ones);
    }

    let m = fan.rays().len();
    let mut rows = Vec::new();
    for wall in fan.walls()? {
        let relation = crate::splitting::wall_relation(fan, &wall)?;
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs[wall.opposite_a] += 1;
        coeffs[wall.opposite_b] += 1;
        for (b, &r) in relation.coefficients.iter().zip(&wall.shared_rays) {
            coeffs[r] += b;
        }
        rows.push(crate::feasibility::Row {
            coeffs,
            constant: BigInt::from(-1),
        });
    }
    let solution = crate::feasibility::solve(m, rows).ok_or(ToricError::NoAmpleDivisor)?;
    let c = DivisorCoefficients::new(solution);
    // Cross-check through the vertex route; the two ampleness
    // characterizations must agree.
    if let Some(violation) = ample_violation(fan, &c)? {
        return Err(ToricError::Internal(format!(
            "wall-degree solution {c:?} fails the vertex check at cone {} ray {}",
            violation.cone, violation.ray
        )));
    }
    Ok(c)
}

/// A 2-face of the polytope: the codimension-2 cone it corresponds to and the
/// cycle of incident maximal cones (= vertices) and walls (= edges) around
/// it. `wall_cycle[k]` is the edge between `cone_cycle[k]` and
/// `cone_cycle[(k+1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFace {
    pub rays: Vec<usize>,
    pub cone_cycle: Vec<usize>,
    pub wall_cycle: Vec<usize>,
}

/// The polytope P(X, D) of an ample invariant divisor, with vertex, edge, and
/// 2-face combinatorics resolved through the fan.
#[derive(Debug)]
pub struct LatticePolytope<'a> {
    fan: &'a Fan,
    divisor: DivisorCoefficients,
    vertices: Vec<LatticeVector>,
    walls: Vec<Wall>,
    two_faces: Vec<TwoFace>,
}

impl<'a> LatticePolytope<'a> {
    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn divisor(&self) -> &DivisorCoefficients {
        &self.divisor
    }

    /// Vertices indexed by maximal cone.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn vertex(&self, cone: usize) -> &LatticeVector {
        &self.vertices[cone]
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Endpoints of the edge of a wall, as maximal-cone indices.
    pub fn edge(&self, wall: usize) -> (usize, usize) {
        (self.walls[wall].side_a, self.walls[wall].side_b)
    }

    pub fn two_faces(&self) -> &[TwoFace] {
        &self.two_faces
    }

    /// Index of the 2-face whose codimension-2 cone has exactly these rays.
    pub fn face_of_rays(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.two_faces.iter().position(|f| f.rays == key)
    }
}

fn walk_face_cycle(
    fan: &Fan,
    wall_index: &BTreeMap<Vec<usize>, usize>,
    walls: &[Wall],
    key: &[usize],
    star: &BTreeSet<usize>,
) -> Result<TwoFace> {
    // The two facets of `cone` that contain the codimension-2 key.
    let facets_of = |cone: usize| -> [Vec<usize>; 2] {
        let extras: Vec<usize> = fan
            .cone(cone)
            .iter()
            .copied()
            .filter(|r| !key.contains(r))
            .collect();
        debug_assert_eq!(extras.len(), 2);
        let mut f0: Vec<usize> = key.iter().copied().chain([extras[0]]).collect();
        f0.sort_unstable();
        let mut f1: Vec<usize> = key.iter().copied().chain([extras[1]]).collect();
        f1.sort_unstable();
        [f0, f1]
    };

    let start = *star.iter().next().expect("star is non-empty");
    let mut cone_cycle = vec![start];
    let mut wall_cycle = Vec::new();
    let [f0, f1] = facets_of(start);
    let mut exit = if f0 <= f1 { f0 } else { f1 };
    let mut current = start;
    loop {
        let widx = *wall_index.get(&exit).ok_or_else(|| {
            ToricError::Internal(format!("facet {exit:?} has no wall in a complete fan"))
        })?;
        wall_cycle.push(widx);
        let wall = &walls[widx];
        let next = if wall.side_a == current {
            wall.side_b
        } else {
            wall.side_a
        };
        if next == start {
            break;
        }
        cone_cycle.push(next);
        let [g0, g1] = facets_of(next);
        exit = if g0 == exit { g1 } else { g0 };
        current = next;
    }

    if cone_cycle.len() != star.len()
        || cone_cycle.iter().copied().collect::<BTreeSet<_>>() != *star
    {
        return Err(ToricError::Internal(format!(
            "face cycle around {key:?} does not close over its star"
        )));
    }
    Ok(TwoFace {
        rays: key.to_vec(),
        cone_cycle,
        wall_cycle,
    })
}

pub fn polytope_from_divisor<'a>(
    fan: &'a Fan,
    divisor: &DivisorCoefficients,
) -> Result<LatticePolytope<'a>> {
    if let Some(violation) = ample_violation(fan, divisor)? {
        return Err(ToricError::DivisorNotAmple {
            cone: violation.cone,
            ray: violation.ray,
        });
    }
    let n = fan.dim();
    let vertices: Vec<LatticeVector> = (0..fan.max_cones().len())
        .map(|c| vertex_of_cone(fan, c, divisor))
        .collect::<Result<_>>()?;
    let walls = fan.walls()?;
    let wall_index: BTreeMap<Vec<usize>, usize> = walls
        .iter()
        .enumerate()
        .map(|(i, w)| (w.shared_rays.clone(), i))
        .collect();

    // Each edge must run along the distinguished character of its wall.
    for wall in &walls {
        let u = dual_basis(&fan.generators(&wall.ordered_generators(false)))?;
        let edge = vertices[wall.side_b].sub(&vertices[wall.side_a]);
        match edge.ratio_to(&u[n - 1]) {
            Some(len) if len.is_positive() => {}
            _ => {
                return Err(ToricError::Internal(
                    "polytope edge is not a positive multiple of the distinguished character"
                        .into(),
                ))
            }
        }
    }

    // The primitive edge directions at each vertex are the dual basis of its
    // cone, as multisets.
    for (c, p) in vertices.iter().enumerate() {
        let mut directions: Vec<LatticeVector> = walls
            .iter()
            .filter(|w| w.side_a == c || w.side_b == c)
            .map(|w| {
                let other = if w.side_a == c { w.side_b } else { w.side_a };
                Ok(vertices[other].sub(p).primitive()?.0)
            })
            .collect::<Result<_>>()?;
        if directions.len() != n {
            return Err(ToricError::Internal(format!(
                "vertex of cone {c} has {} edges, expected {n}",
                directions.len()
            )));
        }
        directions.sort();
        let mut duals = dual_basis(&fan.generators(fan.cone(c)))?;
        duals.sort();
        if directions != duals {
            return Err(ToricError::Internal(format!(
                "edge directions at the vertex of cone {c} differ from the dual basis"
            )));
        }
    }

    let mut two_faces = Vec::new();
    if n >= 2 {
        let mut stars: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        for (c, cone) in fan.max_cones().iter().enumerate() {
            for key in subsets(cone, n - 2) {
                stars.entry(key).or_default().insert(c);
            }
        }
        for (key, star) in stars {
            two_faces.push(walk_face_cycle(fan, &wall_index, &walls, &key, &star)?);
        }
        // Every edge lies in exactly n-1 faces of dimension 2.
        for widx in 0..walls.len() {
            let count = two_faces
                .iter()
                .filter(|f| f.wall_cycle.contains(&widx))
                .count();
            if count != n - 1 {
                return Err(ToricError::Internal(format!(
                    "wall {widx} lies in {count} two-faces, expected {}",
                    n - 1
                )));
            }
        }
    }

    Ok(LatticePolytope {
        fan,
        divisor: divisor.clone(),
        vertices,
        walls,
        two_faces,
    })
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(
        items: &[usize],
        start: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, i + 1, k, current, out);
            current.pop();
        }
    }
    rec(items, 0, k, &mut current, &mut out);
    out
}

/// The trichotomy of the two polytope angles adjacent to a wall's edge on one
/// of its 2-faces: +1, 0, -1 for an angle sum below, at, or above π.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AngleSign {
    pub face: usize,
    pub wall: usize,
    pub sign: i8,
}

pub fn angle_sum_sign(
    polytope: &LatticePolytope<'_>,
    wall: usize,
    face: usize,
) -> Result<AngleSign> {
    let two_face = polytope
        .two_faces
        .get(face)
        .ok_or_else(|| ToricError::InvalidArgument(format!("no 2-face with index {face}")))?;
    let len = two_face.cone_cycle.len();
    let k = two_face
        .wall_cycle
        .iter()
        .position(|&w| w == wall)
        .ok_or_else(|| {
            ToricError::InvalidArgument(format!(
                "the edge of wall {wall} does not lie on 2-face {face}"
            ))
        })?;

    let ca = two_face.cone_cycle[k];
    let cb = two_face.cone_cycle[(k + 1) % len];
    let qa = two_face.cone_cycle[(k + len - 1) % len];
    let qb = two_face.cone_cycle[(k + 2) % len];

    let pa = &polytope.vertices[ca];
    let pb = &polytope.vertices[cb];
    let (w, _) = pb.sub(pa).primitive()?;
    let (s, _) = polytope.vertices[qa].sub(pa).primitive()?;
    let (s_prime, _) = polytope.vertices[qb].sub(pb).primitive()?;

    let a = s
        .sub(&s_prime)
        .ratio_to(&w)
        .ok_or(ToricError::NonPlanarFace)?;
    let sign = match a.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    };
    Ok(AngleSign { face, wall, sign })
}

/// True iff every 2-face cycle has exactly three vertices; the witness is the
/// first non-triangular face.
pub fn all_two_faces_triangular(polytope: &LatticePolytope<'_>) -> (bool, Option<usize>) {
    match polytope
        .two_faces
        .iter()
        .position(|f| f.cone_cycle.len() != 3)
    {
        Some(face) => (false, Some(face)),
        None => (true, None),
    }
}

/// True iff the polytope has exactly n+1 vertices.
pub fn is_simplex(polytope: &LatticePolytope<'_>) -> bool {
    let distinct: BTreeSet<&LatticeVector> = polytope.vertices.iter().collect();
    distinct.len() == polytope.fan.dim() + 1
}

/// Recomputes the facet data of the polytope from its vertex set alone and
/// rebuilds the normal fan: every ray must support its facet at value -c_k
/// with the minimizing vertices exactly the cones containing it. The result
/// equals the source fan; any mismatch is an internal-consistency failure.
pub fn normal_fan(polytope: &LatticePolytope<'_>) -> Result<Fan> {
    let fan = polytope.fan;
    let c = &polytope.divisor;
    for (k, ray) in fan.rays().iter().enumerate() {
        let values: Vec<BigInt> = polytope.vertices.iter().map(|p| p.dot(ray)).collect();
        let min = values.iter().min().expect("polytope has vertices").clone();
        if min != -c.coeffs[k].clone() {
            return Err(ToricError::Internal(format!(
                "ray {k} supports the polytope at {min}, expected {}",
                -c.coeffs[k].clone()
            )));
        }
        let minimizers: BTreeSet<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == min)
            .map(|(i, _)| i)
            .collect();
        let incident: BTreeSet<usize> = fan
            .max_cones()
            .iter()
            .enumerate()
            .filter(|(_, cone)| cone.contains(&k))
            .map(|(i, _)| i)
            .collect();
        if minimizers != incident {
            return Err(ToricError::Internal(format!(
                "facet of ray {k} is supported by cones {minimizers:?}, expected {incident:?}"
            )));
        }
    }

    // Maximal cones from vertex incidence: the rays tight at each vertex.
    let cones: Vec<Vec<usize>> = polytope
        .vertices
        .iter()
        .map(|p| {
            (0..fan.rays().len())
                .filter(|&k| p.dot(fan.ray(k)) == -c.coeffs[k].clone())
                .collect()
        })
        .collect();
    let rebuilt = Fan::build(fan.dim(), fan.rays().to_vec(), cones)?;
    if rebuilt != *fan {
        return Err(ToricError::Internal(
            "normal fan reconstruction does not match the source fan".into(),
        ));
    }
    Ok(rebuilt)
}
