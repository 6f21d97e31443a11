//! Projective-space recognition, theorem verification, and the surface census.
//!
//! The census enumerates smooth complete toric surfaces by closing the seed
//! set {P², Hirzebruch surfaces F_a} under corner subdivision (inserting
//! v_i + v_{i+1} between angularly adjacent rays), bounded by a maximal ray
//! count and a bound on the wall self-intersection numbers d_i. Surfaces are
//! deduplicated by a canonical cyclic code: with the rays in counterclockwise
//! order, d_i is defined by v_{i-1} + v_{i+1} = -d_i · v_i (so d_i is the
//! self-intersection of the invariant curve of ray i), and the code is the
//! lexicographic minimum over all rotations and reflections of the cycle.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::lattice::{IntegerMatrix, LatticeVector};
use crate::polytope::{
    all_two_faces_triangular, anticanonical, find_ample_divisor, is_divisor_ample, is_simplex,
    polytope_from_divisor, DivisorCoefficients,
};
use crate::splitting::{classify_tangent, PositivityClass, Verdict};

/// Recognizes the fan of projective n-space up to lattice automorphism:
/// n+1 rays summing to zero, every n of them a lattice basis, and the maximal
/// cones exactly the n-subsets.
pub fn is_projective_space_fan(fan: &Fan) -> bool {
    let n = fan.dim();
    let m = fan.rays().len();
    if m != n + 1 {
        return false;
    }
    let sum = fan
        .rays()
        .iter()
        .fold(LatticeVector::zeros(n), |acc, r| acc.add(r));
    if !sum.is_zero() {
        return false;
    }
    let subsets = all_subsets(m, n);
    for subset in &subsets {
        let cols = fan.generators(subset);
        if !IntegerMatrix::from_columns(&cols).is_unimodular() {
            return false;
        }
    }
    let mut cones = fan.max_cones().to_vec();
    cones.sort();
    cones == subsets
}

fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Polytope-side checks of the theorem, recorded with the divisor they used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeChecks {
    pub divisor: DivisorCoefficients,
    pub all_two_faces_triangular: bool,
    pub simplex: bool,
}

/// Outcome of checking "ample tangent bundle implies projective space" on one
/// fan. The implication holds vacuously for non-ample classifications; for an
/// ample one, the fan must be recognized as projective space and the polytope
/// of an ample divisor must have only triangular 2-faces and be a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub classification: PositivityClass,
    pub is_projective_space: Option<bool>,
    pub polytope: Option<PolytopeChecks>,
    pub pass: bool,
}

/// Runs the full verification pipeline. Without an explicit divisor, the
/// anticanonical divisor is used when ample, otherwise an ample divisor is
/// searched for; if none is found the polytope checks are skipped and only
/// the classification is reported.
pub fn verify_theorem(
    fan: &Fan,
    divisor: Option<&DivisorCoefficients>,
) -> Result<TheoremReport> {
    let classification = classify_tangent(fan)?;
    if classification.verdict != Verdict::Ample {
        return Ok(TheoremReport {
            classification,
            is_projective_space: None,
            polytope: None,
            pass: true,
        });
    }

    let is_pn = is_projective_space_fan(fan);
    let chosen: Option<DivisorCoefficients> = match divisor {
        Some(c) => Some(c.clone()),
        None => {
            let minus_k = anticanonical(fan);
            if is_divisor_ample(fan, &minus_k)? {
                Some(minus_k)
            } else {
                match find_ample_divisor(fan) {
                    Ok(c) => Some(c),
                    Err(ToricError::NoAmpleDivisor) => None,
                    Err(e) => return Err(e),
                }
            }
        }
    };
    let polytope = match chosen {
        Some(c) => {
            let poly = polytope_from_divisor(fan, &c)?;
            let (triangular, _) = all_two_faces_triangular(&poly);
            Some(PolytopeChecks {
                divisor: c,
                all_two_faces_triangular: triangular,
                simplex: is_simplex(&poly),
            })
        }
        None => None,
    };
    let pass = is_pn
        && polytope
            .as_ref()
            .is_some_and(|p| p.all_two_faces_triangular && p.simplex);
    Ok(TheoremReport {
        classification,
        is_projective_space: Some(is_pn),
        polytope,
        pass,
    })
}

/// Canonical cyclic sequence of wall self-intersection numbers of a smooth
/// complete toric surface; equal codes characterize lattice-isomorphic fans.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceCode {
    code: Vec<BigInt>,
}

impl SurfaceCode {
    pub fn values(&self) -> &[BigInt] {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn max_abs(&self) -> BigInt {
        self.code
            .iter()
            .map(|d| d.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Ord for SurfaceCode {
    fn cmp(&self, other: &Self) -> Ordering {
        // Shorter codes first, then lexicographic.
        self.code
            .len()
            .cmp(&other.code.len())
            .then_with(|| self.code.cmp(&other.code))
    }
}

impl PartialOrd for SurfaceCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SurfaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.code.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SurfaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ray indices in counterclockwise angular order, starting from the positive
/// x-axis. Exact: quadrant half plus cross-product comparison.
fn ccw_order(fan: &Fan) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fan.rays().len()).collect();
    let half = |v: &LatticeVector| -> u8 {
        let y = v.coord(1);
        if y.is_positive() || (y.is_zero() && v.coord(0).is_positive()) {
            0
        } else {
            1
        }
    };
    order.sort_by(|&a, &b| {
        let (va, vb) = (fan.ray(a), fan.ray(b));
        half(va).cmp(&half(vb)).then_with(|| {
            let cross = va.coord(0) * vb.coord(1) - va.coord(1) * vb.coord(0);
            // Positive cross product: a precedes b counterclockwise.
            match cross.sign() {
                num_bigint::Sign::Plus => Ordering::Less,
                num_bigint::Sign::Minus => Ordering::Greater,
                num_bigint::Sign::NoSign => Ordering::Equal,
            }
        })
    });
    order
}

/// The self-intersection cycle (d_i) of a smooth complete surface fan, rays
/// taken in counterclockwise order.
fn self_intersection_cycle(fan: &Fan) -> Result<Vec<BigInt>> {
    if fan.dim() != 2 {
        return Err(ToricError::Unsupported(
            "surface codes are defined in dimension 2 only".into(),
        ));
    }
    if !fan.is_complete() {
        return Err(ToricError::NotComplete(
            "surface codes require a complete fan".into(),
        ));
    }
    let order = ccw_order(fan);
    let m = order.len();
    let cone_set: std::collections::BTreeSet<Vec<usize>> =
        fan.max_cones().iter().cloned().collect();
    for i in 0..m {
        let mut pair = vec![order[i], order[(i + 1) % m]];
        pair.sort_unstable();
        if !cone_set.contains(&pair) {
            return Err(ToricError::Internal(
                "angularly adjacent rays do not span a maximal cone".into(),
            ));
        }
    }
    let mut cycle = Vec::with_capacity(m);
    for i in 0..m {
        let prev = fan.ray(order[(i + m - 1) % m]);
        let next = fan.ray(order[(i + 1) % m]);
        let here = fan.ray(order[i]);
        let k = prev.add(next).ratio_to(here).ok_or_else(|| {
            ToricError::Internal("neighbor sum is not a multiple of the middle ray".into())
        })?;
        cycle.push(-k);
    }
    Ok(cycle)
}

/// Canonicalizes a surface's self-intersection cycle over rotation and
/// reflection (lexicographic minimum).
pub fn canonical_surface_code(fan: &Fan) -> Result<SurfaceCode> {
    let cycle = self_intersection_cycle(fan)?;
    let m = cycle.len();
    let mut best: Option<Vec<BigInt>> = None;
    let reversed: Vec<BigInt> = cycle.iter().rev().cloned().collect();
    for candidate_base in [&cycle, &reversed] {
        for start in 0..m {
            let rotated: Vec<BigInt> = (0..m)
                .map(|i| candidate_base[(start + i) % m].clone())
                .collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    Ok(SurfaceCode {
        code: best.expect("cycle is non-empty"),
    })
}

/// Builds the surface fan whose rays, in counterclockwise order, are `rays`,
/// with one maximal cone per adjacent pair.
fn surface_fan_from_ccw_rays(rays: Vec<LatticeVector>) -> Result<Fan> {
    let m = rays.len();
    let cones = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Fan::build(2, rays, cones)
}

/// Enumerates smooth complete toric surfaces: the seeds P² and F_a
/// (0 ≤ a ≤ max_abs_d) closed under inserting v_i + v_{i+1} between adjacent
/// rays, while the ray count stays ≤ max_rays and every |d_i| ≤ max_abs_d.
/// Deduplicated by canonical code and returned in code order.
pub fn enumerate_smooth_surfaces(max_rays: usize, max_abs_d: i64) -> Vec<Fan> {
    assert!(max_rays >= 3, "census needs max_rays >= 3");
    assert!(max_abs_d >= 1, "census needs max_abs_d >= 1");
    let bound = BigInt::from(max_abs_d);

    let mut seeds: Vec<Fan> = Vec::new();
    seeds.push(Fan::projective_space(2));
    if max_rays >= 4 {
        for a in 0..=max_abs_d as u64 {
            seeds.push(Fan::hirzebruch(a));
        }
    }

    let mut found: BTreeMap<SurfaceCode, Fan> = BTreeMap::new();
    let mut queue: VecDeque<SurfaceCode> = VecDeque::new();
    for fan in seeds {
        let code = canonical_surface_code(&fan).expect("seed fans are valid surfaces");
        if code.max_abs() <= bound && !found.contains_key(&code) {
            queue.push_back(code.clone());
            found.insert(code, fan);
        }
    }

    while let Some(code) = queue.pop_front() {
        let fan = found.get(&code).expect("queued codes are stored").clone();
        if fan.rays().len() >= max_rays {
            continue;
        }
        let order = ccw_order(&fan);
        let m = order.len();
        for i in 0..m {
            let mut rays: Vec<LatticeVector> =
                order.iter().map(|&r| fan.ray(r).clone()).collect();
            let inserted = rays[i].add(&rays[(i + 1) % m]);
            rays.insert(i + 1, inserted);
            let subdivided =
                surface_fan_from_ccw_rays(rays).expect("corner subdivision stays smooth");
            let sub_code =
                canonical_surface_code(&subdivided).expect("subdivision stays complete");
            if sub_code.max_abs() <= bound && !found.contains_key(&sub_code) {
                queue.push_back(sub_code.clone());
                found.insert(sub_code, subdivided);
            }
        }
    }

    found.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub code: SurfaceCode,
    pub classification: PositivityClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub entries: Vec<CensusEntry>,
}

impl CensusTable {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.entries
            .iter()
            .filter(|e| e.classification.verdict == verdict)
            .count()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Classifies tangent positivity for every surface in the bounded census.
pub fn census(max_rays: usize, max_abs_d: i64) -> Result<CensusTable> {
    let mut entries = Vec::new();
    for fan in enumerate_smooth_surfaces(max_rays, max_abs_d) {
        entries.push(CensusEntry {
            code: canonical_surface_code(&fan)?,
            classification: classify_tangent(&fan)?,
        });
    }
    Ok(CensusTable { entries })
}
