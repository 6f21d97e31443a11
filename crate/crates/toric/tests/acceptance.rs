//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime. Every expected value is exact; no tolerances anywhere.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use toric::{
    angle_sum_sign, anticanonical, canonical_surface_code, census, classify_tangent,
    dual_basis, enumerate_smooth_surfaces, find_ample_divisor, is_divisor_ample,
    is_projective_space_fan, normal_fan, polytope_from_divisor, splitting_type,
    verify_theorem, wall_relation, DivisorCoefficients, Fan, IntegerMatrix,
    LatticePolytope, LatticeVector, Verdict,
};

fn v(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(coords)
}

fn big_vec(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&x| BigInt::from(x)).collect()
}

fn p2() -> Fan {
    Fan::build(
        2,
        vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
    .unwrap()
}

fn p1p1() -> Fan {
    Fan::build(
        2,
        vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn f1() -> Fan {
    Fan::build(
        2,
        vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[-1, -1])],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn blowup_p3_at_point() -> Fan {
    Fan::build(
        3,
        vec![
            v(&[1, 0, 0]),
            v(&[0, 1, 0]),
            v(&[0, 0, 1]),
            v(&[-1, -1, -1]),
            v(&[1, 1, 1]),
        ],
        vec![
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
            vec![0, 1, 4],
            vec![0, 2, 4],
            vec![1, 2, 4],
        ],
    )
    .unwrap()
}

/// The wall over the ray with the given index (dimension 2 only).
fn surface_wall(fan: &Fan, ray: usize) -> toric::Wall {
    fan.walls()
        .unwrap()
        .into_iter()
        .find(|w| w.shared_rays == [ray])
        .expect("wall exists")
}

fn finish(criterion: u32, started: Instant, budget: Duration, detail: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion} PASS: {detail} ({} ms)", elapsed.as_millis());
}

#[test]
fn criterion_1_golden_splitting_types() {
    let started = Instant::now();

    let fan = p2();
    let split = splitting_type(&fan, &surface_wall(&fan, 2)).unwrap();
    assert_eq!(split.multiset(), big_vec(&[1, 2]));
    assert_eq!(classify_tangent(&fan).unwrap().verdict, Verdict::Ample);

    let fan = p1p1();
    let split = splitting_type(&fan, &surface_wall(&fan, 2)).unwrap();
    assert_eq!(split.multiset(), big_vec(&[0, 2]));
    assert_eq!(classify_tangent(&fan).unwrap().verdict, Verdict::NefNotAmple);

    let fan = f1();
    let split = splitting_type(&fan, &surface_wall(&fan, 2)).unwrap();
    assert_eq!(split.multiset(), big_vec(&[-1, 2]));
    assert_eq!(classify_tangent(&fan).unwrap().verdict, Verdict::NotNef);

    finish(
        1,
        started,
        Duration::from_secs(1),
        "golden splitting types {1,2}, {0,2}, {-1,2} and verdicts Ample/NefNotAmple/NotNef",
    );
}

#[test]
fn criterion_2_golden_polytopes() {
    let started = Instant::now();

    let vertex_set = |fan: &Fan| -> BTreeSet<LatticeVector> {
        polytope_from_divisor(fan, &anticanonical(fan))
            .unwrap()
            .vertices()
            .iter()
            .cloned()
            .collect()
    };

    assert_eq!(
        vertex_set(&p2()),
        [v(&[2, -1]), v(&[-1, 2]), v(&[-1, -1])].into_iter().collect()
    );
    assert_eq!(
        vertex_set(&p1p1()),
        [v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])]
            .into_iter()
            .collect()
    );
    assert_eq!(
        vertex_set(&f1()),
        [v(&[1, 0]), v(&[-1, 2]), v(&[-1, -1]), v(&[1, -1])]
            .into_iter()
            .collect()
    );

    finish(
        2,
        started,
        Duration::from_secs(1),
        "anticanonical polytopes of the three golden surfaces have the published vertex sets",
    );
}

/// The bridge universe: all census(7,3) surfaces plus four 3-folds.
fn bridge_universe() -> Vec<Fan> {
    let mut fans = enumerate_smooth_surfaces(7, 3);
    let p1 = Fan::projective_space(1);
    fans.push(Fan::projective_space(3));
    fans.push(Fan::product(&p1, &Fan::projective_space(2)));
    fans.push(Fan::product(&p1, &Fan::product(&p1, &p1)));
    fans.push(blowup_p3_at_point());
    fans
}

fn ample_polytope(fan: &Fan) -> LatticePolytope<'_> {
    let minus_k = anticanonical(fan);
    let divisor = if is_divisor_ample(fan, &minus_k).unwrap() {
        minus_k
    } else {
        find_ample_divisor(fan).unwrap()
    };
    polytope_from_divisor(fan, &divisor).unwrap()
}

#[test]
fn criterion_3_angle_trichotomy_matches_splitting_signs() {
    let started = Instant::now();
    let mut pairs = 0usize;
    for fan in bridge_universe() {
        let n = fan.dim();
        let poly = ample_polytope(&fan);
        for (widx, wall) in poly.walls().iter().enumerate() {
            let split = splitting_type(&fan, wall).unwrap();
            let mut faces_hit = BTreeSet::new();
            for j in 0..n - 1 {
                let face_rays: Vec<usize> = wall
                    .shared_rays
                    .iter()
                    .enumerate()
                    .filter(|&(jj, _)| jj != j)
                    .map(|(_, &r)| r)
                    .collect();
                let face = poly
                    .face_of_rays(&face_rays)
                    .expect("every wall summand has its incident 2-face");
                faces_hit.insert(face);
                let sign = angle_sum_sign(&poly, widx, face).unwrap().sign;
                let a_j = &split.summands[j].degree;
                let expected = match a_j.sign() {
                    num_bigint::Sign::Minus => -1,
                    num_bigint::Sign::NoSign => 0,
                    num_bigint::Sign::Plus => 1,
                };
                assert_eq!(
                    sign, expected,
                    "fan {fan:?}, wall {wall:?}, summand {j}"
                );
                pairs += 1;
            }
            // Exact quantification: those are all the 2-faces of this edge.
            let incident: BTreeSet<usize> = poly
                .two_faces()
                .iter()
                .enumerate()
                .filter(|(_, f)| f.wall_cycle.contains(&widx))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(faces_hit, incident);
        }
    }
    finish(
        3,
        started,
        Duration::from_secs(10),
        &format!("angle-sum sign = sign(a_j) on all {pairs} (wall, 2-face) incidences"),
    );
}

#[test]
fn criterion_4_two_route_splitting_equality() {
    let started = Instant::now();
    let mut universe = bridge_universe();
    universe.extend((1..=5).map(Fan::projective_space));
    let mut walls_checked = 0usize;
    for fan in &universe {
        for wall in fan.walls().unwrap() {
            let split = splitting_type(fan, &wall).unwrap();
            let rel = wall_relation(fan, &wall).unwrap();
            let mut expected = rel.coefficients.clone();
            expected.push(BigInt::from(2));
            expected.sort();
            assert_eq!(split.multiset(), expected);
            walls_checked += 1;
        }
    }
    finish(
        4,
        started,
        Duration::from_secs(10),
        &format!(
            "splitting multiset = wall-relation coefficients + {{2}} on {walls_checked} walls of {} fans",
            universe.len()
        ),
    );
}

#[test]
fn criterion_5_census_theorem_at_desk_scale() {
    let started = Instant::now();
    let table = census(7, 3).unwrap();

    // Pinned from the exhaustive run; the strata with at most 5 rays are
    // cross-checked by hand in the unit tests.
    assert_eq!(table.len(), 28);
    assert_eq!(table.count(Verdict::Ample), 1);
    assert_eq!(table.count(Verdict::NefNotAmple), 1);
    assert_eq!(table.count(Verdict::NotNef), 26);

    let p2_code = canonical_surface_code(&p2()).unwrap();
    let ample: Vec<_> = table
        .entries
        .iter()
        .filter(|e| e.classification.verdict == Verdict::Ample)
        .collect();
    assert_eq!(ample.len(), 1);
    assert_eq!(ample[0].code, p2_code);

    let nef: Vec<_> = table
        .entries
        .iter()
        .filter(|e| e.classification.verdict.is_nef())
        .collect();
    assert_eq!(nef.len(), 2);
    assert_eq!(nef[0].code, p2_code);
    assert_eq!(nef[1].code, canonical_surface_code(&p1p1()).unwrap());

    for fan in enumerate_smooth_surfaces(7, 3) {
        if classify_tangent(&fan).unwrap().verdict != Verdict::Ample {
            continue;
        }
        let report = verify_theorem(&fan, None).unwrap();
        assert_eq!(report.is_projective_space, Some(true));
        let checks = report.polytope.expect("ample fan has an ample divisor");
        assert!(checks.all_two_faces_triangular);
        assert!(checks.simplex);
        assert!(report.pass);
    }

    finish(
        5,
        started,
        Duration::from_secs(30),
        "census(7,3) has 28 codes, one Ample (the plane), two nef; the Ample entry passes verification",
    );
}

#[test]
fn criterion_6_projective_space_family() {
    let started = Instant::now();
    for n in 1..=5usize {
        let fan = Fan::projective_space(n);
        let mut expected = vec![BigInt::from(1); n - 1];
        expected.push(BigInt::from(2));
        let walls = fan.walls().unwrap();
        if n == 1 {
            assert_eq!(walls.len(), 1);
            assert_eq!(
                splitting_type(&fan, &walls[0]).unwrap().multiset(),
                big_vec(&[2])
            );
        }
        for wall in &walls {
            assert_eq!(splitting_type(&fan, wall).unwrap().multiset(), expected);
        }
        assert_eq!(classify_tangent(&fan).unwrap().verdict, Verdict::Ample);
        assert!(is_projective_space_fan(&fan));
    }
    finish(
        6,
        started,
        Duration::from_secs(5),
        "P^n (n = 1..5): every wall splits as {1,...,1,2} and the verdict is Ample",
    );
}

#[test]
fn criterion_7_normal_fan_round_trip() {
    let started = Instant::now();
    let cases: Vec<(Fan, Vec<i64>)> = vec![
        (p2(), vec![1, 1, 2]),
        (p1p1(), vec![1, 1, 2, 2]),
        (f1(), vec![1, 1, 1, 2]),
    ];
    for (fan, skew) in cases {
        for divisor in [
            anticanonical(&fan),
            DivisorCoefficients::from_i64(&skew),
        ] {
            assert!(is_divisor_ample(&fan, &divisor).unwrap());
            let poly = polytope_from_divisor(&fan, &divisor).unwrap();
            assert_eq!(normal_fan(&poly).unwrap(), fan);
        }
    }
    finish(
        7,
        started,
        Duration::from_secs(1),
        "normal_fan∘polytope_from_divisor is the identity for -K and a skewed ample divisor each",
    );
}

/// Not a numbered criterion: the simplex recognition of the final argument,
/// checked as an equivalence over the whole census universe and the 3-folds.
#[test]
fn invariant_simplex_iff_all_two_faces_triangular() {
    use toric::{all_two_faces_triangular, is_simplex};
    for fan in bridge_universe() {
        let poly = ample_polytope(&fan);
        let (triangular, _) = all_two_faces_triangular(&poly);
        assert_eq!(
            is_simplex(&poly),
            triangular,
            "simplex/triangularity equivalence on {fan:?}"
        );
    }
}

mod seeded {
    use super::*;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub const SEED: u64 = 0x70_52_1C;

    /// Random matrix with |det| = 1: shears of the identity plus an optional
    /// row swap.
    pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntegerMatrix {
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..8 {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c: i64 = *[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap();
            let source = rows[j].clone();
            for (dst, s) in rows[i].iter_mut().zip(&source) {
                *dst += c * s;
            }
        }
        if n > 1 && rng.gen_bool(0.5) {
            rows.swap(0, 1);
        }
        let rows: Vec<LatticeVector> = rows.iter().map(|r| LatticeVector::from_i64(r)).collect();
        IntegerMatrix::from_rows(&rows)
    }
}

#[test]
fn criterion_8_seeded_property_suites() {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seeded::SEED);

    // Dual-basis pairing identity on 500 random unimodular matrices.
    for trial in 0..500 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let m = seeded::random_unimodular(&mut rng, n);
        let basis: Vec<LatticeVector> = (0..n).map(|j| m.column(j)).collect();
        let dual = dual_basis(&basis).unwrap();
        for (i, u) in dual.iter().enumerate() {
            for (j, w) in basis.iter().enumerate() {
                let expected = BigInt::from(i64::from(i == j));
                assert_eq!(u.dot(w), expected, "trial {trial}");
            }
        }
    }

    // Splitting multisets are invariant under lattice automorphisms: 100
    // random transforms spread over the three golden fans.
    let golden = [p2(), p1p1(), f1()];
    for trial in 0..100 {
        let fan = &golden[trial % golden.len()];
        let u = seeded::random_unimodular(&mut rng, 2);
        let transformed = Fan::build(
            2,
            fan.rays().iter().map(|r| u.mul_vec(r)).collect(),
            fan.max_cones().to_vec(),
        )
        .unwrap();
        let mut original: Vec<Vec<BigInt>> = fan
            .walls()
            .unwrap()
            .iter()
            .map(|w| splitting_type(fan, w).unwrap().multiset())
            .collect();
        let mut image: Vec<Vec<BigInt>> = transformed
            .walls()
            .unwrap()
            .iter()
            .map(|w| splitting_type(&transformed, w).unwrap().multiset())
            .collect();
        original.sort();
        image.sort();
        assert_eq!(original, image, "trial {trial}");
    }

    // solve_unimodular round-trip on 500 random systems with |x_i| <= 100.
    for trial in 0..500 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let m = seeded::random_unimodular(&mut rng, n);
        let x = LatticeVector::from_i64(
            &(0..n).map(|_| rng.gen_range(-100..=100)).collect::<Vec<i64>>(),
        );
        let b = m.mul_vec(&x);
        assert_eq!(m.solve_unimodular(&b).unwrap(), x, "trial {trial}");
    }

    finish(
        8,
        started,
        Duration::from_secs(10),
        "seed-pinned suites: 500 dual-basis pairings, 100 automorphism transports, 500 solves",
    );
}
