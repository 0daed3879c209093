//! Cross-module invariants of the difference pipeline, checked on seeded
//! random instances: agreement of the three independent computation routes,
//! exactness in the plane, recovery after adding the subtrahend back, and
//! certification of every redundancy decision.

use nalgebra::DVector;

use zonokit::diff::{minkdiff, minkdiff_recursive, DiffStatus};
use zonokit::facet::{minkdiff_hrep, zonotope_hrep};
use zonokit::lp::{is_empty, minimal_hrep};
use zonokit::oracle::{hpoly_support, minkdiff_vertex_oracle, zonotope_in_hpoly, Support};
use zonokit::sample::{instance_rng, random_unit_vector, random_zonotope};
use zonokit::set::{HPolytope, Zonotope};

fn finite_support(hp: &HPolytope, dir: &DVector<f64>) -> f64 {
    match hpoly_support(hp, dir).unwrap() {
        Support::Finite(v) => v,
        Support::Unbounded => panic!("unexpected unbounded support"),
    }
}

/// Max support gap of `a` beyond `b` over seeded directions (positive means
/// `a` sticks out of `b` somewhere).
fn max_support_gap(a: &HPolytope, b: &HPolytope, dirs: &[DVector<f64>]) -> f64 {
    dirs.iter()
        .map(|d| finite_support(a, d) - finite_support(b, d))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn three_routes_agree_on_random_instances() {
    let mut checked_nonempty = 0;
    let mut checked_empty = 0;
    for instance in 0..60 {
        let mut rng = instance_rng(0xA11CE, instance);
        let n = 2 + (instance % 2);
        let pm = n + (instance % 3);
        let ps = 1 + (instance % 4);
        let zm = random_zonotope(n, pm as f64 / n as f64, 3.0, &mut rng);
        let zs = random_zonotope(n, ps as f64 / n as f64, 1.0, &mut rng);

        let direct = minkdiff(&zm, &zs).unwrap();
        let recursive = minkdiff_recursive(&zm, &zs).unwrap();
        let oracle = minkdiff_vertex_oracle(&zm, &zs).unwrap();

        let rec_empty = is_empty(&recursive).unwrap();
        let oracle_empty = is_empty(&oracle).unwrap();
        assert_eq!(direct.is_empty(), rec_empty, "instance {instance}");
        assert_eq!(direct.is_empty(), oracle_empty, "instance {instance}");

        if direct.is_empty() {
            checked_empty += 1;
            continue;
        }
        checked_nonempty += 1;
        let exact = &direct.exact.as_ref().unwrap().kept;
        let dirs: Vec<DVector<f64>> = (0..40).map(|_| random_unit_vector(n, &mut rng)).collect();
        for d in &dirs {
            let a = finite_support(exact, d);
            let b = finite_support(&recursive, d);
            let c = finite_support(&oracle, d);
            assert!((a - b).abs() <= 1e-7, "instance {instance}: direct {a} vs recursive {b}");
            assert!((a - c).abs() <= 1e-7, "instance {instance}: direct {a} vs oracle {c}");
        }
    }
    assert!(checked_nonempty >= 10 && checked_empty >= 3);
}

#[test]
fn planar_results_are_exact() {
    let mut nonempty = 0;
    for instance in 0..80 {
        let mut rng = instance_rng(0xBEE, instance);
        let pm = 2 + (instance % 5);
        let zm = random_zonotope(2, pm as f64 / 2.0, 3.0, &mut rng);
        let zs = random_zonotope(2, 1.0 + (instance % 3) as f64 / 2.0, 1.0, &mut rng);
        let result = minkdiff(&zm, &zs).unwrap();
        if result.is_empty() {
            continue;
        }
        nonempty += 1;
        let approx = result.approx.as_ref().unwrap();
        let exact = &result.exact.as_ref().unwrap().kept;

        // generator representation reproduces the exact set in the plane
        for _ in 0..100 {
            let d = random_unit_vector(2, &mut rng);
            let a = approx.support(&d).unwrap();
            let b = finite_support(exact, &d);
            assert!((a - b).abs() <= 1e-7, "instance {instance}: {a} vs {b}");
        }

        // adding the subtrahend back stays inside the minuend
        let merged = zm.merge_aligned(1e-9);
        let (zm_hrep, _) = zonotope_hrep(&merged).unwrap();
        let sum = approx.minkowski_sum(&zs).unwrap();
        assert!(zonotope_in_hpoly(&sum, &zm_hrep).unwrap(), "instance {instance}");

        // stretching factors stay in (0, 1]
        for &m in &result.mu {
            assert!(m > 0.0 && m <= 1.0, "instance {instance}: mu {m}");
        }
    }
    assert!(nonempty >= 20);
}

#[test]
fn difference_recovers_added_set() {
    // with zm = a + zs the difference reproduces a + zs after adding zs back
    for instance in 0..40 {
        let mut rng = instance_rng(0xD1FF, instance);
        let n = 2 + (instance % 2);
        let a = random_zonotope(n, 1.0 + (instance % 3) as f64 / n as f64, 2.0, &mut rng);
        let zs = random_zonotope(n, 1.0, 1.0, &mut rng);
        let zm = a.minkowski_sum(&zs).unwrap();

        let result = minkdiff(&zm, &zs).unwrap();
        assert_eq!(result.status, DiffStatus::Nonempty, "instance {instance}");
        let exact = &result.exact.as_ref().unwrap().kept;
        for _ in 0..50 {
            let d = random_unit_vector(n, &mut rng);
            let diff_support = finite_support(exact, &d);
            let lhs = diff_support + zs.support(&d).unwrap();
            let rhs = zm.support(&d).unwrap();
            assert!((lhs - rhs).abs() <= 1e-7, "instance {instance}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn redundancy_removal_is_certified() {
    let mut scanned_rows = 0;
    for instance in 0..40 {
        let mut rng = instance_rng(0x5EED, instance);
        let n = 2 + (instance % 2);
        let zm = random_zonotope(n, 2.0, 3.0, &mut rng);
        let zs = random_zonotope(n, 1.0, 1.0, &mut rng);
        let (hp, _) = minkdiff_hrep(&zm.merge_aligned(1e-9), &zs.merge_aligned(1e-9)).unwrap();
        if is_empty(&hp).unwrap() {
            continue;
        }
        let minimal = minimal_hrep(&hp).unwrap();
        scanned_rows += minimal.redundant_row_indices.len();
        let dirs: Vec<DVector<f64>> = (0..50).map(|_| random_unit_vector(n, &mut rng)).collect();
        // dropping the redundant rows must not enlarge the set anywhere
        let gap = max_support_gap(&minimal.kept, &hp, &dirs);
        assert!(gap <= 1e-7, "instance {instance}: support grew by {gap}");
    }
    assert!(scanned_rows > 0, "no redundant rows exercised");
}

#[test]
fn emptiness_matches_vertex_oracle() {
    let mut empties = 0;
    for instance in 0..60 {
        let mut rng = instance_rng(0xE417, instance);
        let n = 2 + (instance % 2);
        let zm = random_zonotope(n, 1.0, 2.0, &mut rng);
        let zs = random_zonotope(n, 1.0, 1.5, &mut rng);
        let direct = minkdiff(&zm, &zs).unwrap();
        let oracle = minkdiff_vertex_oracle(&zm, &zs).unwrap();
        assert_eq!(direct.is_empty(), is_empty(&oracle).unwrap(), "instance {instance}");
        if direct.is_empty() {
            empties += 1;
        }
    }
    assert!(empties >= 5, "too few empty cases to be meaningful: {empties}");
}

#[test]
fn hrep_self_containment_is_tight() {
    for instance in 0..20 {
        let mut rng = instance_rng(0x7157, instance);
        let n = 2 + (instance % 3);
        let z = random_zonotope(n, 1.5, 2.0, &mut rng);
        let (hp, _) = zonotope_hrep(&z.merge_aligned(1e-9)).unwrap();
        assert!(zonotope_in_hpoly(&z, &hp).unwrap());
        // shrinking any single offset by 1e-3 breaks containment
        let tightened = HPolytope::new(
            hp.normals().clone(),
            hp.offsets().map(|d| d - 1e-3),
        )
        .unwrap();
        assert!(!zonotope_in_hpoly(&z, &tightened).unwrap());
    }
}

#[test]
fn translated_intersection_matches_stacked_reference() {
    // the closed-form intersection of two translated copies equals the
    // stacked pair of translated systems after redundancy removal
    for instance in 0..20 {
        let mut rng = instance_rng(0x1A7E, instance);
        let z = random_zonotope(2, 2.0, 2.0, &mut rng).merge_aligned(1e-9);
        let shift = random_unit_vector(2, &mut rng) * 0.4;
        let closed = zonokit::facet::translated_intersection_hrep(
            z.center(),
            z.generators(),
            &shift,
        )
        .unwrap();
        let (plain, _) = zonotope_hrep(&z).unwrap();
        let minus = plain.translate(&(-&shift)).unwrap();
        let plus = plain.translate(&shift).unwrap();
        let stacked = HPolytope::stacked(&[&minus, &plus]).unwrap();
        if is_empty(&stacked).unwrap() {
            continue;
        }
        let reference = minimal_hrep(&stacked).unwrap().kept;
        let dirs: Vec<DVector<f64>> = (0..40).map(|_| random_unit_vector(2, &mut rng)).collect();
        for d in &dirs {
            let a = finite_support(&closed, d);
            let b = finite_support(&reference, d);
            assert!((a - b).abs() <= 1e-7, "instance {instance}: {a} vs {b}");
        }
    }
}

#[test]
fn example_difference_polytope_queries() {
    // hexagon-shaped difference of the worked 2-D example
    let zm = Zonotope::from_parts(&[1.0, 1.0], &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
    let zs = Zonotope::from_parts(&[0.0, 0.0], &[&[0.5, 0.0], &[0.0, 0.5]]).unwrap();
    let result = minkdiff(&zm, &zs).unwrap();
    let exact = &result.exact.as_ref().unwrap().kept;
    let approx = result.approx.as_ref().unwrap();

    // LP maximum of x1 + x2 equals the sign-point oracle maximum (= 5)
    let objective = DVector::from_column_slice(&[1.0, 1.0]);
    let lp = zonokit::lp::LpProblem::new(
        objective.clone(),
        exact.normals().clone(),
        exact.offsets().clone(),
    )
    .unwrap();
    let optimum = match zonokit::lp::solve_lp(&lp).unwrap() {
        zonokit::lp::LpOutcome::Optimal { value, .. } => value,
        other => panic!("expected optimal, got {other:?}"),
    };
    let oracle_max = zonokit::oracle::zonotope_points(approx)
        .unwrap()
        .points
        .iter()
        .map(|p| objective.dot(p))
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((optimum - oracle_max).abs() < 1e-9);
    assert!((optimum - 5.0).abs() < 1e-9);

    // support in (1, 0) matches the frozen offset, the center is a member,
    // and adding the subtrahend back stays inside the minuend
    let e1 = DVector::from_column_slice(&[1.0, 0.0]);
    assert!((finite_support(exact, &e1) - 2.5).abs() < 1e-9);
    assert!(zonokit::lp::contains_point(exact, &DVector::from_column_slice(&[1.0, 1.0])).unwrap());
    let (zm_hrep, _) = zonotope_hrep(&zm).unwrap();
    let sum = approx.minkowski_sum(&zs).unwrap();
    assert!(zonotope_in_hpoly(&sum, &zm_hrep).unwrap());
}

#[test]
fn vertex_translation_agrees_with_direct_formula() {
    // the subtrahend-vertex intersection equals the direct offsets
    let zm = Zonotope::from_parts(&[1.0, 1.0], &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
    let zs = Zonotope::from_parts(&[0.0, 0.0], &[&[0.5, 0.0], &[0.0, 0.5]]).unwrap();
    let (direct, _) = minkdiff_hrep(&zm, &zs).unwrap();
    let stacked = minkdiff_vertex_oracle(&zm, &zs).unwrap();
    let mut rng = instance_rng(3, 0);
    for _ in 0..60 {
        let d = random_unit_vector(2, &mut rng);
        let a = finite_support(&direct, &d);
        let b = finite_support(&stacked, &d);
        assert!((a - b).abs() <= 1e-9);
    }
}
