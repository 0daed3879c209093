//! Property tests for the closed-form set operations and the facet
//! enumeration laws.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use zonokit::combin::binomial;
use zonokit::facet::{n_cross, zonotope_hrep};
use zonokit::set::Zonotope;
use zonokit::Error;

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, n)
}

fn zonotope(n: usize, p_max: usize) -> impl Strategy<Value = Zonotope> {
    (coords(n), prop::collection::vec(coords(n), 1..=p_max))
        .prop_map(|(c, gs)| {
            Zonotope::new(
                DVector::from_vec(c),
                gs.into_iter().map(DVector::from_vec).collect(),
            )
            .unwrap()
        })
}

fn direction(n: usize) -> impl Strategy<Value = DVector<f64>> {
    coords(n).prop_filter_map("nonzero direction", |v| {
        let d = DVector::from_vec(v);
        (d.norm() > 1e-6).then_some(d)
    })
}

proptest! {
    #[test]
    fn support_is_additive_under_sum(
        a in zonotope(3, 5),
        b in zonotope(3, 5),
        dir in direction(3),
    ) {
        let sum = a.minkowski_sum(&b).unwrap();
        let lhs = sum.support(&dir).unwrap();
        let rhs = a.support(&dir).unwrap() + b.support(&dir).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn support_commutes_with_linear_map(
        z in zonotope(3, 5),
        m_entries in coords(6),
        dir in direction(2),
    ) {
        let m = DMatrix::from_row_slice(2, 3, &m_entries);
        let image = z.linear_map(&m).unwrap();
        let pullback = m.transpose() * &dir;
        prop_assume!(pullback.iter().any(|v| *v != 0.0));
        let lhs = image.support(&dir).unwrap();
        let rhs = z.support(&pullback).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn merge_aligned_preserves_support(z in zonotope(2, 6), seed in 0u64..1u64 << 32) {
        let merged = z.merge_aligned(1e-9);
        let mut rng = zonokit::sample::instance_rng(seed, 0);
        for _ in 0..100 {
            let dir = zonokit::sample::random_unit_vector(2, &mut rng);
            let a = z.support(&dir).unwrap();
            let b = merged.support(&dir).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn support_matches_sign_enumeration(z in zonotope(2, 10), dir in direction(2)) {
        let mut best = f64::NEG_INFINITY;
        for mask in 0..(1u32 << z.num_generators()) {
            let mut x = z.center().clone();
            for (i, g) in z.generators().iter().enumerate() {
                if mask >> i & 1 == 1 { x += g } else { x -= g }
            }
            best = best.max(dir.dot(&x));
        }
        let s = z.support(&dir).unwrap();
        prop_assert!((s - best).abs() <= 1e-12 * (1.0 + s.abs()));
    }

    #[test]
    fn cross_product_is_orthogonal(cols in prop::collection::vec(coords(4), 3)) {
        let h = DMatrix::from_fn(4, 3, |i, j| cols[j][i]);
        let y = n_cross(&h).unwrap();
        for c in 0..3 {
            let col = h.column(c).clone_owned();
            prop_assert!(y.dot(&col).abs() <= 1e-9 * (1.0 + y.norm() * col.norm()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facet_count_law_and_round_trip(z in zonotope(3, 6)) {
        let z = z.merge_aligned(1e-9);
        let (hp, e) = match zonotope_hrep(&z) {
            Ok(out) => out,
            // rank-deficient draws (shrinking drives coordinates to zero)
            Err(Error::DegenerateZonotope(_)) => return Ok(()),
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        };
        let p = z.num_generators();
        prop_assert_eq!(e.diagnostics.degenerate_combinations, 0);
        prop_assert_eq!(hp.num_rows(), 2 * binomial(p, 2));

        // every sign point satisfies the system, every row is achieved
        let points = zonokit::oracle::zonotope_points(&z).unwrap();
        for i in 0..hp.num_rows() {
            let row = hp.normal_row(i);
            let mut best = f64::NEG_INFINITY;
            for x in &points.points {
                let v = row.dot(x);
                prop_assert!(v <= hp.offsets()[i] + 1e-9);
                best = best.max(v);
            }
            prop_assert!(best >= hp.offsets()[i] - 1e-9);
        }
    }
}
