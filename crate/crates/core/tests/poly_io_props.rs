use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use wronski::io::{from_str, to_string, Facets, Json};
use wronski::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn polynomial(nvars: usize) -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..5, nvars), rational()), 0..8).prop_map(
        move |terms| ExactPolynomial::from_terms(variable_names(nvars - 1, true), terms).unwrap(),
    )
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rational(), nvars)
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
    ]
}

fn solution() -> impl Strategy<Value = Solution> {
    (
        prop::collection::vec(
            (finite(), finite()).prop_map(|(re, im)| Complex64::new(re, im)),
            1..4,
        ),
        finite().prop_map(f64::abs),
        any::<(bool, bool, bool)>(),
        1usize..4,
    )
        .prop_map(
            |(coords, residual, (singular, real, in_torus), multiplicity)| Solution {
                coords,
                residual,
                singular,
                real,
                in_torus,
                multiplicity,
            },
        )
}

proptest! {
    #[test]
    fn display_parses_back(p in polynomial(3)) {
        let text = p.to_string();
        prop_assert_eq!(ExactPolynomial::parse(&text, p.vars()).unwrap(), p);
    }

    #[test]
    fn ring_operations_agree_with_evaluation(p in polynomial(3), q in polynomial(3), x in point(3)) {
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_agrees_with_evaluation(p in polynomial(3), x in point(3)) {
        let fixed = p.substitute(2, &x[2]);
        prop_assert_eq!(fixed.eval(&x[..2]), p.eval(&x));
    }

    #[test]
    fn product_degree_adds(p in polynomial(3), q in polynomial(3)) {
        let pq = &p * &q;
        match (p.total_degree(), q.total_degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(pq.total_degree(), Some(a + b)),
            _ => prop_assert!(pq.is_zero()),
        }
    }

    #[test]
    fn polynomial_json_round_trip(p in polynomial(3)) {
        prop_assert_eq!(from_str::<ExactPolynomial>(&to_string(&p)).unwrap(), p);
    }

    #[test]
    fn system_json_round_trip(ps in prop::collection::vec(polynomial(2), 1..4)) {
        let system = PolynomialSystem::new(ps).unwrap();
        prop_assert_eq!(from_str::<PolynomialSystem>(&to_string(&system)).unwrap(), system);
    }

    #[test]
    fn rational_json_round_trip(n in any::<i128>(), d in 1u64..) {
        let q = BigRational::new(n.into(), d.into());
        prop_assert_eq!(BigRational::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn points_and_lifting_json_round_trip(
        pts in prop::collection::btree_set(prop::collection::vec(-100i64..100, 3), 1..12),
        heights in prop::collection::vec(any::<i64>(), 0..12),
    ) {
        let config = PointConfiguration::new(3, pts.into_iter().collect()).unwrap();
        prop_assert_eq!(from_str::<PointConfiguration>(&to_string(&config)).unwrap(), config);
        let lifting = Lifting::new(heights);
        prop_assert_eq!(from_str::<Lifting>(&to_string(&lifting)).unwrap(), lifting);
    }

    #[test]
    fn facets_json_round_trip(facets in prop::collection::vec(prop::collection::vec(0usize..50, 3), 1..10)) {
        let f = Facets(facets);
        prop_assert_eq!(from_str::<Facets>(&to_string(&f)).unwrap().0, f.0);
    }

    #[test]
    fn solutions_json_round_trip_bit_exact(
        solutions in prop::collection::vec(solution(), 0..5),
        counts in any::<[u16; 6]>(),
        seed in any::<u64>(),
    ) {
        let r = SolveResult {
            solutions,
            paths_tracked: counts[0].into(),
            paths_converged: counts[1].into(),
            paths_diverged: counts[2].into(),
            paths_failed: counts[3].into(),
            paths_filtered: counts[4].into(),
            paths_retracked: counts[5].into(),
            seed,
        };
        let back = from_str::<SolveResult>(&to_string(&r)).unwrap();
        for (a, b) in back.solutions.iter().zip(&r.solutions) {
            for (x, y) in a.coords.iter().zip(&b.coords) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
        prop_assert_eq!(back, r);
    }

    #[test]
    fn settings_json_round_trip(tol in 1e-14..1e-6f64, seed in any::<u64>(), torus in any::<bool>()) {
        let s = TrackerSettings { newton_tol: tol, ..TrackerSettings::default() }.with_seed(seed).only_torus(torus);
        prop_assert_eq!(from_str::<TrackerSettings>(&to_string(&s)).unwrap(), s);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let err =
        from_str::<PointConfiguration>(r#"{"d": 1, "points": [[0]], "extra": 1}"#).unwrap_err();
    assert!(matches!(err, Error::Schema { .. }), "{err:?}");
    let err = from_str::<TrackerSettings>(r#"{"newton_tol": -1}"#).unwrap_err();
    assert!(matches!(err, Error::Settings(_)), "{err:?}");
}
