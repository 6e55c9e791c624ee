use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wronski::*;

fn configuration(
    d: usize,
    max_points: usize,
    side: i64,
) -> impl Strategy<Value = PointConfiguration> {
    prop::collection::btree_set(prop::collection::vec(0..side, d), d + 1..=max_points)
        .prop_map(move |pts| PointConfiguration::new(d, pts.into_iter().collect()).unwrap())
        .prop_filter("full-dimensional", |c| c.is_full_dimensional())
}

fn lifted(
    d: usize,
    max_points: usize,
    side: i64,
) -> impl Strategy<Value = (PointConfiguration, Lifting)> {
    configuration(d, max_points, side).prop_flat_map(|c| {
        let n = c.len();
        (
            Just(c),
            prop::collection::vec(-30i64..30, n).prop_map(Lifting::new),
        )
    })
}

fn height(lifting: &Lifting, j: usize) -> BigRational {
    BigRational::from_integer(lifting.values[j].into())
}

fn check_witnesses(
    config: &PointConfiguration,
    lifting: &Lifting,
    sub: &Subdivision,
) -> Result<(), TestCaseError> {
    for cell in &sub.cells {
        for (j, p) in config.points().iter().enumerate() {
            let w = cell.witness.eval(p);
            if cell.points.contains(&j) {
                prop_assert_eq!(w, height(lifting, j), "cell {:?} point {}", cell.points, j);
            } else {
                prop_assert!(w < height(lifting, j), "cell {:?} point {}", cell.points, j);
            }
        }
    }
    Ok(())
}

fn cell_volume_sum(config: &PointConfiguration, sub: &Subdivision) -> BigRational {
    sub.cells
        .iter()
        .map(|c| {
            let pts = c.points.iter().map(|&j| config.point(j).to_vec()).collect();
            hull_volume(&PointConfiguration::new(config.dim(), pts).unwrap()).unwrap()
        })
        .sum()
}

proptest! {
    #[test]
    fn planar_witnesses_and_covering((config, lifting) in lifted(2, 10, 7)) {
        let sub = regular_subdivision(&config, &lifting).unwrap();
        check_witnesses(&config, &lifting, &sub)?;
        prop_assert_eq!(cell_volume_sum(&config, &sub), hull_volume(&config).unwrap());
    }

    #[test]
    fn spatial_witnesses_and_covering((config, lifting) in lifted(3, 8, 4)) {
        let sub = regular_subdivision(&config, &lifting).unwrap();
        check_witnesses(&config, &lifting, &sub)?;
        prop_assert_eq!(cell_volume_sum(&config, &sub), hull_volume(&config).unwrap());
    }

    #[test]
    fn cells_do_not_depend_on_point_order(
        (config, lifting, perm) in lifted(2, 9, 6).prop_flat_map(|(c, l)| {
            let n = c.len();
            (Just(c), Just(l), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let original = regular_subdivision(&config, &lifting).unwrap();
        let permuted = regular_subdivision(&config.permuted(&perm), &lifting.permuted(&perm)).unwrap();
        let mapped: BTreeSet<Vec<usize>> = permuted
            .cell_indices()
            .into_iter()
            .map(|cell| {
                let mut c: Vec<usize> = cell.into_iter().map(|i| perm[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        let expected: BTreeSet<Vec<usize>> = original.cell_indices().into_iter().collect();
        prop_assert_eq!(mapped, expected);
    }

    #[test]
    fn foldable_structure((config, lifting) in lifted(2, 10, 6)) {
        let sub = regular_subdivision(&config, &lifting).unwrap();
        prop_assume!(sub.is_simplicial());
        let complex = as_simplicial_complex(&sub).unwrap();
        let volume_sum: BigInt = complex.normalized_volumes().iter().sum();
        // normalized volume of the hull is d! times its Euclidean volume
        let twice = hull_volume(&config).unwrap() * BigRational::from_integer(2.into());
        prop_assert_eq!(BigRational::from_integer(volume_sum.clone()), twice);
        match facet_bipartition(&complex) {
            Ok(bip) => {
                prop_assert!(bip.is_valid_for(&complex));
                let coloring = vertex_coloring(&complex).unwrap();
                prop_assert!(coloring.is_proper_for(&complex));
                prop_assert_eq!(coloring.num_colors(), 3);
                let sigma = signature(&complex, &bip);
                prop_assert_eq!(BigInt::from(sigma) % 2, volume_sum % 2);
                prop_assert_eq!(signature(&complex, &bip.swapped()), sigma);
            }
            Err(cycle) => prop_assert!(cycle.verify(&complex)),
        }
    }

    #[test]
    fn simplex_point_count(d in 1usize..4, k in 0u32..6) {
        let config = simplex_lattice_points(d, k).unwrap();
        // C(k + d, d)
        let count = (1..=d as u64).fold(1u64, |acc, i| acc * (u64::from(k) + i) / i);
        prop_assert_eq!(config.len() as u64, count);
        let mut sorted = config.points().to_vec();
        sorted.sort();
        prop_assert_eq!(sorted.as_slice(), config.points());
        prop_assert!(config.points().iter().all(|p| p.iter().all(|&v| v >= 0) && p.iter().sum::<i64>() <= i64::from(k)));
    }
}

#[test]
fn convex_quadratic_lifting_is_unimodular() {
    // a strictly convex quadratic form gives a unimodular triangulation
    let config = simplex_lattice_points(2, 2).unwrap();
    let lifting = Lifting::new(
        config
            .points()
            .iter()
            .map(|p| p[0] * p[0] + p[1] * p[1] + (p[0] + p[1]).pow(2))
            .collect(),
    );
    let sub = regular_subdivision(&config, &lifting).unwrap();
    let complex = as_simplicial_complex(&sub).unwrap();
    assert_eq!(complex.len(), 4);
    assert!(complex
        .normalized_volumes()
        .iter()
        .all(|v| *v == BigInt::from(1)));
    let bip = facet_bipartition(&complex).unwrap();
    assert_eq!(signature(&complex, &bip), 2);
}
