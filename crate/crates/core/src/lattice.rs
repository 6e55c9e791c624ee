//! Lattice point configurations, liftings and exact hull volumes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{affine_rank, to_big};

/// An ordered list of distinct integer points in `Z^d`.
///
/// The index order ties points to lifting values, vertex colors and the
/// exponents of the polynomials built from the configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::PointDimension {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::RepeatedPoint {
                    first: w[0],
                    second: w[1],
                });
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &[i64] {
        &self.points[index]
    }

    pub fn affine_rank(&self) -> usize {
        affine_rank(&self.points)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_rank() == self.dim
    }

    /// Reorders the points so that new index `i` holds old point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            dim: self.dim,
            points: perm.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Pointwise sum `{a + b}`, deduplicated and sorted lexicographically.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                what: "Minkowski summand dimension",
                expected: self.dim,
                found: other.dim,
            });
        }
        let sums: BTreeSet<Vec<i64>> = self
            .points
            .iter()
            .flat_map(|a| {
                other
                    .points
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            points: sums.into_iter().collect(),
        })
    }
}

/// Integer heights, one per point of the paired configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lifting {
    pub values: Vec<i64>,
}

impl Lifting {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_matches(&self, config: &PointConfiguration) -> Result<()> {
        if self.values.len() != config.len() {
            return Err(Error::DimensionMismatch {
                what: "lifting length",
                expected: config.len(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            values: perm.iter().map(|&i| self.values[i]).collect(),
        }
    }
}

impl From<Vec<i64>> for Lifting {
    fn from(values: Vec<i64>) -> Self {
        Self { values }
    }
}

/// All lattice points of the dilated standard simplex `k * Delta_d`, in
/// ascending lexicographic order.
pub fn simplex_lattice_points(d: usize, k: u32) -> Result<PointConfiguration> {
    fn fill(prefix: &mut Vec<i64>, remaining: usize, budget: i64, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=budget {
            prefix.push(v);
            fill(prefix, remaining - 1, budget - v, out);
            prefix.pop();
        }
    }
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut points = Vec::new();
    fill(&mut Vec::with_capacity(d), d, i64::from(k), &mut points);
    PointConfiguration::new(d, points)
}

/// Exact Euclidean volume of `conv(A)` for `d` in `{1, 2, 3}`.
pub fn hull_volume(config: &PointConfiguration) -> Result<BigRational> {
    if !(1..=3).contains(&config.dim()) {
        return Err(Error::UnsupportedDimension(config.dim()));
    }
    if config.is_empty() || !config.is_full_dimensional() {
        return Err(Error::NonFullDimensional);
    }
    let big: Vec<Vec<BigInt>> = config
        .points()
        .iter()
        .map(|p| p.iter().map(|&v| to_big(v)).collect())
        .collect();
    Ok(match config.dim() {
        1 => {
            let lo = big.iter().map(|p| &p[0]).min().unwrap();
            let hi = big.iter().map(|p| &p[0]).max().unwrap();
            BigRational::from_integer(hi - lo)
        }
        2 => {
            let pts: Vec<[BigInt; 2]> = big
                .into_iter()
                .map(|p| [p[0].clone(), p[1].clone()])
                .collect();
            let hull = convex_hull_2d(&pts);
            let mut twice = BigInt::zero();
            for i in 0..hull.len() {
                let (a, b) = (&pts[hull[i]], &pts[hull[(i + 1) % hull.len()]]);
                twice += &a[0] * &b[1] - &a[1] * &b[0];
            }
            BigRational::new(twice.abs(), BigInt::from(2))
        }
        _ => volume_3d(&big),
    })
}

fn cross_2d(o: &[BigInt; 2], a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Indices of the strict hull vertices in counter-clockwise order
/// (Andrew's monotone chain). Collinear boundary points are dropped.
pub(crate) fn convex_hull_2d(points: &[[BigInt; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() < 3 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2 {
                let n = hull.len();
                if cross_2d(&points[hull[n - 2]], &points[hull[n - 1]], &points[i]).is_positive() {
                    break;
                }
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

fn sub3(a: &[BigInt], b: &[BigInt]) -> [BigInt; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross3(u: &[BigInt; 3], v: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn dot3(u: &[BigInt; 3], v: &[BigInt; 3]) -> BigInt {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

/// Volume of a full-dimensional 3-polytope: enumerate supporting planes
/// through point triples, fan-triangulate each facet polygon and cone it
/// from a fixed hull point.
fn volume_3d(points: &[Vec<BigInt>]) -> BigRational {
    let n = points.len();
    let apex = &points[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut six_vol = BigInt::zero();
    for i in 0..n {
        for j in i + 1..n {
            let u = sub3(&points[j], &points[i]);
            for k in j + 1..n {
                let normal = cross3(&u, &sub3(&points[k], &points[i]));
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                let (mut pos, mut neg) = (false, false);
                let mut on_plane = Vec::new();
                for (l, p) in points.iter().enumerate() {
                    let side = dot3(&normal, &sub3(p, &points[i]));
                    if side.is_positive() {
                        pos = true;
                    } else if side.is_negative() {
                        neg = true;
                    } else {
                        on_plane.push(l);
                    }
                    if pos && neg {
                        break;
                    }
                }
                if (pos && neg) || !seen.insert(on_plane.clone()) {
                    continue;
                }
                // project along the largest normal component
                let axis = (0..3).max_by_key(|&c| normal[c].abs()).unwrap();
                let (c0, c1) = ((axis + 1) % 3, (axis + 2) % 3);
                let flat: Vec<[BigInt; 2]> = on_plane
                    .iter()
                    .map(|&l| [points[l][c0].clone(), points[l][c1].clone()])
                    .collect();
                let ring: Vec<usize> = convex_hull_2d(&flat)
                    .into_iter()
                    .map(|h| on_plane[h])
                    .collect();
                for t in 1..ring.len().saturating_sub(1) {
                    let a = sub3(&points[ring[0]], apex);
                    let b = sub3(&points[ring[t]], apex);
                    let c = sub3(&points[ring[t + 1]], apex);
                    six_vol += dot3(&a, &cross3(&b, &c)).abs();
                }
            }
        }
    }
    BigRational::new(six_vol, BigInt::from(6))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simplex_points_are_lexicographic() {
        let a = simplex_lattice_points(2, 3).unwrap();
        let expected: Vec<Vec<i64>> = vec![
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 0],
            vec![1, 1],
            vec![1, 2],
            vec![2, 0],
            vec![2, 1],
            vec![3, 0],
        ];
        assert_eq!(a.points(), expected.as_slice());
        let seg = simplex_lattice_points(1, 2).unwrap();
        assert_eq!(seg.points(), &[vec![0], vec![1], vec![2]]);
        let unit = simplex_lattice_points(2, 1).unwrap();
        assert_eq!(unit.points(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn simplex_point_count_is_binomial() {
        for d in 1..=4usize {
            for k in 0..=5u32 {
                let n = simplex_lattice_points(d, k).unwrap().len();
                let binom = num_integer::binomial(d + k as usize, d);
                assert_eq!(n, binom, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn repeated_points_rejected() {
        let err = PointConfiguration::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::RepeatedPoint {
                first: 0,
                second: 2
            }
        );
        assert!(matches!(
            PointConfiguration::new(2, vec![vec![0]]),
            Err(Error::PointDimension { .. })
        ));
    }

    #[test]
    fn volumes() {
        let a = simplex_lattice_points(2, 3).unwrap();
        assert_eq!(hull_volume(&a).unwrap(), rat(9, 2));
        let square =
            PointConfiguration::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
                .unwrap();
        assert_eq!(hull_volume(&square).unwrap(), rat(1, 1));
        let doubled = a.minkowski_sum(&a).unwrap();
        assert_eq!(hull_volume(&doubled).unwrap(), rat(18, 1));
        let seg = simplex_lattice_points(1, 4).unwrap();
        assert_eq!(hull_volume(&seg).unwrap(), rat(4, 1));
    }

    #[test]
    fn volumes_3d() {
        let t = simplex_lattice_points(3, 2).unwrap();
        assert_eq!(hull_volume(&t).unwrap(), rat(8, 6));
        let mut cube = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    cube.push(vec![x, y, z]);
                }
            }
        }
        let cube = PointConfiguration::new(3, cube).unwrap();
        assert_eq!(hull_volume(&cube).unwrap(), rat(8, 1));
        // octahedron |x|+|y|+|z| <= 1 has volume 4/3
        let octa = PointConfiguration::new(
            3,
            vec![
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
                vec![0, 0, 1],
                vec![0, 0, -1],
                vec![0, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(hull_volume(&octa).unwrap(), rat(4, 3));
    }

    #[test]
    fn lower_dimensional_hull_rejected() {
        let line = PointConfiguration::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(hull_volume(&line), Err(Error::NonFullDimensional));
        let flat =
            PointConfiguration::new(3, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(hull_volume(&flat), Err(Error::NonFullDimensional));
    }
}
