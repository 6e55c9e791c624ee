//! Regular subdivisions induced by liftings, and simplicial complexes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{determinant, simplex_det, to_big};
use crate::lattice::{Lifting, PointConfiguration};

/// Affine function `x -> gradient . x + offset` agreeing with the lifting on
/// a cell and lying strictly below it on every other point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineWitness {
    pub gradient: Vec<BigRational>,
    pub offset: BigRational,
}

impl AffineWitness {
    pub fn eval(&self, point: &[i64]) -> BigRational {
        self.gradient
            .iter()
            .zip(point)
            .fold(self.offset.clone(), |acc, (g, &x)| {
                acc + g * BigRational::from_integer(to_big(x))
            })
    }

    /// Interpolates the lifted points `(a_j, lambda_j)` of an affinely
    /// independent `(d+1)`-subset. `None` if the subset is degenerate.
    fn interpolate(
        config: &PointConfiguration,
        lifting: &Lifting,
        subset: &[usize],
    ) -> Option<Self> {
        let d = config.dim();
        let row = |j: usize| -> Vec<BigInt> {
            std::iter::once(BigInt::from(1))
                .chain(config.point(j).iter().map(|&v| to_big(v)))
                .collect()
        };
        let base: Vec<Vec<BigInt>> = subset.iter().map(|&j| row(j)).collect();
        let den = determinant(base.clone());
        if den.is_zero() {
            return None;
        }
        // Cramer's rule for the unknowns (offset, gradient_1..gradient_d)
        let mut unknowns = Vec::with_capacity(d + 1);
        for col in 0..=d {
            let m: Vec<Vec<BigInt>> = base
                .iter()
                .zip(subset)
                .map(|(r, &j)| {
                    let mut r = r.clone();
                    r[col] = to_big(lifting.values[j]);
                    r
                })
                .collect();
            unknowns.push(BigRational::new(determinant(m), den.clone()));
        }
        let offset = unknowns.remove(0);
        Some(Self {
            gradient: unknowns,
            offset,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Sorted point indices.
    pub points: Vec<usize>,
    pub witness: AffineWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub config: PointConfiguration,
    pub lifting: Lifting,
    /// Sorted lexicographically by point indices.
    pub cells: Vec<Cell>,
}

impl Subdivision {
    pub fn cell_indices(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.points.clone()).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        let d = self.config.dim();
        self.cells.iter().all(|c| c.points.len() == d + 1)
    }
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Cells of the lower hull of the lifted points `(a_j, lambda_j)`.
///
/// Every affinely independent `(d+1)`-subset is interpolated; the subset
/// spans a lower facet iff its affine witness lies weakly below the lifting
/// everywhere. The cell is then the set of points where equality holds, so
/// non-generic liftings produce non-simplicial cells.
pub fn regular_subdivision(config: &PointConfiguration, lifting: &Lifting) -> Result<Subdivision> {
    lifting.check_matches(config)?;
    if !config.is_full_dimensional() {
        return Err(Error::NonFullDimensional);
    }
    let d = config.dim();
    let n = config.len();
    let mut cells: BTreeMap<Vec<usize>, AffineWitness> = BTreeMap::new();
    for_each_subset(n, d + 1, |subset| {
        let Some(witness) = AffineWitness::interpolate(config, lifting, subset) else {
            return;
        };
        let mut cell = Vec::with_capacity(d + 1);
        for k in 0..n {
            let height = BigRational::from_integer(to_big(lifting.values[k]));
            let gap = height - witness.eval(config.point(k));
            if gap.is_negative() {
                return;
            }
            if gap.is_zero() {
                cell.push(k);
            }
        }
        cells.entry(cell).or_insert(witness);
    });
    Ok(Subdivision {
        config: config.clone(),
        lifting: lifting.clone(),
        cells: cells
            .into_iter()
            .map(|(points, witness)| Cell { points, witness })
            .collect(),
    })
}

/// `|det(a_1 - a_0, ..., a_d - a_0)|`, i.e. `d!` times the Euclidean volume.
pub fn normalized_volume(config: &PointConfiguration, facet: &[usize]) -> BigInt {
    let pts: Vec<&[i64]> = facet.iter().map(|&j| config.point(j)).collect();
    simplex_det(&pts)
}

/// A pure simplicial complex on (a subset of) the points of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    config: PointConfiguration,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Facets are stored with sorted indices, in the order given.
    pub fn new(config: PointConfiguration, facets: Vec<Vec<usize>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let d = config.dim();
        let mut sorted = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            let reason = if f.len() != d + 1 {
                Some(format!("expected {} distinct vertices", d + 1))
            } else if let Some(&bad) = f.iter().find(|&&j| j >= config.len()) {
                Some(format!("vertex {bad} out of range"))
            } else if normalized_volume(&config, &f).is_zero() {
                Some("zero volume".to_string())
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::InvalidFacet { facet, reason });
            }
            sorted.push(f);
        }
        Ok(Self {
            config,
            facets: sorted,
        })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn normalized_volumes(&self) -> Vec<BigInt> {
        self.facets
            .iter()
            .map(|f| normalized_volume(&self.config, f))
            .collect()
    }
}

/// Reinterprets the cells of a subdivision as facets. Fails on the first
/// cell with more than `d+1` points.
pub fn as_simplicial_complex(sub: &Subdivision) -> Result<SimplicialComplex> {
    let d = sub.config.dim();
    if let Some(cell) = sub.cells.iter().find(|c| c.points.len() != d + 1) {
        return Err(Error::NonSimplicialCell(cell.points.clone()));
    }
    SimplicialComplex::new(sub.config.clone(), sub.cell_indices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::simplex_lattice_points;

    fn square() -> PointConfiguration {
        PointConfiguration::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    fn cubic_lifting() -> Lifting {
        Lifting::new(vec![12, 3, 0, 0, 8, 1, 0, 9, 5, 15])
    }

    #[test]
    fn subset_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(2, 3, |_| count += 1);
        assert_eq!(count, 0);
    }

    #[test]
    fn square_with_one_raised_corner() {
        let sub = regular_subdivision(&square(), &Lifting::new(vec![0, 0, 0, 1])).unwrap();
        assert_eq!(sub.cell_indices(), vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn flat_lifting_gives_one_cell() {
        let unit = simplex_lattice_points(2, 1).unwrap();
        let sub = regular_subdivision(&unit, &Lifting::new(vec![0, 0, 0])).unwrap();
        assert_eq!(sub.cell_indices(), vec![vec![0, 1, 2]]);
        let flat_square = regular_subdivision(&square(), &Lifting::new(vec![0; 4])).unwrap();
        assert_eq!(flat_square.cell_indices(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            as_simplicial_complex(&flat_square),
            Err(Error::NonSimplicialCell(vec![0, 1, 2, 3]))
        );
    }

    #[test]
    fn cubic_triangulation_contains_printed_facets() {
        let a = simplex_lattice_points(2, 3).unwrap();
        let sub = regular_subdivision(&a, &cubic_lifting()).unwrap();
        let cells = sub.cell_indices();
        assert!(cells.contains(&vec![5, 6, 8]));
        assert!(cells.contains(&vec![5, 7, 8]));
        let complex = as_simplicial_complex(&sub).unwrap();
        let total: BigInt = complex.normalized_volumes().into_iter().sum();
        assert_eq!(total, BigInt::from(9));
    }

    #[test]
    fn witnesses_are_exact() {
        let a = simplex_lattice_points(2, 3).unwrap();
        let lifting = cubic_lifting();
        let sub = regular_subdivision(&a, &lifting).unwrap();
        for cell in &sub.cells {
            for k in 0..a.len() {
                let h = BigRational::from_integer(lifting.values[k].into());
                let w = cell.witness.eval(a.point(k));
                if cell.points.contains(&k) {
                    assert_eq!(w, h);
                } else {
                    assert!(w < h);
                }
            }
        }
    }

    #[test]
    fn errors() {
        let line = PointConfiguration::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(
            regular_subdivision(&line, &Lifting::new(vec![0, 1, 0])),
            Err(Error::NonFullDimensional)
        );
        assert!(matches!(
            regular_subdivision(&square(), &Lifting::new(vec![0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn normalized_volumes() {
        let unit = simplex_lattice_points(2, 1).unwrap();
        assert_eq!(normalized_volume(&unit, &[0, 1, 2]), BigInt::from(1));
        let big = PointConfiguration::new(2, vec![vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(normalized_volume(&big, &[0, 1, 2]), BigInt::from(4));
    }

    #[test]
    fn complex_validation() {
        let unit = simplex_lattice_points(2, 1).unwrap();
        assert_eq!(
            SimplicialComplex::new(unit.clone(), vec![]),
            Err(Error::EmptyComplex)
        );
        assert!(matches!(
            SimplicialComplex::new(unit.clone(), vec![vec![0, 1]]),
            Err(Error::InvalidFacet { .. })
        ));
        assert!(matches!(
            SimplicialComplex::new(unit, vec![vec![0, 1, 7]]),
            Err(Error::InvalidFacet { .. })
        ));
    }
}
