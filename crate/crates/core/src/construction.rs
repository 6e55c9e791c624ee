//! Wronski polynomials, Wronski systems and the Wronski center ideal of a
//! foldable regular triangulation.
//!
//! All constructions take the point configuration, the lifting and the
//! vertex coloring separately. Color classes are always ordered by their
//! smallest point index, and coefficient vectors index classes in that
//! order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::foldable::VertexColoring;
use crate::lattice::{hull_volume, Lifting, PointConfiguration};
use crate::poly::{variable_names, ExactPolynomial, PolynomialSystem};

/// One coefficient vector of length `d+1` per polynomial of a Wronski
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientChoice {
    pub rows: Vec<Vec<BigRational>>,
}

impl CoefficientChoice {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        Self { rows }
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Color classes of every point, ordered by smallest member.
fn ordered_classes(
    config: &PointConfiguration,
    coloring: &VertexColoring,
) -> Result<Vec<Vec<usize>>> {
    let d = config.dim();
    if let Some(j) = (0..config.len()).find(|&j| coloring.color(j).is_none()) {
        return Err(Error::UncoloredPoint(j));
    }
    let classes = coloring.partition();
    if classes.len() != d + 1 {
        return Err(Error::ColorCount {
            expected: d + 1,
            found: classes.len(),
        });
    }
    Ok(classes)
}

fn lifted_exponents(config: &PointConfiguration, lifting: &Lifting, j: usize) -> Result<Vec<u32>> {
    let to_exp =
        |value: i64| u32::try_from(value).map_err(|_| Error::NegativeExponent { index: j, value });
    config
        .point(j)
        .iter()
        .map(|&v| to_exp(v))
        .chain(std::iter::once(to_exp(lifting.values[j])))
        .collect()
}

/// Generators `sum_{color(a_j) = i} s^{lambda_j} x^{a_j}`, one per color
/// class, over the variables `x1..xd, s`.
pub fn wronski_center_ideal(
    config: &PointConfiguration,
    lifting: &Lifting,
    coloring: &VertexColoring,
) -> Result<PolynomialSystem> {
    lifting.check_matches(config)?;
    let vars = variable_names(config.dim(), true);
    let gens = ordered_classes(config, coloring)?
        .iter()
        .map(|class| {
            let terms = class
                .iter()
                .map(|&j| Ok((lifted_exponents(config, lifting, j)?, BigRational::one())))
                .collect::<Result<Vec<_>>>()?;
            ExactPolynomial::from_terms(vars.clone(), terms)
        })
        .collect::<Result<Vec<_>>>()?;
    PolynomialSystem::new(gens)
}

/// `sum_i c_i * generator_i`, with `s` kept symbolic when `s0` is `None`
/// and substituted otherwise.
pub fn wronski_polynomial(
    config: &PointConfiguration,
    lifting: &Lifting,
    coloring: &VertexColoring,
    c: &[BigRational],
    s0: Option<&BigRational>,
) -> Result<ExactPolynomial> {
    let d = config.dim();
    if c.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            what: "coefficient vector length",
            expected: d + 1,
            found: c.len(),
        });
    }
    let ideal = wronski_center_ideal(config, lifting, coloring)?;
    Ok(combine(&ideal, c, s0))
}

fn combine(
    ideal: &PolynomialSystem,
    c: &[BigRational],
    s0: Option<&BigRational>,
) -> ExactPolynomial {
    let s_index = ideal.vars().len() - 1;
    let mut acc = ExactPolynomial::zero(ideal.vars().to_vec());
    for (g, ci) in ideal.polys().iter().zip(c) {
        acc = &acc + &g.scale(ci);
    }
    match s0 {
        Some(v) => acc.substitute(s_index, v),
        None => acc,
    }
}

/// `d` Wronski polynomials in `x1..xd` at `s = s0`.
pub fn wronski_system(
    config: &PointConfiguration,
    lifting: &Lifting,
    coloring: &VertexColoring,
    c: &CoefficientChoice,
    s0: &BigRational,
) -> Result<PolynomialSystem> {
    let d = config.dim();
    if c.rows.len() != d {
        return Err(Error::DimensionMismatch {
            what: "number of coefficient vectors",
            expected: d,
            found: c.rows.len(),
        });
    }
    if let Some(row) = c.rows.iter().find(|r| r.len() != d + 1) {
        return Err(Error::DimensionMismatch {
            what: "coefficient vector length",
            expected: d + 1,
            found: row.len(),
        });
    }
    let ideal = wronski_center_ideal(config, lifting, coloring)?;
    PolynomialSystem::new(
        c.rows
            .iter()
            .map(|row| combine(&ideal, row, Some(s0)))
            .collect(),
    )
}

/// `d! * vol(conv(A))`: the generic number of torus solutions of a system
/// whose Newton polytopes all equal `conv(A)`.
pub fn kushnirenko_bound(config: &PointConfiguration) -> Result<BigInt> {
    let vol = hull_volume(config)?;
    let factorial: BigInt = (1..=config.dim()).map(BigInt::from).product();
    let scaled = vol * BigRational::from_integer(factorial);
    debug_assert!(
        scaled.is_integer(),
        "lattice polytope with fractional normalized volume"
    );
    Ok(scaled.to_integer())
}

/// The exponent vectors of the terms of `poly`.
pub fn newton_polytope(poly: &ExactPolynomial) -> Result<PointConfiguration> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points = poly
        .terms()
        .rev()
        .map(|(m, _)| m.exponents().iter().map(|&e| i64::from(e)).collect())
        .collect();
    PointConfiguration::new(poly.nvars(), points)
}
