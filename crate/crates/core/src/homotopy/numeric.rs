//! Floating-point images of exact polynomial systems.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::PolynomialSystem;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericTerm {
    pub coeff: Complex64,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericPolynomial {
    pub terms: Vec<NumericTerm>,
}

impl NumericPolynomial {
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exps.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff * monomial(x, &t.exps))
            .sum()
    }

    /// `sum |c| prod max(|x_j|, 1)^a_j`, the scale of the value at `x`.
    /// Coordinates are floored at one so that roots at or near the origin
    /// are not measured against vanishing monomials.
    pub fn magnitude(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let m: f64 = x
                    .iter()
                    .zip(&t.exps)
                    .map(|(xi, &e)| xi.norm().max(1.0).powi(e as i32))
                    .product();
                t.coeff.norm() * m
            })
            .sum()
    }
}

fn monomial(x: &[Complex64], exps: &[u32]) -> Complex64 {
    x.iter()
        .zip(exps)
        .fold(Complex64::new(1.0, 0.0), |acc, (xi, &e)| acc * xi.powu(e))
}

/// A square system with complex double coefficients. Keeps the exact system
/// it was rounded from, when there is one.
#[derive(Debug, Clone)]
pub struct NumericSystem {
    nvars: usize,
    polys: Vec<NumericPolynomial>,
    source: Option<PolynomialSystem>,
}

impl NumericSystem {
    pub fn new(nvars: usize, polys: Vec<NumericPolynomial>) -> Result<Self> {
        if polys.len() != nvars {
            return Err(Error::NotSquare {
                polys: polys.len(),
                vars: nvars,
            });
        }
        for t in polys.iter().flat_map(|p| &p.terms) {
            if t.exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    what: "exponent vector length",
                    expected: nvars,
                    found: t.exps.len(),
                });
            }
            if !(t.coeff.re.is_finite() && t.coeff.im.is_finite()) {
                return Err(Error::NonFiniteCoefficient);
            }
        }
        Ok(Self {
            nvars,
            polys,
            source: None,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[NumericPolynomial] {
        &self.polys
    }

    pub fn source(&self) -> Option<&PolynomialSystem> {
        self.source.as_ref()
    }

    pub fn total_degrees(&self) -> Vec<u32> {
        self.polys
            .iter()
            .map(NumericPolynomial::total_degree)
            .collect()
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.polys.iter().map(|p| p.eval(x)).collect()
    }

    /// Values and Jacobian at `x`.
    pub fn eval_with_jacobian(&self, x: &[Complex64]) -> (Vec<Complex64>, DMatrix<Complex64>) {
        let n = self.nvars;
        let mut values = vec![Complex64::zero(); self.polys.len()];
        let mut jac = DMatrix::zeros(self.polys.len(), n);
        let mut powers = vec![Complex64::zero(); n];
        for (i, p) in self.polys.iter().enumerate() {
            for t in &p.terms {
                for v in 0..n {
                    powers[v] = x[v].powu(t.exps[v]);
                }
                values[i] += t.coeff * powers.iter().product::<Complex64>();
                for v in 0..n {
                    let e = t.exps[v];
                    if e == 0 {
                        continue;
                    }
                    let mut d = t.coeff * f64::from(e) * x[v].powu(e - 1);
                    for (w, pw) in powers.iter().enumerate() {
                        if w != v {
                            d *= pw;
                        }
                    }
                    jac[(i, v)] += d;
                }
            }
        }
        (values, jac)
    }

    /// Largest relative backward error `|f_i(x)| / magnitude_i(x)` over the
    /// polynomials.
    pub fn relative_residual(&self, x: &[Complex64]) -> f64 {
        self.polys
            .iter()
            .map(|p| {
                let scale = p.magnitude(x);
                let v = p.eval(x).norm();
                if scale > 0.0 {
                    v / scale
                } else {
                    v
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Rounds every coefficient of a square exact system to the nearest double.
pub fn to_numeric(system: &PolynomialSystem) -> Result<NumericSystem> {
    if !system.is_square() {
        return Err(Error::NotSquare {
            polys: system.len(),
            vars: system.vars().len(),
        });
    }
    let polys = system
        .polys()
        .iter()
        .map(|p| {
            let terms = p
                .terms()
                .map(|(m, c)| {
                    let re = c
                        .to_f64()
                        .filter(|v| v.is_finite())
                        .ok_or(Error::NonFiniteCoefficient)?;
                    Ok(NumericTerm {
                        coeff: Complex64::new(re, 0.0),
                        exps: m.exponents().to_vec(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(NumericPolynomial { terms })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut numeric = NumericSystem::new(system.vars().len(), polys)?;
    numeric.source = Some(system.clone());
    Ok(numeric)
}
