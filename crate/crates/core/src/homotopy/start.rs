//! Total-degree start systems and the straight-line homotopy.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::homotopy::numeric::NumericSystem;

/// A homotopy `H(x, t)` tracked from `t = 0` to `t = 1`.
///
/// Implementations are evaluated at the remaining parameter `r = 1 - t`
/// rather than at `t`: roots whose paths only settle for `1 - t` far below
/// machine epsilon stay reachable that way.
pub trait Homotopy: Sync {
    fn nvars(&self) -> usize;

    /// `H`, `dH/dx` and `dH/dr` at `r = 1 - t`.
    fn evaluate(
        &self,
        x: &[Complex64],
        r: f64,
    ) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>);
}

/// `G_k(x) = x_k^{d_k} - 1`, with `d_k` the total degree of the k-th target
/// polynomial, scaled by the unit complex number `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalDegreeStart {
    degrees: Vec<u32>,
    gamma: Complex64,
}

impl TotalDegreeStart {
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Bezout number `prod d_k`.
    pub fn num_paths(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).product()
    }

    /// The `index`-th tuple of roots of unity, last coordinate varying
    /// fastest.
    pub fn start_solution(&self, index: usize) -> Vec<Complex64> {
        let mut rest = index;
        let mut x = vec![Complex64::new(0.0, 0.0); self.degrees.len()];
        for (k, &d) in self.degrees.iter().enumerate().rev() {
            let r = rest % d as usize;
            rest /= d as usize;
            x[k] = Complex64::from_polar(1.0, TAU * r as f64 / f64::from(d));
        }
        x
    }

    pub fn start_solutions(&self) -> Vec<Vec<Complex64>> {
        (0..self.num_paths())
            .map(|i| self.start_solution(i))
            .collect()
    }

    fn eval_with_jacobian(&self, x: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        self.degrees
            .iter()
            .zip(x)
            .map(|(&d, xk)| {
                let lower = xk.powu(d - 1);
                (lower * xk - 1.0, lower * f64::from(d))
            })
            .unzip()
    }
}

/// Start system and start solutions for `system`.
pub fn total_degree_start(
    system: &NumericSystem,
    gamma: Complex64,
) -> Result<(TotalDegreeStart, Vec<Vec<Complex64>>)> {
    let degrees = system.total_degrees();
    if let Some(k) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::ZeroDegreePolynomial(k));
    }
    let start = TotalDegreeStart { degrees, gamma };
    let solutions = start.start_solutions();
    Ok((start, solutions))
}

/// `H(x, t) = (1 - t) * gamma * G(x) + t * F(x)`.
#[derive(Debug, Clone, Copy)]
pub struct StraightLineHomotopy<'a> {
    pub target: &'a NumericSystem,
    pub start: &'a TotalDegreeStart,
}

impl Homotopy for StraightLineHomotopy<'_> {
    fn nvars(&self) -> usize {
        self.target.nvars()
    }

    fn evaluate(
        &self,
        x: &[Complex64],
        r: f64,
    ) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>) {
        let n = self.nvars();
        let gamma = self.start.gamma;
        let (f, mut jac) = self.target.eval_with_jacobian(x);
        let (g, dg) = self.start.eval_with_jacobian(x);
        let t = 1.0 - r;
        jac *= Complex64::new(t, 0.0);
        for k in 0..n {
            jac[(k, k)] += gamma * r * dg[k];
        }
        let h = DVector::from_iterator(n, (0..n).map(|k| gamma * r * g[k] + f[k] * t));
        let hr = DVector::from_iterator(n, (0..n).map(|k| gamma * g[k] - f[k]));
        (h, jac, hr)
    }
}
