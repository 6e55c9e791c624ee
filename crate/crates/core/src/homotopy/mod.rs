//! Homotopy continuation for square polynomial systems.
//!
//! [`solve`] tracks every path of a total-degree homotopy
//! `H(x, t) = (1 - t) * gamma * G(x) + t * F(x)` with `gamma` drawn from
//! the seeded generator, refines and classifies the endpoints, and returns
//! them deduplicated in a canonical order. The result is independent of how
//! paths are scheduled.

pub mod mixed_volume;
pub mod numeric;
pub mod settings;
pub mod start;
pub mod tracker;

use std::cmp::Ordering;
use std::f64::consts::TAU;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::PolynomialSystem;

pub use mixed_volume::mixed_volume;
pub use numeric::{to_numeric, NumericPolynomial, NumericSystem, NumericTerm};
pub use settings::TrackerSettings;
pub use start::{total_degree_start, Homotopy, StraightLineHomotopy, TotalDegreeStart};
pub use tracker::{track_path, DivergeReason, FailReason, PathOutcome, Refinement};

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub coords: Vec<Complex64>,
    /// Relative backward error, see [`NumericSystem::relative_residual`].
    pub residual: f64,
    pub singular: bool,
    pub real: bool,
    pub in_torus: bool,
    /// Number of paths that ended here.
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveResult {
    pub solutions: Vec<Solution>,
    pub paths_tracked: usize,
    pub paths_converged: usize,
    pub paths_diverged: usize,
    pub paths_failed: usize,
    /// Converged endpoints dropped because they left the torus.
    pub paths_filtered: usize,
    /// Paths tracked a second time after landing on a shared endpoint.
    pub paths_retracked: usize,
    pub seed: u64,
}

impl SolveResult {
    pub fn nonsingular(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(|s| !s.singular)
    }

    pub fn singular_count(&self) -> usize {
        self.solutions.iter().filter(|s| s.singular).count()
    }

    pub fn real_count(&self) -> usize {
        self.solutions.iter().filter(|s| s.real).count()
    }
}

/// How paths are distributed over threads. Both give identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    #[default]
    Parallel,
}

/// Unit complex number drawn from the seeded generator.
pub fn gamma_for_seed(seed: u64) -> Complex64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Complex64::from_polar(1.0, TAU * rng.random::<f64>())
}

pub fn solve(system: &PolynomialSystem, settings: &TrackerSettings) -> Result<SolveResult> {
    solve_with(system, settings, Execution::default())
}

pub fn solve_with(
    system: &PolynomialSystem,
    settings: &TrackerSettings,
    execution: Execution,
) -> Result<SolveResult> {
    solve_numeric(&to_numeric(system)?, settings, execution)
}

pub fn solve_numeric(
    system: &NumericSystem,
    settings: &TrackerSettings,
    execution: Execution,
) -> Result<SolveResult> {
    settings.validate()?;
    let (start, _) = total_degree_start(system, gamma_for_seed(settings.seed))?;
    let homotopy = StraightLineHomotopy {
        target: system,
        start: &start,
    };
    let all: Vec<usize> = (0..start.num_paths()).collect();
    let track = |s: &TrackerSettings, i: usize| track_path(&homotopy, &start.start_solution(i), s);
    let mut outcomes = run_paths(&all, execution, |i| track(settings, i));

    let mut retracked = 0;
    let mut factor = 1.0;
    for _ in 0..settings.retrack_rounds {
        let classified = classify_all(system, &outcomes, settings);
        let redo = paths_sharing_nonsingular_endpoints(&classified, settings.dedupe_tol);
        if redo.is_empty() {
            break;
        }
        factor *= 4.0;
        let cautious = settings.cautious(factor);
        let again = run_paths(&redo, execution, |i| track(&cautious, i));
        for (&i, o) in redo.iter().zip(again) {
            outcomes[i] = o;
        }
        retracked += redo.len();
    }

    let mut result = SolveResult {
        paths_tracked: outcomes.len(),
        paths_retracked: retracked,
        seed: settings.seed,
        ..SolveResult::default()
    };
    for o in &outcomes {
        match o {
            PathOutcome::Converged { .. } => result.paths_converged += 1,
            PathOutcome::Diverged { .. } => result.paths_diverged += 1,
            PathOutcome::Failed { .. } => result.paths_failed += 1,
        }
    }
    let mut endpoints: Vec<Solution> = classify_all(system, &outcomes, settings)
        .into_iter()
        .flatten()
        .collect();
    if settings.only_torus {
        let before = endpoints.len();
        endpoints.retain(|s| s.in_torus);
        result.paths_filtered = before - endpoints.len();
    }
    result.solutions = dedupe(endpoints, settings.dedupe_tol);
    Ok(result)
}

fn run_paths<F>(indices: &[usize], execution: Execution, f: F) -> Vec<PathOutcome>
where
    F: Fn(usize) -> PathOutcome + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            indices.par_iter().map(|&i| f(i)).collect()
        }
        _ => indices.iter().map(|&i| f(i)).collect(),
    }
}

fn classify_all(
    system: &NumericSystem,
    outcomes: &[PathOutcome],
    settings: &TrackerSettings,
) -> Vec<Option<Solution>> {
    outcomes
        .iter()
        .map(|o| match o {
            PathOutcome::Converged {
                endpoint,
                refinement,
                ..
            } => Some(classify(system, endpoint, refinement, settings)),
            _ => None,
        })
        .collect()
}

fn classify(
    system: &NumericSystem,
    x: &[Complex64],
    refinement: &Refinement,
    settings: &TrackerSettings,
) -> Solution {
    let cond = condition_estimate(system, x);
    Solution {
        coords: x.to_vec(),
        residual: system.relative_residual(x),
        singular: !refinement.converged || refinement.linear || cond > settings.singular_cond,
        real: x.iter().all(|z| z.im.abs() < settings.real_tol),
        in_torus: x.iter().all(|z| z.norm() > settings.torus_tol),
        multiplicity: 1,
    }
}

/// Infinity-norm condition number of the Jacobian after scaling column `j`
/// by `max(|x_j|, 1)` and equilibrating rows.
pub fn condition_estimate(system: &NumericSystem, x: &[Complex64]) -> f64 {
    let (_, mut jac) = system.eval_with_jacobian(x);
    for (j, xj) in x.iter().enumerate() {
        let s = xj.norm().max(1.0);
        jac.column_mut(j).scale_mut(s);
    }
    for mut row in jac.row_iter_mut() {
        let m = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m > 0.0 {
            row.unscale_mut(m);
        }
    }
    let inf_norm = |m: &nalgebra::DMatrix<Complex64>| {
        m.row_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    match jac.clone().try_inverse() {
        Some(inv) => inf_norm(&jac) * inf_norm(&inv),
        None => f64::INFINITY,
    }
}

fn canonical_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Greedy clustering in canonical order; each endpoint joins the first
/// earlier representative within `tol`.
fn cluster(points: &[&[Complex64]], tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| canonical_cmp(points[a], points[b]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match clusters
            .iter_mut()
            .find(|c| distance(points[c[0]], points[i]) < tol)
        {
            Some(c) => c.push(i),
            None => clusters.push(vec![i]),
        }
    }
    clusters
}

fn dedupe(endpoints: Vec<Solution>, tol: f64) -> Vec<Solution> {
    let coords: Vec<&[Complex64]> = endpoints.iter().map(|s| s.coords.as_slice()).collect();
    let mut out: Vec<Solution> = cluster(&coords, tol)
        .into_iter()
        .map(|c| {
            let mut rep = endpoints[c[0]].clone();
            rep.multiplicity = c.len();
            // a nonsingular root attracts exactly one path
            rep.singular |= c.len() > 1;
            rep
        })
        .collect();
    out.sort_by(|a, b| canonical_cmp(&a.coords, &b.coords));
    out
}

/// Path indices whose nonsingular endpoint was reached by another path as
/// well, a symptom of path jumping.
fn paths_sharing_nonsingular_endpoints(classified: &[Option<Solution>], tol: f64) -> Vec<usize> {
    let (indices, coords): (Vec<usize>, Vec<&[Complex64]>) = classified
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            s.as_ref()
                .filter(|s| !s.singular)
                .map(|s| (i, s.coords.as_slice()))
        })
        .unzip();
    let mut redo: Vec<usize> = cluster(&coords, tol)
        .into_iter()
        .filter(|c| c.len() > 1)
        .flatten()
        .map(|k| indices[k])
        .collect();
    redo.sort_unstable();
    redo
}

/// Real parts of the solutions flagged real, in canonical order.
pub fn real_solutions(result: &SolveResult) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = result
        .solutions
        .iter()
        .filter(|s| s.real)
        .map(|s| s.coords.iter().map(|z| z.re).collect())
        .collect();
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    });
    out
}

/// Outcome of checking that no real solution has its `s`-coordinate in the
/// open interval `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SIntervalCheck {
    pub holds: bool,
    /// The `s`-coordinates of all real solutions.
    pub s_values: Vec<f64>,
}

pub fn check_s_interval(result: &SolveResult, s_index: usize) -> SIntervalCheck {
    let s_values: Vec<f64> = real_solutions(result).iter().map(|p| p[s_index]).collect();
    SIntervalCheck {
        holds: s_values.iter().all(|&s| !(s > 0.0 && s < 1.0)),
        s_values,
    }
}

/// One Newton step on the target system from `x`.
pub fn newton_step(system: &NumericSystem, x: &[Complex64]) -> Option<Vec<Complex64>> {
    let (f, jac) = system.eval_with_jacobian(x);
    let delta = jac.lu().solve(&DVector::from_vec(f))?;
    Some(x.iter().zip(delta.iter()).map(|(a, d)| a - d).collect())
}
