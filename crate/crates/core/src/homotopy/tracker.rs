//! Adaptive predictor-corrector path tracking.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::homotopy::settings::TrackerSettings;
use crate::homotopy::start::Homotopy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergeReason {
    NormExceeded,
    StepUnderflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailReason {
    StepBudget,
    /// Newton at `t = 1` neither converged nor reduced the residual.
    Refinement,
}

/// How endpoint refinement at `t = 1` behaved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub converged: bool,
    pub iterations: usize,
    /// Newton contracted linearly rather than quadratically.
    pub linear: bool,
    /// Size of the last Newton step relative to `1 + |x|`.
    pub last_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathOutcome {
    Converged {
        endpoint: Vec<Complex64>,
        steps: usize,
        refinement: Refinement,
    },
    Diverged {
        t: f64,
        steps: usize,
        reason: DivergeReason,
    },
    Failed {
        t: f64,
        steps: usize,
        reason: FailReason,
    },
}

impl PathOutcome {
    pub fn endpoint(&self) -> Option<&[Complex64]> {
        match self {
            PathOutcome::Converged { endpoint, .. } => Some(endpoint),
            _ => None,
        }
    }
}

pub(crate) fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Tracks one path of `h` from `x0` at `t = 0` to `t = 1`.
///
/// The path is followed in the remaining parameter `r = 1 - t`. Each step
/// predicts with classical Runge-Kutta on the path ODE
/// `dx/dr = -H_x^{-1} H_r` and corrects with at most `max_newton_iters`
/// Newton iterations, which must contract and reach `newton_tol`. Rejected
/// steps shrink by `step_shrink`; `expand_after` consecutive acceptances
/// grow the step by `step_expand`. Steps never exceed half of the remaining
/// `r`, so `r` decreases geometrically to `end_gap` and the endpoint is then
/// refined by Newton on the target system.
pub fn track_path<H: Homotopy>(h: &H, x0: &[Complex64], settings: &TrackerSettings) -> PathOutcome {
    let mut x = DVector::from_column_slice(x0);
    let mut r: f64 = 1.0;
    let mut step = settings.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    while r > settings.end_gap {
        if steps == settings.max_steps {
            return PathOutcome::Failed {
                t: 1.0 - r,
                steps,
                reason: FailReason::StepBudget,
            };
        }
        steps += 1;
        let dr = step.min(0.5 * r);
        let r_next = r - dr;
        let corrected = predict(h, &x, r, -dr)
            .and_then(|p| correct(h, p, r_next, settings.newton_tol, settings.max_newton_iters));
        match corrected {
            Some(next) => {
                x = next;
                r = r_next;
                streak += 1;
                if streak >= settings.expand_after {
                    step = (step * settings.step_expand).min(settings.max_step);
                    streak = 0;
                }
                if max_norm(&x) > settings.divergence_norm {
                    return PathOutcome::Diverged {
                        t: 1.0 - r,
                        steps,
                        reason: DivergeReason::NormExceeded,
                    };
                }
            }
            None => {
                streak = 0;
                step = dr * settings.step_shrink;
                if step < settings.min_step * r {
                    // Paths ending at singular roots can stall close to
                    // t = 1; those are finished by Newton on the target.
                    if r <= settings.newton_tol.sqrt() {
                        if let Some(outcome) = finish(h, x.clone(), steps, settings) {
                            return outcome;
                        }
                    }
                    return PathOutcome::Diverged {
                        t: 1.0 - r,
                        steps,
                        reason: DivergeReason::StepUnderflow,
                    };
                }
            }
        }
    }
    finish(h, x, steps, settings).unwrap_or(PathOutcome::Failed {
        t: 1.0 - r,
        steps,
        reason: FailReason::Refinement,
    })
}

/// Refines at `t = 1`. Without convergence to `refine_tol` the endpoint is
/// kept only if the last Newton step was below `sqrt(newton_tol)`. The
/// refined point must stay within `endpoint_jump * (1 + |x|)` of the
/// tracked one.
fn finish<H: Homotopy>(
    h: &H,
    tracked: DVector<Complex64>,
    steps: usize,
    settings: &TrackerSettings,
) -> Option<PathOutcome> {
    let (x, refinement) = refine(h, tracked.clone(), settings)?;
    if !refinement.converged && refinement.last_step > settings.newton_tol.sqrt() {
        return None;
    }
    if max_norm(&x) > settings.divergence_norm || x.iter().any(|z| !z.is_finite()) {
        return None;
    }
    if max_norm(&(&x - &tracked)) > settings.endpoint_jump * (1.0 + max_norm(&tracked)) {
        return None;
    }
    Some(PathOutcome::Converged {
        endpoint: x.as_slice().to_vec(),
        steps,
        refinement,
    })
}

fn tangent<H: Homotopy>(h: &H, x: &DVector<Complex64>, r: f64) -> Option<DVector<Complex64>> {
    let (_, jac, hr) = h.evaluate(x.as_slice(), r);
    jac.lu()
        .solve(&hr)
        .map(|v| -v)
        .filter(|v| v.iter().all(|z| z.is_finite()))
}

fn predict<H: Homotopy>(
    h: &H,
    x: &DVector<Complex64>,
    r: f64,
    dr: f64,
) -> Option<DVector<Complex64>> {
    let half = Complex64::new(dr / 2.0, 0.0);
    let full = Complex64::new(dr, 0.0);
    let k1 = tangent(h, x, r)?;
    let k2 = tangent(h, &(x + &k1 * half), r + dr / 2.0)?;
    let k3 = tangent(h, &(x + &k2 * half), r + dr / 2.0)?;
    let k4 = tangent(h, &(x + &k3 * full), r + dr)?;
    let sixth = Complex64::new(dr / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    Some(x + (k1 + k2 * two + k3 * two + k4) * sixth)
}

fn correct<H: Homotopy>(
    h: &H,
    mut x: DVector<Complex64>,
    r: f64,
    tol: f64,
    max_iters: usize,
) -> Option<DVector<Complex64>> {
    let mut previous = f64::INFINITY;
    for _ in 0..max_iters {
        let (v, jac, _) = h.evaluate(x.as_slice(), r);
        let delta = jac.lu().solve(&v)?;
        x -= &delta;
        let size = max_norm(&delta);
        if !size.is_finite() {
            return None;
        }
        if size <= tol * (1.0 + max_norm(&x)) {
            return Some(x);
        }
        if size > 0.5 * previous {
            return None;
        }
        previous = size;
    }
    None
}

/// Newton on `H(., 1)` until the step falls below `refine_tol`.
pub(crate) fn refine<H: Homotopy>(
    h: &H,
    mut x: DVector<Complex64>,
    settings: &TrackerSettings,
) -> Option<(DVector<Complex64>, Refinement)> {
    let mut previous: Option<f64> = None;
    let mut refinement = Refinement {
        converged: false,
        iterations: 0,
        linear: false,
        last_step: f64::INFINITY,
    };
    for it in 1..=settings.max_refine_iters {
        let (v, jac, _) = h.evaluate(x.as_slice(), 0.0);
        let Some(delta) = jac.lu().solve(&v) else {
            refinement.linear = true;
            break;
        };
        x -= &delta;
        refinement.iterations = it;
        let size = max_norm(&delta);
        if !size.is_finite() {
            return None;
        }
        let scale = 1.0 + max_norm(&x);
        refinement.last_step = size / scale;
        if let Some(p) = previous {
            // quadratic convergence makes the ratio negligible once the
            // step is this small
            if p < 1e-6 * scale && size > 0.1 * p {
                refinement.linear = true;
            }
        }
        if size <= settings.refine_tol * scale {
            refinement.converged = true;
            break;
        }
        previous = Some(size);
    }
    Some((x, refinement))
}
