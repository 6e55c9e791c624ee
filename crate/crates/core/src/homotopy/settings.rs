use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances and step control for path tracking.
///
/// Norm-based tolerances are relative: a quantity is compared against
/// `tol * (1 + |x|)` where `|x|` is the max-norm of the current point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerSettings {
    /// Corrector convergence tolerance while tracking.
    pub newton_tol: f64,
    /// Newton step tolerance for endpoint refinement; also the bound on the
    /// relative residual of reported nonsingular solutions.
    pub refine_tol: f64,
    /// Corrector iterations per step.
    pub max_newton_iters: usize,
    pub max_refine_iters: usize,
    pub initial_step: f64,
    pub max_step: f64,
    /// Smallest step, relative to the remaining `1 - t`.
    pub min_step: f64,
    pub step_expand: f64,
    pub step_shrink: f64,
    /// Consecutive accepted steps before the step grows.
    pub expand_after: usize,
    pub max_steps: usize,
    /// Tracking stops at `t = 1 - end_gap`; the endpoint is then refined by
    /// Newton on the target system. Values far below machine epsilon are
    /// meaningful since paths are followed in `1 - t`.
    pub end_gap: f64,
    /// Largest relative move allowed during endpoint refinement.
    pub endpoint_jump: f64,
    pub divergence_norm: f64,
    pub dedupe_tol: f64,
    pub real_tol: f64,
    pub torus_tol: f64,
    pub singular_cond: f64,
    pub seed: u64,
    /// Drop endpoints with a coordinate of modulus at most `torus_tol`.
    pub only_torus: bool,
    /// Rounds of re-tracking for paths that land on an already reached
    /// nonsingular endpoint.
    pub retrack_rounds: usize,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        Self {
            newton_tol: 1e-10,
            refine_tol: 1e-12,
            max_newton_iters: 3,
            max_refine_iters: 20,
            initial_step: 0.05,
            max_step: 0.1,
            min_step: 1e-14,
            step_expand: 2.0,
            step_shrink: 0.5,
            expand_after: 3,
            max_steps: 20_000,
            end_gap: 1e-30,
            endpoint_jump: 1e-2,
            divergence_norm: 1e8,
            dedupe_tol: 1e-8,
            real_tol: 1e-8,
            torus_tol: 1e-8,
            singular_cond: 1e12,
            seed: 0,
            only_torus: false,
            retrack_rounds: 3,
        }
    }
}

impl TrackerSettings {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn only_torus(mut self, only_torus: bool) -> Self {
        self.only_torus = only_torus;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("newton_tol", self.newton_tol),
            ("refine_tol", self.refine_tol),
            ("initial_step", self.initial_step),
            ("max_step", self.max_step),
            ("min_step", self.min_step),
            ("end_gap", self.end_gap),
            ("endpoint_jump", self.endpoint_jump),
            ("divergence_norm", self.divergence_norm),
            ("dedupe_tol", self.dedupe_tol),
            ("real_tol", self.real_tol),
            ("torus_tol", self.torus_tol),
            ("singular_cond", self.singular_cond),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Settings(format!(
                "{name} must be positive and finite"
            )));
        }
        if self.min_step >= self.initial_step || self.initial_step > self.max_step {
            return Err(Error::Settings(
                "need min_step < initial_step <= max_step".to_string(),
            ));
        }
        if !(self.step_shrink > 0.0 && self.step_shrink < 1.0) || self.step_expand <= 1.0 {
            return Err(Error::Settings(
                "need 0 < step_shrink < 1 < step_expand".to_string(),
            ));
        }
        if self.max_newton_iters == 0 || self.max_refine_iters == 0 || self.max_steps == 0 {
            return Err(Error::Settings(
                "iteration limits must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// Same settings with all step sizes divided by `factor`.
    pub(crate) fn cautious(&self, factor: f64) -> Self {
        let mut s = self.clone();
        s.initial_step /= factor;
        s.max_step /= factor;
        s.max_steps = (s.max_steps as f64 * factor) as usize;
        s
    }
}
