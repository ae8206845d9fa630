//! Group-sparse denoising with binary weights.
//!
//! Minimizes
//!
//! ```text
//! 0.5 * ||y - x||^2 + lambda * sum over n of value(group_norm(x, b, n))
//! ```
//!
//! where `group_norm(x, b, n)` is the Euclidean norm of the block of `x`
//! starting at `n`, masked by the binary pattern `b`, and the sum runs
//! over block starts `0..N`. Samples outside `[0, N)` read as zero.
//!
//! The minimizer is found by repeatedly replacing the penalty with its
//! quadratic surrogate at the current iterate, which reduces each pass to
//! the diagonal update `x[n] = y[n] / (1 + lambda * r[n])`. The objective
//! never increases across passes. With the non-convexity parameter below
//! `1 / (active_count * lambda)` the objective is strictly convex, so the
//! iteration converges to the unique global minimizer regardless of the
//! sweep order.

use crate::error::{Error, Result};
use crate::pattern::GroupPattern;
use crate::penalty::Penalty;

/// Default iteration cap.
pub const DEFAULT_MAX_ITERS: usize = 200;
/// Default relative-change stopping threshold.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Default support threshold: samples whose magnitude falls to or below
/// this leave the active set and are returned as exact zeros.
pub const DEFAULT_SUPPORT_EPS: f64 = 1e-10;

/// Everything the solver needs besides the observation itself.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub lambda: f64,
    pub penalty: Penalty,
    pub pattern: GroupPattern,
    pub max_iters: usize,
    pub tol: f64,
    pub support_eps: f64,
}

impl SolverConfig {
    pub fn new(lambda: f64, penalty: Penalty, pattern: GroupPattern) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and positive, got {lambda}"
            )));
        }
        Ok(SolverConfig {
            lambda,
            penalty,
            pattern,
            max_iters: DEFAULT_MAX_ITERS,
            tol: DEFAULT_TOL,
            support_eps: DEFAULT_SUPPORT_EPS,
        })
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Result<Self> {
        if max_iters == 0 {
            return Err(Error::InvalidParameter(
                "max_iters must be at least 1".into(),
            ));
        }
        self.max_iters = max_iters;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tol must be finite and positive, got {tol}"
            )));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_support_eps(mut self, eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "support_eps must be finite and nonnegative, got {eps}"
            )));
        }
        self.support_eps = eps;
        Ok(self)
    }

    /// True when the non-convexity parameter is past the strict-convexity
    /// bound `1 / (active_count * lambda)`. The solver still runs, but the
    /// objective may have multiple minimizers; callers should surface this
    /// as a warning.
    pub fn exceeds_convexity_bound(&self) -> bool {
        let bound = 1.0 / (self.pattern.active_count() as f64 * self.lambda);
        self.penalty.nonconvexity() > bound
    }
}

/// Solver output.
#[derive(Debug, Clone)]
pub struct DenoiseResult {
    /// The estimate; same length as the input.
    pub x: Vec<f64>,
    /// Number of full passes performed.
    pub iters: usize,
    /// Objective value before any pass and after each pass; nonincreasing.
    pub objective_history: Vec<f64>,
    /// Whether the relative-change threshold was met within `max_iters`.
    pub converged: bool,
}

/// Euclidean norm of the pattern-masked block of `x` starting at `start`.
/// Indices outside `[0, x.len())` read as zero.
pub fn group_norm(x: &[f64], pattern: &GroupPattern, start: isize) -> f64 {
    let n = x.len() as isize;
    let mut sum = 0.0;
    for &j in pattern.ones() {
        let idx = start + j as isize;
        if idx >= 0 && idx < n {
            let v = x[idx as usize];
            sum += v * v;
        }
    }
    sum.sqrt()
}

/// Objective value at the candidate `x` for the observation `y`.
pub fn objective(y: &[f64], x: &[f64], cfg: &SolverConfig) -> Result<f64> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            actual: x.len(),
        });
    }
    check_signal_fits(y.len(), &cfg.pattern)?;
    let fidelity: f64 = y
        .iter()
        .zip(x)
        .map(|(&yn, &xn)| {
            let d = yn - xn;
            d * d
        })
        .sum::<f64>()
        * 0.5;
    let mut penalty_sum = 0.0;
    for n in 0..x.len() {
        penalty_sum += cfg.penalty.value(group_norm(x, &cfg.pattern, n as isize));
    }
    Ok(fidelity + cfg.lambda * penalty_sum)
}

/// Denoises `y`, starting the iteration from `y` itself. Starting at the
/// observation keeps every sample that can move away from zero, so the
/// surrogate's singularity at zero never locks a live sample.
pub fn denoise(y: &[f64], cfg: &SolverConfig) -> Result<DenoiseResult> {
    denoise_with_init(y, y, cfg)
}

/// Denoises `y` from an explicit starting point. The active set is taken
/// from the nonzero samples of `x0`; samples outside it are never updated
/// and return as zero. `x0` must cover the support of the wanted
/// minimizer (the default `x0 = y` always does).
pub fn denoise_with_init(y: &[f64], x0: &[f64], cfg: &SolverConfig) -> Result<DenoiseResult> {
    if x0.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            actual: x0.len(),
        });
    }
    for (index, &v) in y.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    for (index, &v) in x0.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    check_signal_fits(y.len(), &cfg.pattern)?;

    let lambda = cfg.lambda;
    let ones = cfg.pattern.ones();
    let mut x = x0.to_vec();
    let mut support: Vec<usize> = (0..x.len()).filter(|&n| x[n] != 0.0).collect();
    let mut history = Vec::with_capacity(cfg.max_iters + 1);
    history.push(objective(y, &x, cfg)?);

    let mut iters = 0;
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        if support.is_empty() {
            converged = true;
            break;
        }
        let prev_max = support.iter().map(|&n| x[n].abs()).fold(0.0, f64::max);
        let mut max_delta = 0.0_f64;
        for &n in &support {
            // Sum the surrogate weights of every block that both covers
            // sample n with a unit weight and starts inside the signal.
            // Each such block covers n itself, so its norm is at least
            // |x[n]| > 0 and the denominator never vanishes.
            let mut r = 0.0;
            for &j in ones {
                if j > n {
                    break;
                }
                let norm = group_norm(&x, &cfg.pattern, (n - j) as isize);
                r += 1.0 / cfg.penalty.mm_denominator(norm);
            }
            let updated = y[n] / (1.0 + lambda * r);
            max_delta = max_delta.max((updated - x[n]).abs());
            x[n] = updated;
        }
        iters += 1;
        support = (0..x.len())
            .filter(|&n| x[n].abs() > cfg.support_eps)
            .collect();
        history.push(objective(y, &x, cfg)?);
        if max_delta / (prev_max + f64::MIN_POSITIVE) < cfg.tol {
            converged = true;
            break;
        }
    }

    // Samples that left the active set return as exact zeros.
    for v in &mut x {
        if v.abs() <= cfg.support_eps {
            *v = 0.0;
        }
    }

    Ok(DenoiseResult {
        x,
        iters,
        objective_history: history,
        converged,
    })
}

fn check_signal_fits(n: usize, pattern: &GroupPattern) -> Result<()> {
    if n < pattern.stored_len() {
        return Err(Error::InvalidPattern(format!(
            "pattern spans {} samples but the signal has only {n}",
            pattern.stored_len()
        )));
    }
    Ok(())
}
