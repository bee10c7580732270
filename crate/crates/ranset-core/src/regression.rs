//! Generalised logistic regression: belief-function outcome models with a
//! third link parameter, lower/upper likelihood fits under inequality
//! constraints, and KKT verification.
//!
//! Links: `p = σ(β₀ + β₁x)` and `q = β₂ e^{−(β₀+β₁x)} σ(β₀ + β₁x)`, so the
//! pair `(p, q)` is a valid binary mass assignment whenever `0 < β₂ ≤ 1`.
//! The constrained maximisation runs a log-barrier over `β₂ ∈ (0, 1)` and
//! the per-point constraints `β₂ + e^{β₀+β₁x_i} ≥ 0`, with a damped-Newton
//! inner loop; KKT residuals certify the result.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::opt;

/// Exponent clamp: beyond this the links saturate and the per-point
/// constraints are numerically inactive.
pub const EXP_CLAMP: f64 = 500.0;

/// One observation; `None` outcome marks a missing label (a vacuous
/// observation contributing nothing to either objective).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegressionSample {
    pub x: f64,
    pub y: Option<bool>,
}

impl RegressionSample {
    pub fn observed(x: f64, y: bool) -> Self {
        RegressionSample { x, y: Some(y) }
    }

    pub fn missing(x: f64) -> Self {
        RegressionSample { x, y: None }
    }
}

/// Link parameters `[β₀, β₁, β₂]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaParams {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl BetaParams {
    pub fn new(beta0: f64, beta1: f64, beta2: f64) -> Self {
        BetaParams {
            beta0,
            beta1,
            beta2,
        }
    }

    fn from_slice(v: &[f64]) -> Self {
        BetaParams::new(v[0], v[1], v[2])
    }
}

/// Which likelihood the fit maximises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitTarget {
    Lower,
    Upper,
}

#[inline]
fn clamp_exponent(t: f64) -> f64 {
    t.clamp(-EXP_CLAMP, EXP_CLAMP)
}

/// `−ln(1 + e^{−t})`, stable in both tails.
#[inline]
fn neg_ln_one_plus_exp_neg(t: f64) -> f64 {
    if t >= 0.0 {
        -libm::log1p(math::exp(-t))
    } else {
        t - libm::log1p(math::exp(t))
    }
}

/// The generalised logit links: `p = σ(t)`, `q = β₂ (1 − σ(t))` with
/// `t = β₀ + β₁ x` (clamped to ±500).
pub fn logit_links(params: &BetaParams, x: f64) -> (f64, f64) {
    let t = clamp_exponent(params.beta0 + params.beta1 * x);
    let p = 1.0 / (1.0 + math::exp(-t));
    let q = params.beta2 * (1.0 - p);
    (p, q)
}

fn observed(data: &[RegressionSample]) -> impl Iterator<Item = (f64, f64)> + '_ {
    data.iter()
        .filter_map(|s| s.y.map(|y| (s.x, if y { 1.0 } else { 0.0 })))
}

/// Lower log-likelihood
/// `Σ_i [ −ln(1+e^{−t_i}) + (1−Y_i)(ln β₂ − t_i) ]` over observed samples;
/// missing samples contribute 0.
pub fn lower_log_likelihood(params: &BetaParams, data: &[RegressionSample]) -> Result<f64> {
    let mut total = 0.0;
    for (x, y) in observed(data) {
        let t = clamp_exponent(params.beta0 + params.beta1 * x);
        if y < 0.5 && params.beta2 <= 0.0 {
            return Err(Error::Degenerate(
                "beta2 <= 0 with a negative outcome gives a -inf lower objective",
            ));
        }
        total += neg_ln_one_plus_exp_neg(t) + (1.0 - y) * (math::ln(params.beta2) - t);
    }
    Ok(total)
}

/// Upper log-likelihood `Σ_i [ Y_i ln(1−q_i) + (1−Y_i) ln(1−p_i) ]` over
/// observed samples; missing samples contribute `ln 1 = 0`.
pub fn upper_log_likelihood(params: &BetaParams, data: &[RegressionSample]) -> Result<f64> {
    if params.beta2 < 0.0 || params.beta2 > 1.0 {
        return Err(Error::Degenerate("upper objective needs beta2 in [0, 1]"));
    }
    let mut total = 0.0;
    for (x, y) in observed(data) {
        let t = clamp_exponent(params.beta0 + params.beta1 * x);
        let p = 1.0 / (1.0 + math::exp(-t));
        if y >= 0.5 {
            total += libm::log1p(-params.beta2 * (1.0 - p));
        } else {
            // ln(1−p) computed stably.
            total += neg_ln_one_plus_exp_neg(t) - t;
        }
    }
    Ok(total)
}

/// Analytic gradient of the chosen objective at `params`.
pub fn objective_gradient(
    target: FitTarget,
    params: &BetaParams,
    data: &[RegressionSample],
) -> [f64; 3] {
    let mut g = [0.0; 3];
    for (x, y) in observed(data) {
        let t = clamp_exponent(params.beta0 + params.beta1 * x);
        let p = 1.0 / (1.0 + math::exp(-t));
        match target {
            FitTarget::Lower => {
                let d = (1.0 - p) - (1.0 - y);
                g[0] += d;
                g[1] += d * x;
                g[2] += (1.0 - y) / params.beta2;
            }
            FitTarget::Upper => {
                let q = params.beta2 * (1.0 - p);
                let d = if y >= 0.5 {
                    params.beta2 * p * (1.0 - p) / (1.0 - q)
                } else {
                    -p
                };
                g[0] += d;
                g[1] += d * x;
                if y >= 0.5 {
                    g[2] += -(1.0 - p) / (1.0 - q);
                }
            }
        }
    }
    g
}

fn objective_value(
    target: FitTarget,
    params: &BetaParams,
    data: &[RegressionSample],
) -> Result<f64> {
    match target {
        FitTarget::Lower => lower_log_likelihood(params, data),
        FitTarget::Upper => upper_log_likelihood(params, data),
    }
}

/// Per-condition KKT residual report for the constrained problem
/// `max f(β)` s.t. `g₀ = β₂ − 1 ≤ 0`, `g_i = −β₂ − e^{t_i} ≤ 0`.
///
/// Stationarity follows the textbook convention `∇f = Σ μ_i ∇g_i` with
/// `μ ≥ 0` for a maximisation over `g ≤ 0` constraints.
#[derive(Clone, Debug)]
pub struct KktReport {
    /// Residuals of the three stationarity equations.
    pub stationarity: [f64; 3],
    /// Largest primal-feasibility violation, `max(g, 0)`.
    pub primal: f64,
    /// Largest dual-feasibility violation, `max(−μ, 0)`.
    pub dual: f64,
    /// Largest complementary-slackness product magnitude.
    pub slackness: f64,
    /// Max absolute violation across all conditions.
    pub max_residual: f64,
}

/// Evaluates stationarity, primal and dual feasibility and complementary
/// slackness for the given multipliers (`mu0` for `β₂ ≤ 1`, `mu[i]` per
/// training point).
pub fn kkt_residuals(
    target: FitTarget,
    params: &BetaParams,
    mu0: f64,
    mu: &[f64],
    data: &[RegressionSample],
) -> KktReport {
    let grad = objective_gradient(target, params, data);
    let mut st = [grad[0], grad[1], grad[2] - mu0];
    let mut primal = math::max(params.beta2 - 1.0, 0.0);
    let mut dual = math::max(-mu0, 0.0);
    let mut slack = math::abs(mu0 * (params.beta2 - 1.0));
    for (sample, &mu_i) in data.iter().zip(mu) {
        let t = clamp_exponent(params.beta0 + params.beta1 * sample.x);
        let e = math::exp(t);
        // ∇g_i = (−e^{t_i}, −x_i e^{t_i}, −1).
        st[0] += mu_i * e;
        st[1] += mu_i * sample.x * e;
        st[2] += mu_i;
        primal = math::max(primal, -params.beta2 - e);
        dual = math::max(dual, -mu_i);
        slack = math::max(slack, math::abs(mu_i * (params.beta2 + e)));
    }
    let max_residual = [
        math::abs(st[0]),
        math::abs(st[1]),
        math::abs(st[2]),
        primal,
        dual,
        slack,
    ]
    .into_iter()
    .fold(0.0, math::max);
    KktReport {
        stationarity: st,
        primal,
        dual,
        slackness: slack,
        max_residual,
    }
}

/// Fit configuration.
#[derive(Clone, Debug)]
pub struct FitConfig {
    pub target: FitTarget,
    /// Pin `β₂` instead of optimising it (e.g. `Some(1.0)` recovers the
    /// classical logistic model under the lower target).
    pub fix_beta2: Option<f64>,
    /// Decreasing log-barrier weights.
    pub barrier_weights: Vec<f64>,
    pub grad_tol: f64,
    pub kkt_tol: f64,
    pub max_inner_iterations: usize,
    /// Record the accepted objective values of each barrier stage.
    pub record_trace: bool,
}

impl FitConfig {
    pub fn new(target: FitTarget) -> Self {
        FitConfig {
            target,
            fix_beta2: None,
            barrier_weights: vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8],
            grad_tol: 1e-9,
            kkt_tol: 1e-6,
            max_inner_iterations: 300,
            record_trace: false,
        }
    }
}

/// Result of a fit.
#[derive(Clone, Debug)]
pub struct FitResult {
    pub params: BetaParams,
    /// Value of the chosen log-likelihood at `params`.
    pub objective: f64,
    /// Multiplier of `β₂ ≤ 1`.
    pub mu0: f64,
    /// Per-training-point multipliers.
    pub mu: Vec<f64>,
    pub kkt: KktReport,
    pub iterations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
    /// Accepted objective values per optimisation stage (empty unless
    /// `record_trace`).
    pub trace: Vec<Vec<f64>>,
}

/// Classical logistic regression (β₂ = 1, lower objective) by damped
/// Newton; used for initialisation.
fn classical_init(data: &[RegressionSample], grad_tol: f64, max_iter: usize) -> [f64; 2] {
    let f = |v: &[f64]| {
        let params = BetaParams::new(v[0], v[1], 1.0);
        let value = lower_log_likelihood(&params, data).ok()?;
        let g = objective_gradient(FitTarget::Lower, &params, data);
        Some((value, vec![g[0], g[1]]))
    };
    let out = opt::maximize_newton(&f, &[0.0, 0.0], grad_tol, max_iter);
    [out.x[0], out.x[1]]
}

/// Maximises the chosen belief log-likelihood subject to `β₂ ≤ 1` and the
/// per-point constraints, via a decreasing log-barrier with damped-Newton
/// inner iterations. Returns the best iterate flagged when the optimum is
/// not attained (the upper supremum lives on the vacuous boundary).
pub fn fit(data: &[RegressionSample], config: &FitConfig) -> Result<FitResult> {
    let mut xs: Vec<f64> = Vec::new();
    for (x, _) in observed(data) {
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    if observed(data).count() < 2 {
        return Err(Error::InsufficientData(
            "need at least 2 observed outcomes",
        ));
    }
    let zeros = observed(data).filter(|&(_, y)| y < 0.5).count();
    let mut warnings = Vec::new();
    if xs.len() < 2 {
        // The Bernoulli reduction: (β₀, β₂) remain identifiable.
        warnings.push(String::from(
            "constant covariate: beta1 is unidentified and stays at its initial value",
        ));
    }
    if zeros == 0 && config.target == FitTarget::Lower {
        warnings.push(String::from(
            "no negative outcomes: beta2 does not enter the lower objective and is unidentified",
        ));
    }

    let init01 = classical_init(data, config.grad_tol, config.max_inner_iterations);
    let mut trace: Vec<Vec<f64>> = Vec::new();
    let mut iterations = 0;

    if let Some(beta2) = config.fix_beta2 {
        if !(beta2 > 0.0 && beta2 <= 1.0) {
            return Err(Error::Domain("fixed beta2 must lie in (0, 1]"));
        }
        let f = |v: &[f64]| {
            let params = BetaParams::new(v[0], v[1], beta2);
            let value = objective_value(config.target, &params, data).ok()?;
            let g = objective_gradient(config.target, &params, data);
            Some((value, vec![g[0], g[1]]))
        };
        let out = opt::maximize_newton(&f, &init01, config.grad_tol, config.max_inner_iterations);
        iterations += out.iterations;
        if config.record_trace {
            trace.push(out.values.clone());
        }
        let params = BetaParams::new(out.x[0], out.x[1], beta2);
        // With β₂ pinned at the boundary the multiplier equals the β₂
        // derivative (complementarity); away from it the residual honestly
        // reports the unbalanced derivative.
        let grad = objective_gradient(config.target, &params, data);
        let mu0 = if beta2 >= 1.0 { math::max(grad[2], 0.0) } else { 0.0 };
        let mu = vec![0.0; data.len()];
        let kkt = kkt_residuals(config.target, &params, mu0, &mu, data);
        let objective = objective_value(config.target, &params, data)?;
        let converged = kkt.max_residual <= config.kkt_tol;
        return Ok(FitResult {
            params,
            objective,
            mu0,
            mu,
            kkt,
            iterations,
            converged,
            warnings,
            trace,
        });
    }

    // Barrier stages over the free 3-parameter problem. The β₂ direction is
    // brutally ill-conditioned next to the wall, so each stage alternates an
    // exact one-dimensional β₂ solve (the stage objective is concave in β₂)
    // with a Newton step in (β₀, β₁).
    let barrier = |w: f64, params: &BetaParams| -> Option<(f64, [f64; 3])> {
        if params.beta2 <= 0.0 || params.beta2 >= 1.0 {
            return None;
        }
        let value = objective_value(config.target, params, data).ok()?;
        let mut phi = value + w * math::ln(1.0 - params.beta2);
        let g = objective_gradient(config.target, params, data);
        let mut grad = [g[0], g[1], g[2] - w / (1.0 - params.beta2)];
        for (x, _) in observed(data) {
            let t = clamp_exponent(params.beta0 + params.beta1 * x);
            let e = math::exp(t);
            let u = params.beta2 + e;
            phi += w * math::ln(u);
            grad[0] += w * e / u;
            grad[1] += w * x * e / u;
            grad[2] += w / u;
        }
        Some((phi, grad))
    };
    let mut point = vec![init01[0], init01[1], 1.0 - 1e-3];
    let mut final_w = *config.barrier_weights.last().unwrap_or(&1e-8);
    for &w in &config.barrier_weights {
        final_w = w;
        let mut stage_values: Vec<f64> = Vec::new();
        for _round in 0..40 {
            // Exact β₂ maximiser for fixed (β₀, β₁): bisection on the
            // strictly decreasing β₂ derivative of the stage objective.
            let grad_beta2 = |beta2: f64| -> f64 {
                let params = BetaParams::new(point[0], point[1], beta2);
                barrier(w, &params).map_or(f64::NAN, |(_, g)| g[2])
            };
            let (mut lo, mut hi) = (1e-13, 1.0 - 1e-13);
            if grad_beta2(lo) <= 0.0 {
                point[2] = lo;
            } else if grad_beta2(hi) >= 0.0 {
                point[2] = hi;
            } else {
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if grad_beta2(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                point[2] = 0.5 * (lo + hi);
            }
            // Newton in (β₀, β₁) at the current β₂.
            let beta2 = point[2];
            let f01 = |v: &[f64]| {
                let params = BetaParams::new(v[0], v[1], beta2);
                barrier(w, &params).map(|(phi, g)| (phi, vec![g[0], g[1]]))
            };
            let out = opt::maximize_newton(&f01, &point[..2], config.grad_tol, 60);
            iterations += out.iterations;
            point[0] = out.x[0];
            point[1] = out.x[1];
            if config.record_trace {
                stage_values.push(out.value);
            }
            let full = barrier(w, &BetaParams::from_slice(&point));
            if let Some((_, g)) = full {
                if math::sup_norm(&g) <= math::max(config.grad_tol, 1e-10) {
                    break;
                }
            }
            if iterations >= config.max_inner_iterations * config.barrier_weights.len() {
                break;
            }
        }
        if config.record_trace {
            trace.push(stage_values);
        }
    }

    let params = BetaParams::from_slice(&point);
    // Multiplier estimates: barrier values for the (never active) per-point
    // constraints, and the value solving the β₂ stationarity row for μ₀
    // (the barrier formula w/(1−β₂) loses ~6 digits to the quantisation of
    // 1−β₂ next to the wall).
    let mu: Vec<f64> = data
        .iter()
        .map(|s| match s.y {
            Some(_) => {
                let t = clamp_exponent(params.beta0 + params.beta1 * s.x);
                final_w / (params.beta2 + math::exp(t))
            }
            None => 0.0,
        })
        .collect();
    let grad_at_solution = objective_gradient(config.target, &params, data);
    let mu0 = math::max(0.0, grad_at_solution[2] + mu.iter().sum::<f64>());
    let kkt = kkt_residuals(config.target, &params, mu0, &mu, data);
    let objective = objective_value(config.target, &params, data)?;
    let converged = kkt.max_residual <= config.kkt_tol;
    if !converged && config.target == FitTarget::Upper {
        warnings.push(String::from(
            "upper-likelihood supremum is attained only in the vacuous limit; returning best iterate",
        ));
    }
    Ok(FitResult {
        params,
        objective,
        mu0,
        mu,
        kkt,
        iterations,
        converged,
        warnings,
        trace,
    })
}

/// Belief and plausibility of the positive outcome predicted by one fitted
/// model at covariate `x`: `(Bel(T), Pl(T)) = (p, 1 − q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictedInterval {
    pub bel_t: f64,
    pub pl_t: f64,
}

/// Prediction of the lower/upper fitted pair at a covariate.
#[derive(Clone, Debug)]
pub struct PredictionBand {
    pub lower_model: PredictedInterval,
    pub upper_model: PredictedInterval,
    /// Convergence flags of the two fits, in (lower, upper) order.
    pub converged: (bool, bool),
}

/// Evaluates both fitted models at `x`. Fits flagged as non-converged are
/// accepted (the upper problem's supremum lies on the vacuous boundary) and
/// reported through `converged`.
pub fn predict_interval(
    lower_fit: &FitResult,
    upper_fit: &FitResult,
    x: f64,
) -> Result<PredictionBand> {
    for fit in [lower_fit, upper_fit] {
        let b = fit.params;
        if !(b.beta0.is_finite() && b.beta1.is_finite() && b.beta2.is_finite()) {
            return Err(Error::NonConvergence);
        }
    }
    let eval = |params: &BetaParams| {
        let (p, q) = logit_links(params, x);
        PredictedInterval {
            bel_t: p,
            pl_t: 1.0 - q,
        }
    };
    Ok(PredictionBand {
        lower_model: eval(&lower_fit.params),
        upper_model: eval(&upper_fit.params),
        converged: (lower_fit.converged, upper_fit.converged),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn links_at_symmetric_point() {
        let (p, q) = logit_links(&BetaParams::new(0.0, 1.0, 1.0), 0.0);
        assert!(math::abs(p - 0.5) < 1e-15);
        assert!(math::abs(q - 0.5) < 1e-15);
    }

    #[test]
    fn beta2_one_recovers_classical_complement() {
        let params = BetaParams::new(0.3, -0.7, 1.0);
        for &x in &[-2.0, -0.5, 0.0, 1.5, 4.0] {
            let (p, q) = logit_links(&params, x);
            assert!(math::abs(p + q - 1.0) < 1e-14);
        }
    }

    #[test]
    fn links_direct_evaluation() {
        let (p, q) = logit_links(&BetaParams::new(0.0, 1.0, 0.5), 0.0);
        assert!(math::abs(p - 0.5) < 1e-15);
        assert!(math::abs(q - 0.25) < 1e-15);
    }

    #[test]
    fn lower_objective_classical_reduction() {
        let data = [
            RegressionSample::observed(-1.0, false),
            RegressionSample::observed(0.5, true),
            RegressionSample::observed(2.0, true),
        ];
        let params = BetaParams::new(0.2, 0.9, 1.0);
        let ll = lower_log_likelihood(&params, &data).unwrap();
        let classical: f64 = data
            .iter()
            .map(|s| {
                let (p, _) = logit_links(&params, s.x);
                if s.y.unwrap() {
                    math::ln(p)
                } else {
                    math::ln(1.0 - p)
                }
            })
            .sum();
        assert!(math::abs(ll - classical) < 1e-12);
    }

    #[test]
    fn single_positive_sample_at_origin() {
        let data = [RegressionSample::observed(0.0, true)];
        let ll = lower_log_likelihood(&BetaParams::new(0.0, 0.0, 1.0), &data).unwrap();
        assert!(math::abs(ll - math::ln(0.5)) < 1e-15);
    }

    #[test]
    fn missing_samples_contribute_nothing() {
        let data = [
            RegressionSample::missing(0.3),
            RegressionSample::missing(-2.0),
        ];
        let params = BetaParams::new(1.0, -1.0, 0.7);
        assert_eq!(lower_log_likelihood(&params, &data).unwrap(), 0.0);
        assert_eq!(upper_log_likelihood(&params, &data).unwrap(), 0.0);
    }

    #[test]
    fn gradients_match_central_differences() {
        let data = [
            RegressionSample::observed(-1.2, false),
            RegressionSample::observed(0.4, true),
            RegressionSample::observed(1.1, false),
            RegressionSample::missing(0.9),
            RegressionSample::observed(2.3, true),
        ];
        let mut rng = crate::rng::Rng::seed_from(5);
        for _ in 0..100 {
            let params = BetaParams::new(
                rng.f64() * 2.0 - 1.0,
                rng.f64() * 2.0 - 1.0,
                0.05 + 0.9 * rng.f64(),
            );
            for target in [FitTarget::Lower, FitTarget::Upper] {
                let g = objective_gradient(target, &params, &data);
                let h = 1e-6;
                for i in 0..3 {
                    let mut up = [params.beta0, params.beta1, params.beta2];
                    let mut dn = [params.beta0, params.beta1, params.beta2];
                    up[i] += h;
                    dn[i] -= h;
                    let fu =
                        objective_value(target, &BetaParams::from_slice(&up), &data).unwrap();
                    let fd =
                        objective_value(target, &BetaParams::from_slice(&dn), &data).unwrap();
                    let fd_grad = (fu - fd) / (2.0 * h);
                    let scale = math::max(1.0, math::abs(g[i]));
                    assert!(
                        math::abs(fd_grad - g[i]) / scale < 1e-5,
                        "target {target:?} component {i}: analytic {} vs fd {}",
                        g[i],
                        fd_grad
                    );
                }
            }
        }
    }

    #[test]
    fn interior_point_kkt_residual_is_gradient_norm() {
        let data = [
            RegressionSample::observed(-1.0, false),
            RegressionSample::observed(1.0, true),
        ];
        let params = BetaParams::new(0.1, 0.2, 0.5);
        let mu = vec![0.0; data.len()];
        let report = kkt_residuals(FitTarget::Lower, &params, 0.0, &mu, &data);
        let grad = objective_gradient(FitTarget::Lower, &params, &data);
        assert!(math::abs(report.max_residual - math::sup_norm(&grad)) < 1e-15);
    }

    #[test]
    fn fit_requires_two_observed_samples() {
        let data = [
            RegressionSample::observed(1.0, true),
            RegressionSample::missing(0.0),
        ];
        assert!(matches!(
            fit(&data, &FitConfig::new(FitTarget::Lower)),
            Err(Error::InsufficientData(_))
        ));
        // A constant covariate is allowed (Bernoulli reduction) but warned
        // about.
        let constant = [
            RegressionSample::observed(1.0, true),
            RegressionSample::observed(1.0, false),
        ];
        let result = fit(&constant, &FitConfig::new(FitTarget::Lower)).unwrap();
        assert!(result.warnings.iter().any(|w| w.contains("constant covariate")));
    }

    #[test]
    fn separable_toy_data_fits_positive_slope() {
        let mut data = Vec::new();
        for _ in 0..10 {
            data.push(RegressionSample::observed(-1.0, false));
            data.push(RegressionSample::observed(1.0, true));
        }
        let result = fit(&data, &FitConfig::new(FitTarget::Lower)).unwrap();
        assert!(result.params.beta1 > 0.0);
        let (p, _) = logit_links(&result.params, 1.0);
        assert!(p > 0.9, "p(x=1) = {p}");
    }

    #[test]
    fn all_positive_outcomes_warn_about_beta2() {
        let data = [
            RegressionSample::observed(-1.0, true),
            RegressionSample::observed(1.0, true),
        ];
        let result = fit(&data, &FitConfig::new(FitTarget::Lower)).unwrap();
        assert!(result
            .warnings
            .iter()
            .any(|w| w.contains("unidentified")));
        // With no zeros the per-point multipliers stay at the barrier floor.
        assert!(result.mu.iter().all(|&m| m < 1e-6));
    }

    #[test]
    fn objective_trace_is_monotone_nondecreasing() {
        let mut data = Vec::new();
        for i in 0..20 {
            let x = -1.0 + 0.1 * i as f64;
            data.push(RegressionSample::observed(x, i % 3 != 0));
        }
        let mut config = FitConfig::new(FitTarget::Lower);
        config.record_trace = true;
        let result = fit(&data, &config).unwrap();
        for stage in &result.trace {
            for pair in stage.windows(2) {
                assert!(pair[1] >= pair[0] - 1e-12);
            }
        }
    }
}
