//! Regression-module oracles: an independent textbook logistic solver, the
//! Bernoulli-surface reduction, KKT certification and interval predictions.

use ranset_core::regression::{
    self, fit, logit_links, predict_interval, BetaParams, FitConfig, FitTarget,
    RegressionSample,
};
use ranset_core::Rng;

/// Independent classical logistic regression by Newton–Raphson on the
/// textbook score equations; test-only oracle.
fn classical_logistic_oracle(data: &[(f64, f64)]) -> (f64, f64) {
    let mut b0 = 0.0;
    let mut b1 = 0.0;
    for _ in 0..200 {
        let mut g = [0.0f64; 2];
        let mut h = [[0.0f64; 2]; 2];
        for &(x, y) in data {
            let t = b0 + b1 * x;
            let p = 1.0 / (1.0 + (-t).exp());
            let w = p * (1.0 - p);
            g[0] += y - p;
            g[1] += (y - p) * x;
            h[0][0] += w;
            h[0][1] += w * x;
            h[1][1] += w * x * x;
        }
        h[1][0] = h[0][1];
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-14 {
            break;
        }
        let d0 = (h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let d1 = (-h[1][0] * g[0] + h[0][0] * g[1]) / det;
        b0 += d0;
        b1 += d1;
        if d0.abs().max(d1.abs()) < 1e-12 {
            break;
        }
    }
    (b0, b1)
}

/// Random non-separable dataset of size `n`.
fn random_dataset(n: usize, rng: &mut Rng) -> Vec<RegressionSample> {
    let beta0 = rng.f64() * 2.0 - 1.0;
    let beta1 = rng.f64() * 3.0 - 1.5;
    (0..n)
        .map(|_| {
            let x = rng.f64() * 4.0 - 2.0;
            let p = 1.0 / (1.0 + (-(beta0 + beta1 * x)).exp());
            RegressionSample::observed(x, rng.f64() < p)
        })
        .collect()
}

#[test]
fn beta2_fixed_reduction_matches_classical_oracle() {
    let mut rng = Rng::seed_from(41);
    for _ in 0..20 {
        let data = random_dataset(200, &mut rng);
        let mut config = FitConfig::new(FitTarget::Lower);
        config.fix_beta2 = Some(1.0);
        let result = fit(&data, &config).unwrap();
        let pairs: Vec<(f64, f64)> = data
            .iter()
            .map(|s| (s.x, if s.y.unwrap() { 1.0 } else { 0.0 }))
            .collect();
        let (b0, b1) = classical_logistic_oracle(&pairs);
        assert!(
            (result.params.beta0 - b0).abs() <= 1e-4 && (result.params.beta1 - b1).abs() <= 1e-4,
            "fit ({}, {}) vs oracle ({b0}, {b1})",
            result.params.beta0,
            result.params.beta1
        );
        assert!(result.converged);
        assert!(result.kkt.max_residual <= 1e-6);
    }
}

#[test]
fn free_lower_fit_reaches_classical_coefficients_and_certifies_kkt() {
    // The lower objective is maximised at β₂ = 1 whenever negative outcomes
    // exist, so the free fit lands on the classical coefficients too.
    let mut rng = Rng::seed_from(42);
    for _ in 0..5 {
        let data = random_dataset(150, &mut rng);
        let result = fit(&data, &FitConfig::new(FitTarget::Lower)).unwrap();
        assert!(result.converged, "kkt {:?}", result.kkt);
        assert!(result.kkt.max_residual <= 1e-6);
        assert!(result.params.beta2 > 0.999);
        let pairs: Vec<(f64, f64)> = data
            .iter()
            .map(|s| (s.x, if s.y.unwrap() { 1.0 } else { 0.0 }))
            .collect();
        let (b0, b1) = classical_logistic_oracle(&pairs);
        assert!((result.params.beta0 - b0).abs() <= 1e-3);
        assert!((result.params.beta1 - b1).abs() <= 1e-3);
    }
}

#[test]
fn constant_covariate_reduces_to_bernoulli_surface_argmax() {
    // Six successes in ten trials at a constant covariate: the fitted
    // (p, q) equals the lower Bernoulli argmax (0.6, 0.4).
    let mut data = Vec::new();
    for i in 0..10 {
        data.push(RegressionSample::observed(0.0, i < 6));
    }
    let result = fit(&data, &FitConfig::new(FitTarget::Lower)).unwrap();
    assert!(result
        .warnings
        .iter()
        .any(|w| w.contains("constant covariate")));
    let (p, q) = logit_links(&result.params, 0.0);
    assert!((p - 0.6).abs() <= 1e-6, "p = {p}");
    assert!((q - 0.4).abs() <= 1e-6, "q = {q}");
}

#[test]
fn feasibility_of_fitted_parameters() {
    let mut rng = Rng::seed_from(43);
    for _ in 0..10 {
        let data = random_dataset(60, &mut rng);
        for target in [FitTarget::Lower, FitTarget::Upper] {
            let result = fit(&data, &FitConfig::new(target)).unwrap();
            assert!(result.params.beta2 <= 1.0 + 1e-12 && result.params.beta2 > 0.0);
            for s in &data {
                let (p, q) = logit_links(&result.params, s.x);
                assert!(p + q >= -1e-12 && p + q <= 1.0 + 1e-12);
            }
        }
    }
}

#[test]
fn vacuous_heavy_data_gives_wide_upper_intervals() {
    // Half the labels missing: the upper model heads for the vacuous corner
    // and its predicted interval is wide.
    let mut data = Vec::new();
    for i in 0..40 {
        let x = -2.0 + 0.1 * i as f64;
        if i % 2 == 0 {
            data.push(RegressionSample::missing(x));
        } else {
            data.push(RegressionSample::observed(x, i % 4 == 1));
        }
    }
    let lower = fit(&data, &FitConfig::new(FitTarget::Lower)).unwrap();
    let upper = fit(&data, &FitConfig::new(FitTarget::Upper)).unwrap();
    let band = predict_interval(&lower, &upper, 0.0).unwrap();
    let width = band.upper_model.pl_t - band.upper_model.bel_t;
    assert!(width > 0.5, "upper-model interval width {width}");
}

#[test]
fn classical_reduction_gives_degenerate_intervals() {
    let mut rng = Rng::seed_from(44);
    let data = random_dataset(100, &mut rng);
    let mut config = FitConfig::new(FitTarget::Lower);
    config.fix_beta2 = Some(1.0);
    let fit_a = fit(&data, &config).unwrap();
    let band = predict_interval(&fit_a, &fit_a, 0.7).unwrap();
    assert!((band.lower_model.pl_t - band.lower_model.bel_t).abs() <= 1e-12);
    // Sigmoid limits: p is monotone in x for β₁ > 0.
    if fit_a.params.beta1 > 0.0 {
        let far_low = logit_links(&fit_a.params, -1e4).0;
        let far_high = logit_links(&fit_a.params, 1e4).0;
        assert!(far_low < 1e-6 && far_high > 1.0 - 1e-6);
    }
}

#[test]
fn random_multiplier_kkt_matches_finite_difference_gradients() {
    // With μ = 0 the stationarity residual must equal the objective
    // gradient, which in turn matches central differences.
    let data = [
        RegressionSample::observed(-0.8, false),
        RegressionSample::observed(0.2, true),
        RegressionSample::observed(1.4, true),
        RegressionSample::observed(2.0, false),
    ];
    let mut rng = Rng::seed_from(45);
    for _ in 0..50 {
        let params = BetaParams::new(
            rng.f64() * 2.0 - 1.0,
            rng.f64() * 2.0 - 1.0,
            0.1 + 0.8 * rng.f64(),
        );
        for target in [FitTarget::Lower, FitTarget::Upper] {
            let report =
                regression::kkt_residuals(target, &params, 0.0, &[0.0; 4], &data);
            let h = 1e-6;
            for i in 0..3 {
                let mut up = [params.beta0, params.beta1, params.beta2];
                let mut dn = up;
                up[i] += h;
                dn[i] -= h;
                let value = |v: [f64; 3]| {
                    let p = BetaParams::new(v[0], v[1], v[2]);
                    match target {
                        FitTarget::Lower => regression::lower_log_likelihood(&p, &data).unwrap(),
                        FitTarget::Upper => regression::upper_log_likelihood(&p, &data).unwrap(),
                    }
                };
                let fd = (value(up) - value(dn)) / (2.0 * h);
                let scale = fd.abs().max(1.0);
                assert!(
                    (report.stationarity[i] - fd).abs() / scale <= 1e-5,
                    "{target:?} component {i}"
                );
            }
        }
    }
}
