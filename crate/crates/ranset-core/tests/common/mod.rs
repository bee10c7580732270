//! Helpers shared between integration suites.
#![allow(dead_code)]

use ranset_core::frame::{Frame, SubsetMask};
use ranset_core::mass::MassFunction;
use ranset_core::regression::RegressionSample;
use ranset_core::Rng;

/// Binary mass function with `m({T}) = t`, `m({F}) = f`.
pub fn tf_mass(t: f64, f: f64) -> MassFunction {
    let frame = Frame::binary();
    MassFunction::new(
        frame.clone(),
        [
            (SubsetMask::singleton(0), t),
            (SubsetMask::singleton(1), f),
            (frame.full(), 1.0 - t - f),
        ],
        true,
    )
    .unwrap()
}

/// Independent classical logistic regression by Newton–Raphson on the
/// textbook score equations; test-only oracle.
pub fn classical_logistic_oracle(data: &[(f64, f64)]) -> (f64, f64) {
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

/// Random logistic dataset with latent coefficients.
pub fn random_logistic_dataset(n: usize, rng: &mut Rng) -> Vec<RegressionSample> {
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
