//! PAC bound calculator plus empirical simulators for realizable finite
//! hypothesis classes and their credal generalisation.
//!
//! Expected risks are computed exactly by enumeration over the finite
//! domain, which makes the δ-tail checks sharp; only training samples are
//! drawn at random.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::Rng;

/// Risk bound `ε = (ln|H| + ln(1/δ)) / n` of the realizable PAC theorem.
pub fn risk_bound(h_count: usize, n: usize, delta: f64) -> Result<f64> {
    if h_count == 0 || n == 0 || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain("need |H| >= 1, n >= 1 and delta in (0,1)"));
    }
    Ok((math::ln(h_count as f64) + math::ln(1.0 / delta)) / n as f64)
}

/// Sample complexity `n = ⌈(ln|H| + ln(1/δ)) / ε⌉`.
pub fn sample_complexity(h_count: usize, epsilon: f64, delta: f64) -> Result<usize> {
    if h_count == 0 || epsilon <= 0.0 || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain("need |H| >= 1, epsilon > 0 and delta in (0,1)"));
    }
    let raw = (math::ln(h_count as f64) + math::ln(1.0 / delta)) / epsilon;
    Ok(libm::ceil(raw) as usize)
}

/// A finite hypothesis class over a finite domain: `hypotheses[h][x] = y`.
#[derive(Clone, Debug)]
pub struct HypothesisClass {
    x_size: usize,
    y_size: usize,
    hypotheses: Vec<Vec<usize>>,
}

impl HypothesisClass {
    pub fn new(x_size: usize, y_size: usize, hypotheses: Vec<Vec<usize>>) -> Result<Self> {
        if hypotheses.is_empty() {
            return Err(Error::Domain("hypothesis class must be nonempty"));
        }
        for h in &hypotheses {
            if h.len() != x_size || h.iter().any(|&y| y >= y_size) {
                return Err(Error::Domain("hypothesis table shape mismatch"));
            }
        }
        Ok(HypothesisClass {
            x_size,
            y_size,
            hypotheses,
        })
    }

    /// Binary threshold functions on `0..x_size` in both orientations:
    /// `[x ≥ t]` and `[x < t]` for `t = 0..x_size`, giving `2·x_size`
    /// hypotheses.
    pub fn thresholds_binary(x_size: usize) -> Self {
        let mut hypotheses = Vec::with_capacity(2 * x_size);
        for t in 0..x_size {
            hypotheses.push((0..x_size).map(|x| usize::from(x >= t)).collect());
        }
        for t in 0..x_size {
            hypotheses.push((0..x_size).map(|x| usize::from(x < t)).collect());
        }
        HypothesisClass {
            x_size,
            y_size: 2,
            hypotheses,
        }
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn predict(&self, h: usize, x: usize) -> usize {
        self.hypotheses[h][x]
    }
}

/// A distribution over `X × Y` pairs, stored flat as `x * y_size + y`.
#[derive(Clone, Debug)]
pub struct PairDistribution {
    x_size: usize,
    y_size: usize,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PairDistribution {
    pub fn new(x_size: usize, y_size: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != x_size * y_size {
            return Err(Error::Domain("distribution length mismatch"));
        }
        if probs.iter().any(|&p| p < 0.0) {
            return Err(Error::Domain("probabilities must be nonnegative"));
        }
        let total: f64 = probs.iter().sum();
        if math::abs(total - 1.0) > 1e-9 {
            return Err(Error::NormalizationError(total));
        }
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        Ok(PairDistribution {
            x_size,
            y_size,
            probs,
            cumulative,
        })
    }

    /// The labelled distribution `(x, h(x))` with the given marginal on X.
    pub fn labelled_by(
        class: &HypothesisClass,
        h: usize,
        x_marginal: &[f64],
    ) -> Result<Self> {
        if x_marginal.len() != class.x_size {
            return Err(Error::Domain("marginal length mismatch"));
        }
        let mut probs = vec![0.0; class.x_size * class.y_size];
        for (x, &px) in x_marginal.iter().enumerate() {
            probs[x * class.y_size + class.predict(h, x)] = px;
        }
        PairDistribution::new(class.x_size, class.y_size, probs)
    }

    /// Convex mixture of distributions over the same domain.
    pub fn mixture(vertices: &[PairDistribution], weights: &[f64]) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Domain("empty mixture"))?;
        let mut probs = vec![0.0; first.probs.len()];
        for (v, &w) in vertices.iter().zip(weights) {
            for (slot, &p) in probs.iter_mut().zip(&v.probs) {
                *slot += w * p;
            }
        }
        PairDistribution::new(first.x_size, first.y_size, probs)
    }

    pub fn sample(&self, rng: &mut Rng) -> (usize, usize) {
        let u = rng.f64();
        let idx = match self
            .cumulative
            .iter()
            .position(|&c| u < c)
        {
            Some(i) => i,
            None => self.probs.len() - 1,
        };
        (idx / self.y_size, idx % self.y_size)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Exact expected zero-one risk of hypothesis `h` under `p`.
pub fn expected_risk(class: &HypothesisClass, h: usize, p: &PairDistribution) -> f64 {
    let mut risk = 0.0;
    for x in 0..class.x_size {
        for y in 0..class.y_size {
            if class.predict(h, x) != y {
                risk += p.probs[x * class.y_size + y];
            }
        }
    }
    risk
}

/// Empirical risk minimiser over counted errors; ties resolve to the lowest
/// hypothesis index.
fn erm(class: &HypothesisClass, sample: &[(usize, usize)]) -> usize {
    let mut best = 0usize;
    let mut best_errors = usize::MAX;
    for h in 0..class.len() {
        let errors = sample
            .iter()
            .filter(|&&(x, y)| class.predict(h, x) != y)
            .count();
        if errors < best_errors {
            best_errors = errors;
            best = h;
        }
    }
    best
}

/// Report of the realizable PAC simulation.
#[derive(Clone, Debug)]
pub struct RealizableReport {
    pub trials: usize,
    pub n: usize,
    pub epsilon: f64,
    /// Fraction of trials with exact risk of the ERM above ε.
    pub violation_frequency: f64,
    /// Largest exact ERM risk observed.
    pub worst_risk: f64,
    /// Fraction of trials whose ERM had zero empirical risk (always 1 under
    /// realizability).
    pub zero_empirical_risk_frequency: f64,
}

/// Draws `trials` training sets of size `n` from `p_star`, trains the ERM
/// and reports how often its exact risk exceeds `epsilon`. Requires a
/// zero-risk hypothesis under `p_star`.
pub fn simulate_realizable(
    class: &HypothesisClass,
    p_star: &PairDistribution,
    n: usize,
    epsilon: f64,
    trials: usize,
    rng: &mut Rng,
) -> Result<RealizableReport> {
    if !(0..class.len()).any(|h| expected_risk(class, h, p_star) == 0.0) {
        return Err(Error::NotRealizable);
    }
    let mut violations = 0usize;
    let mut zero_empirical = 0usize;
    let mut worst: f64 = 0.0;
    let mut sample = vec![(0usize, 0usize); n];
    for _ in 0..trials {
        for slot in sample.iter_mut() {
            *slot = p_star.sample(rng);
        }
        let h_hat = erm(class, &sample);
        let empirical_errors = sample
            .iter()
            .filter(|&&(x, y)| class.predict(h_hat, x) != y)
            .count();
        if empirical_errors == 0 {
            zero_empirical += 1;
        }
        let risk = expected_risk(class, h_hat, p_star);
        worst = math::max(worst, risk);
        if risk > epsilon {
            violations += 1;
        }
    }
    Ok(RealizableReport {
        trials,
        n,
        epsilon,
        violation_frequency: violations as f64 / trials as f64,
        worst_risk: worst,
        zero_empirical_risk_frequency: zero_empirical as f64 / trials as f64,
    })
}

/// Report of the credal simulation.
#[derive(Clone, Debug)]
pub struct CredalReport {
    pub trials: usize,
    pub n: usize,
    pub epsilon: f64,
    /// Which credal vertices admit a zero-risk hypothesis.
    pub vertex_realizable: Vec<bool>,
    /// Whether a single hypothesis attains zero risk at every vertex
    /// (uniform credal realizability over the polytope).
    pub uniformly_realizable: bool,
    /// Fraction of trials with worst-case vertex risk of the ERM above ε.
    pub worst_case_tail: f64,
    /// Mean worst-case vertex risk of the ERM.
    pub mean_worst_risk: f64,
}

/// Credal variant: each trial samples a training distribution uniformly
/// from the credal polytope (Dirichlet(1,…,1) mixture of the vertices),
/// trains the ERM, and scores it by its worst-case risk over the vertices
/// (the maximum over the polytope, by linearity of the risk in `p`). No
/// bound is asserted; the tail is reported as empirical evidence.
pub fn simulate_credal(
    class: &HypothesisClass,
    vertices: &[PairDistribution],
    n: usize,
    epsilon: f64,
    trials: usize,
    rng: &mut Rng,
) -> Result<CredalReport> {
    if vertices.is_empty() {
        return Err(Error::Domain("credal set needs at least one vertex"));
    }
    let vertex_realizable: Vec<bool> = vertices
        .iter()
        .map(|p| (0..class.len()).any(|h| expected_risk(class, h, p) == 0.0))
        .collect();
    if !vertex_realizable.iter().any(|&r| r) {
        return Err(Error::NotRealizable);
    }
    let uniformly_realizable = (0..class.len())
        .any(|h| vertices.iter().all(|p| expected_risk(class, h, p) == 0.0));

    let mut tail = 0usize;
    let mut total_worst = 0.0;
    let mut sample = vec![(0usize, 0usize); n];
    for _ in 0..trials {
        let draws: Vec<f64> = (0..vertices.len()).map(|_| rng.exponential()).collect();
        let total: f64 = draws.iter().sum();
        let weights: Vec<f64> = draws.iter().map(|d| d / total).collect();
        let p_hat = PairDistribution::mixture(vertices, &weights)?;
        for slot in sample.iter_mut() {
            *slot = p_hat.sample(rng);
        }
        let h_hat = erm(class, &sample);
        let worst = vertices
            .iter()
            .map(|p| expected_risk(class, h_hat, p))
            .fold(0.0, math::max);
        total_worst += worst;
        if worst > epsilon {
            tail += 1;
        }
    }
    Ok(CredalReport {
        trials,
        n,
        epsilon,
        vertex_realizable,
        uniformly_realizable,
        worst_case_tail: tail as f64 / trials as f64,
        mean_worst_risk: total_worst / trials as f64,
    })
}
