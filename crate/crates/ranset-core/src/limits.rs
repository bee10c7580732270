//! Monte Carlo checkers for the Bernoulli limit theorems of belief
//! measures: the law-of-large-numbers band and the two central-limit
//! statistics.
//!
//! A belief measure is the push-forward of a probability on the source
//! space of focal elements, so sampling draws focal elements with
//! probability equal to their mass. Events on infinite series are measured
//! with containment semantics: a sampled product set satisfies an event iff
//! *every* selection does, which reduces to checking the worst-case
//! empirical frequency.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::SubsetMask;
use crate::mass::MassFunction;
use crate::math;
use crate::rng::Rng;

/// Draws a focal element with probability equal to its mass.
pub fn sample_focal(m: &MassFunction, rng: &mut Rng) -> SubsetMask {
    let u = rng.f64() * m.total_mass();
    let mut acc = 0.0;
    let mut last = SubsetMask::EMPTY;
    for (s, mass) in m.focal_elements() {
        acc += mass;
        last = s;
        if u < acc {
            return s;
        }
    }
    last
}

fn require_binary(m: &MassFunction) -> Result<()> {
    if m.frame().size() != 2 {
        return Err(Error::NotBinaryFrame);
    }
    if !m.is_normalized_regime() {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

/// Report of the law-of-large-numbers band check.
#[derive(Clone, Debug)]
pub struct LlnReport {
    pub bel: f64,
    pub pl: f64,
    pub epsilon: f64,
    pub n: usize,
    pub trials: usize,
    /// Fraction of trials with `[min freq, max freq] ⊆ [Bel−ε, Pl+ε]`.
    pub coverage: f64,
}

/// Draws `trials` series of `n` focal elements each and reports how often
/// the interval of compatible empirical frequencies of `outcome` lies in
/// the ε-widened `[Bel, Pl]` band.
pub fn lln_band_check(
    m: &MassFunction,
    outcome: usize,
    n: usize,
    trials: usize,
    epsilon: f64,
    rng: &mut Rng,
) -> Result<LlnReport> {
    require_binary(m)?;
    if outcome > 1 {
        return Err(Error::Domain("outcome index must be 0 or 1"));
    }
    if n == 0 || trials == 0 {
        return Err(Error::Domain("n and trials must be positive"));
    }
    let singleton = SubsetMask::singleton(outcome);
    let bel = m.bel_of(singleton);
    let pl = m.pl_of(singleton);
    let mut covered = 0usize;
    for _ in 0..trials {
        let mut definite = 0usize; // K_i = {outcome}
        let mut possible = 0usize; // K_i ∋ outcome
        for _ in 0..n {
            let k = sample_focal(m, rng);
            if k == singleton {
                definite += 1;
            }
            if k.contains(outcome) {
                possible += 1;
            }
        }
        let min_freq = definite as f64 / n as f64;
        let max_freq = possible as f64 / n as f64;
        if min_freq >= bel - epsilon && max_freq <= pl + epsilon {
            covered += 1;
        }
    }
    Ok(LlnReport {
        bel,
        pl,
        epsilon,
        n,
        trials,
        coverage: covered as f64 / trials as f64,
    })
}

/// Report of the central-limit check.
#[derive(Clone, Debug)]
pub struct CltReport {
    pub n: usize,
    pub samples: usize,
    pub alphas: Vec<f64>,
    /// Estimated belief measure of the upper-statistic event per α,
    /// compared against 𝒩(α).
    pub upper_estimates: Vec<f64>,
    /// Estimated belief measure of the lower-statistic event per α,
    /// compared against 1 − 𝒩(α).
    pub lower_estimates: Vec<f64>,
    /// Sup distance of the upper statistic from 𝒩(α) over the grid.
    pub ks_upper: f64,
    /// Sup distance of the lower statistic from 1 − 𝒩(α) over the grid.
    pub ks_lower: f64,
}

/// Estimates the belief measure of the two central-limit events by
/// containment sampling.
///
/// Upper statistic: `√n (Φₙ − Pl(T)) / √(Bel(F)(1−Bel(F))) ≤ α` holds for a
/// product set iff the *maximal* compatible frequency satisfies it; its
/// measure tends to 𝒩(α). Lower statistic:
/// `√n (Φₙ − Bel(T)) / √(Bel(T)(1−Bel(T))) ≥ α` holds iff the *minimal*
/// compatible frequency satisfies it; its measure tends to `1 − 𝒩(α)`.
pub fn clt_check(
    m: &MassFunction,
    outcome: usize,
    n: usize,
    samples: usize,
    alphas: &[f64],
    rng: &mut Rng,
) -> Result<CltReport> {
    require_binary(m)?;
    if outcome > 1 {
        return Err(Error::Domain("outcome index must be 0 or 1"));
    }
    if n < 100 || samples == 0 {
        return Err(Error::Domain("need n >= 100 and samples >= 1"));
    }
    let singleton = SubsetMask::singleton(outcome);
    let other = SubsetMask::singleton(1 - outcome);
    let bel_t = m.bel_of(singleton);
    let bel_f = m.bel_of(other);
    let pl_t = m.pl_of(singleton);
    let var_upper = bel_f * (1.0 - bel_f);
    let var_lower = bel_t * (1.0 - bel_t);
    if var_upper <= 0.0 || var_lower <= 0.0 {
        return Err(Error::Degenerate(
            "central-limit statistics need Bel(T), Bel(F) in (0, 1)",
        ));
    }
    let sd_upper = math::sqrt(var_upper);
    let sd_lower = math::sqrt(var_lower);
    let sqrt_n = math::sqrt(n as f64);

    // Count distributions of the max and min compatible frequencies.
    let mut upper_counts = alloc::vec![0usize; alphas.len()];
    let mut lower_counts = alloc::vec![0usize; alphas.len()];
    for _ in 0..samples {
        let mut definite = 0usize;
        let mut possible = 0usize;
        for _ in 0..n {
            let k = sample_focal(m, rng);
            if k == singleton {
                definite += 1;
            }
            if k.contains(outcome) {
                possible += 1;
            }
        }
        let max_freq = possible as f64 / n as f64;
        let min_freq = definite as f64 / n as f64;
        for (i, &alpha) in alphas.iter().enumerate() {
            if sqrt_n * (max_freq - pl_t) / sd_upper <= alpha {
                upper_counts[i] += 1;
            }
            if sqrt_n * (min_freq - bel_t) / sd_lower >= alpha {
                lower_counts[i] += 1;
            }
        }
    }
    let upper_estimates: Vec<f64> = upper_counts
        .iter()
        .map(|&c| c as f64 / samples as f64)
        .collect();
    let lower_estimates: Vec<f64> = lower_counts
        .iter()
        .map(|&c| c as f64 / samples as f64)
        .collect();
    let ks_upper = alphas
        .iter()
        .zip(&upper_estimates)
        .map(|(&a, &e)| math::abs(e - math::normal_cdf(a)))
        .fold(0.0, math::max);
    let ks_lower = alphas
        .iter()
        .zip(&lower_estimates)
        .map(|(&a, &e)| math::abs(e - (1.0 - math::normal_cdf(a))))
        .fold(0.0, math::max);
    Ok(CltReport {
        n,
        samples,
        alphas: alphas.to_vec(),
        upper_estimates,
        lower_estimates,
        ks_upper,
        ks_lower,
    })
}

/// Evenly spaced α grid over `[lo, hi]`.
pub fn alpha_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return alloc::vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}
