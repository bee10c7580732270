//! Belief likelihoods of repeated trials: factorized and dense evaluation,
//! lower/upper likelihoods of sharp samples, the Bernoulli likelihood
//! surface, and checkers for the factorisation results.
//!
//! Likelihoods are defined for Dempster, conjunctive and disjunctive
//! combination only; Yager/Dubois trial combination is out of scope. The
//! upper-likelihood product rests on the plausibility factorisation, which
//! is proved for equally distributed binary trials and conjectural beyond,
//! hence the `conjectural` flag on [`LikelihoodBounds`]. Whether the
//! factorisation of singleton-tuple beliefs extends to arbitrary sharp
//! samples and frames is likewise only explored empirically, by
//! [`check_plausibility_conjecture`].

use alloc::vec::Vec;

use crate::combine::{self, CombinationRule};
use crate::error::{Error, Result};
use crate::frame::{SubsetMask, MAX_FRAME_SIZE};
use crate::mass::MassFunction;
use crate::math;
use crate::multivariate::{vacuous_extension, ProductFrame};
use crate::rng::Rng;
use crate::sampling;

/// Combination rules under which belief likelihoods are defined here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialRule {
    Dempster,
    Conjunctive,
    Disjunctive,
}

impl From<TrialRule> for CombinationRule {
    fn from(rule: TrialRule) -> CombinationRule {
        match rule {
            TrialRule::Dempster => CombinationRule::Dempster,
            TrialRule::Conjunctive => CombinationRule::Conjunctive,
            TrialRule::Disjunctive => CombinationRule::Disjunctive,
        }
    }
}

/// An event on the space of trial series.
#[derive(Clone, Debug)]
pub enum TrialEvent {
    /// A Cartesian product `A_1 × ⋯ × A_n`, one nonempty factor per trial.
    Cartesian(Vec<SubsetMask>),
    /// An arbitrary subset of the flattened product frame (dense fallback,
    /// small instances only).
    Arbitrary(SubsetMask),
}

/// A series of (not necessarily equally distributed) trials, one conditional
/// mass function per trial.
#[derive(Clone, Debug)]
pub struct TrialModel {
    conditionals: Vec<MassFunction>,
}

/// Lower and upper likelihood of a sharp sample.
#[derive(Clone, Debug, PartialEq)]
pub struct LikelihoodBounds {
    pub lower: f64,
    pub upper: f64,
    /// True when the upper product rests on the plausibility-factorisation
    /// conjecture rather than a proved case (any non-binary trial frame).
    pub conjectural: bool,
}

impl TrialModel {
    pub fn new(conditionals: Vec<MassFunction>) -> Result<Self> {
        if conditionals.is_empty() {
            return Err(Error::InsufficientData("at least one trial required"));
        }
        if conditionals.iter().any(|m| !m.is_normalized_regime()) {
            return Err(Error::NotNormalized);
        }
        Ok(TrialModel { conditionals })
    }

    /// Equally distributed trials: `n` copies of the same conditional.
    pub fn iid(m: MassFunction, n: usize) -> Result<Self> {
        TrialModel::new((0..n).map(|_| m.clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.conditionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditionals.is_empty()
    }

    pub fn conditionals(&self) -> &[MassFunction] {
        &self.conditionals
    }

    pub fn product_frame(&self) -> Result<ProductFrame> {
        ProductFrame::new(self.conditionals.iter().map(|m| m.frame().clone()).collect())
    }

    fn all_binary(&self) -> bool {
        self.conditionals.iter().all(|m| m.frame().size() == 2)
    }

    /// Dense evaluation: materializes the product frame, vacuous-extends all
    /// conditionals, folds the rule and reads the belief of the event. Only
    /// available while the joint frame stays within the dense cap.
    pub fn dense_combination(&self, rule: TrialRule) -> Result<MassFunction> {
        let product = self.product_frame()?;
        if product.total_size() > MAX_FRAME_SIZE {
            return Err(Error::Intractable(
                "dense trial combination needs at most 24 joint outcomes",
            ));
        }
        let extended: Result<Vec<MassFunction>> = self
            .conditionals
            .iter()
            .enumerate()
            .map(|(i, m)| vacuous_extension(m, &product, i))
            .collect();
        combine::combine_all(rule.into(), &extended?)
    }

    /// Belief likelihood `Bel(A | θ)` of an event under the combination of
    /// vacuous extensions.
    ///
    /// Cartesian events under ⊕/⊓ go through the product factorisation
    /// (all focal elements of the combination are Cartesian products of
    /// input focal elements); everything else falls back to the dense path.
    pub fn belief_likelihood(&self, rule: TrialRule, event: &TrialEvent) -> Result<f64> {
        match (rule, event) {
            (TrialRule::Dempster | TrialRule::Conjunctive, TrialEvent::Cartesian(factors)) => {
                if factors.len() != self.len() {
                    return Err(Error::ComponentMismatch);
                }
                let mut product = 1.0;
                for (m, &a) in self.conditionals.iter().zip(factors) {
                    m.frame().check_mask(a)?;
                    product *= m.bel_of(a);
                }
                Ok(product)
            }
            (_, event) => {
                let combined = self.dense_combination(rule)?;
                let mask = match event {
                    TrialEvent::Cartesian(factors) => {
                        self.product_frame()?.product_mask(factors)?
                    }
                    TrialEvent::Arbitrary(mask) => *mask,
                };
                Ok(combined.bel_of(mask))
            }
        }
    }

    /// Belief likelihood of a product-form focal element; factorized, so it
    /// scales to trial counts whose joint frame is far beyond the dense cap.
    pub fn product_likelihood(
        &self,
        rule: TrialRule,
        element: &crate::multivariate::ProductFocalElement,
    ) -> Result<f64> {
        self.belief_likelihood(rule, &TrialEvent::Cartesian(element.factors().to_vec()))
    }

    /// Lower and upper likelihood of a sharp sample `(x_1, …, x_n)` under
    /// conjunctive combination: `∏ Bel_i({x_i})` and `∏ Pl_i({x_i})`.
    pub fn lower_upper(&self, sample: &[usize]) -> Result<LikelihoodBounds> {
        if sample.len() != self.len() {
            return Err(Error::ComponentMismatch);
        }
        let mut lower = 1.0;
        let mut upper = 1.0;
        for (m, &x) in self.conditionals.iter().zip(sample) {
            if x >= m.frame().size() {
                return Err(Error::Domain("sample outcome outside trial frame"));
            }
            let singleton = SubsetMask::singleton(x);
            lower *= m.bel_of(singleton);
            upper *= m.pl_of(singleton);
        }
        Ok(LikelihoodBounds {
            lower,
            upper,
            conjectural: !self.all_binary(),
        })
    }
}

/// Lower Bernoulli likelihood `p^k q^{n−k}` of `k` successes in `n` trials.
pub fn bernoulli_lower(p: f64, q: f64, k: u32, n: u32) -> f64 {
    math::powi(p, k) * math::powi(q, n - k)
}

/// Upper Bernoulli likelihood `(1−q)^k (1−p)^{n−k}`.
pub fn bernoulli_upper(p: f64, q: f64, k: u32, n: u32) -> f64 {
    math::powi(1.0 - q, k) * math::powi(1.0 - p, n - k)
}

/// Grid scan of the Bernoulli lower/upper likelihood surface over
/// `{(p, q) : p, q ≥ 0, p + q ≤ 1}`.
#[derive(Clone, Debug)]
pub struct BernoulliSurface {
    pub k: u32,
    pub n: u32,
    pub step: f64,
    pub lower_argmax: (f64, f64),
    pub lower_max: f64,
    pub upper_argmax: (f64, f64),
    pub upper_max: f64,
}

/// Scans the surface with the given grid step; ties keep the first point in
/// scan order (p ascending, then q ascending).
pub fn bernoulli_surface(k: u32, n: u32, step: f64) -> Result<BernoulliSurface> {
    if k > n || n == 0 {
        return Err(Error::Domain("need 0 <= k <= n and n >= 1"));
    }
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Domain("grid step must lie in (0, 1]"));
    }
    let steps = (1.0 / step) as u32;
    let mut surface = BernoulliSurface {
        k,
        n,
        step,
        lower_argmax: (0.0, 0.0),
        lower_max: f64::NEG_INFINITY,
        upper_argmax: (0.0, 0.0),
        upper_max: f64::NEG_INFINITY,
    };
    for i in 0..=steps {
        let p = i as f64 * step;
        for j in 0..=(steps - i) {
            let q = j as f64 * step;
            let lo = bernoulli_lower(p, q, k, n);
            if lo > surface.lower_max {
                surface.lower_max = lo;
                surface.lower_argmax = (p, q);
            }
            let up = bernoulli_upper(p, q, k, n);
            if up > surface.upper_max {
                surface.upper_max = up;
                surface.upper_argmax = (p, q);
            }
        }
    }
    Ok(surface)
}

/// Report of a factorisation check over random instances.
#[derive(Clone, Debug, Default)]
pub struct FactorizationReport {
    pub instances: usize,
    /// Worst |dense − product| over focal-element masses (general-frame
    /// product form).
    pub max_mass_deviation: f64,
    /// Worst deviation of `Bel({tuple})` from `∏ Bel_i({x_i})`.
    pub max_tuple_deviation: f64,
    /// Worst deviation of `Bel(A_1×⋯×A_n)` from `∏ Bel_i(A_i)`.
    pub max_cartesian_deviation: f64,
    /// Whether the focal-element count matched `∏ n_i` in every instance
    /// (`3^n` for full-support binary inputs).
    pub focal_count_ok: bool,
    pub violations: usize,
}

/// Checks the conjunctive factorisation results on random full-support
/// inputs: focal-element count, product-form masses, singleton-tuple and
/// Cartesian-event belief products, all against the dense combination.
pub fn check_conjunctive_factorization(
    trials: usize,
    frame_sizes: &[usize],
    tol: f64,
    rng: &mut Rng,
) -> Result<FactorizationReport> {
    let frames: Result<Vec<_>> = frame_sizes
        .iter()
        .map(|&s| crate::frame::Frame::of_size(s))
        .collect();
    let frames = frames?;
    let joint: usize = frame_sizes.iter().product();
    if joint > MAX_FRAME_SIZE {
        return Err(Error::Intractable("joint frame exceeds the dense cap"));
    }
    let mut report = FactorizationReport {
        focal_count_ok: true,
        ..FactorizationReport::default()
    };
    for _ in 0..trials {
        let conditionals: Vec<MassFunction> = frames
            .iter()
            .map(|f| sampling::random_full_support(f, rng))
            .collect();
        let model = TrialModel::new(conditionals.clone())?;
        let product = model.product_frame()?;
        let dense = model.dense_combination(TrialRule::Conjunctive)?;

        let expected_count: usize = conditionals.iter().map(MassFunction::focal_count).product();
        if dense.focal_count() != expected_count {
            report.focal_count_ok = false;
            report.violations += 1;
        }

        // Product-form masses on every Cartesian focal product.
        let mut factors: Vec<SubsetMask> = alloc::vec![SubsetMask::EMPTY; conditionals.len()];
        let mut dev_mass: f64 = 0.0;
        let mut stack_product = 1.0;
        check_products_rec(
            &conditionals,
            &product,
            &dense,
            0,
            &mut factors,
            &mut stack_product,
            &mut dev_mass,
        )?;
        report.max_mass_deviation = math::max(report.max_mass_deviation, dev_mass);

        // Singleton tuples.
        let bel = dense.belief()?;
        let mut dev_tuple: f64 = 0.0;
        for flat in 0..product.total_size() {
            let idx = product.unflatten(flat);
            let expected: f64 = conditionals
                .iter()
                .zip(&idx)
                .map(|(m, &x)| m.bel_of(SubsetMask::singleton(x)))
                .product();
            let got = bel.value(SubsetMask::singleton(flat));
            dev_tuple = math::max(dev_tuple, math::abs(got - expected));
        }
        report.max_tuple_deviation = math::max(report.max_tuple_deviation, dev_tuple);

        // All Cartesian events with nonempty factors.
        let mut dev_cart: f64 = 0.0;
        let mut event_factors: Vec<SubsetMask> =
            alloc::vec![SubsetMask::EMPTY; conditionals.len()];
        check_cartesian_rec(
            &conditionals,
            &product,
            &bel,
            0,
            &mut event_factors,
            &mut dev_cart,
        )?;
        report.max_cartesian_deviation = math::max(report.max_cartesian_deviation, dev_cart);

        if dev_mass > tol || dev_tuple > tol || dev_cart > tol {
            report.violations += 1;
        }
        report.instances += 1;
    }
    Ok(report)
}

fn check_products_rec(
    conditionals: &[MassFunction],
    product: &ProductFrame,
    dense: &MassFunction,
    depth: usize,
    factors: &mut Vec<SubsetMask>,
    acc: &mut f64,
    dev: &mut f64,
) -> Result<()> {
    if depth == conditionals.len() {
        let mask = product.product_mask(factors)?;
        *dev = math::max(*dev, math::abs(dense.mass(mask) - *acc));
        return Ok(());
    }
    let focals: Vec<(SubsetMask, f64)> = conditionals[depth].focal_elements().collect();
    for (s, m) in focals {
        factors[depth] = s;
        let saved = *acc;
        *acc *= m;
        check_products_rec(conditionals, product, dense, depth + 1, factors, acc, dev)?;
        *acc = saved;
    }
    Ok(())
}

fn check_cartesian_rec(
    conditionals: &[MassFunction],
    product: &ProductFrame,
    bel: &crate::mass::SetFunction,
    depth: usize,
    factors: &mut Vec<SubsetMask>,
    dev: &mut f64,
) -> Result<()> {
    if depth == conditionals.len() {
        let mask = product.product_mask(factors)?;
        let expected: f64 = conditionals
            .iter()
            .zip(factors.iter())
            .map(|(m, &a)| m.bel_of(a))
            .product();
        *dev = math::max(*dev, math::abs(bel.value(mask) - expected));
        return Ok(());
    }
    let full = conditionals[depth].frame().full().bits();
    for bits in 1..=full {
        factors[depth] = SubsetMask::new(bits);
        check_cartesian_rec(conditionals, product, bel, depth + 1, factors, dev)?;
    }
    Ok(())
}

/// Report of the disjunctive factorisation check (binary trials).
#[derive(Clone, Debug, Default)]
pub struct DisjunctiveReport {
    pub instances: usize,
    /// Focal count must be `2^n + 1` for full-support binary inputs.
    pub focal_count_ok: bool,
    /// Worst deviation of `m({tuple}^c)` from `∏ m_i({x_i}^c)`.
    pub max_mass_deviation: f64,
    /// Worst deviation of `Bel({tuple}^c)` from `∏ Bel_i({x_i}^c)`.
    pub max_complement_deviation: f64,
    /// Worst deviation of `Pl({tuple}^c)` from 1.
    pub max_pl_deviation: f64,
    pub violations: usize,
}

/// Checks the disjunctive factorisation on random full-support binary
/// inputs against the dense combination.
pub fn check_disjunctive_factorization(
    n: usize,
    trials: usize,
    tol: f64,
    rng: &mut Rng,
) -> Result<DisjunctiveReport> {
    if (1usize << n) > MAX_FRAME_SIZE {
        return Err(Error::Intractable("need 2^n <= 24 for the dense oracle"));
    }
    let frame = crate::frame::Frame::binary();
    let mut report = DisjunctiveReport {
        focal_count_ok: true,
        ..DisjunctiveReport::default()
    };
    for _ in 0..trials {
        let conditionals: Vec<MassFunction> = (0..n)
            .map(|_| sampling::random_full_support(&frame, rng))
            .collect();
        let model = TrialModel::new(conditionals.clone())?;
        let product = model.product_frame()?;
        let dense = model.dense_combination(TrialRule::Disjunctive)?;

        if dense.focal_count() != (1usize << n) + 1 {
            report.focal_count_ok = false;
            report.violations += 1;
        }

        let bel = dense.belief()?;
        let full = product.flatten()?.full();
        let mut dev_mass: f64 = 0.0;
        let mut dev_bel: f64 = 0.0;
        let mut dev_pl: f64 = 0.0;
        for flat in 0..product.total_size() {
            let idx = product.unflatten(flat);
            let complement = SubsetMask::singleton(flat).complement_in(full);
            let expected_mass: f64 = conditionals
                .iter()
                .zip(&idx)
                .map(|(m, &x)| m.mass(SubsetMask::singleton(1 - x)))
                .product();
            dev_mass = math::max(dev_mass, math::abs(dense.mass(complement) - expected_mass));
            let expected_bel: f64 = conditionals
                .iter()
                .zip(&idx)
                .map(|(m, &x)| m.bel_of(SubsetMask::singleton(1 - x)))
                .product();
            dev_bel = math::max(dev_bel, math::abs(bel.value(complement) - expected_bel));
            dev_pl = math::max(dev_pl, math::abs(dense.pl_of(complement) - 1.0));
        }
        report.max_mass_deviation = math::max(report.max_mass_deviation, dev_mass);
        report.max_complement_deviation = math::max(report.max_complement_deviation, dev_bel);
        report.max_pl_deviation = math::max(report.max_pl_deviation, dev_pl);
        if dev_mass > tol || dev_bel > tol || dev_pl > tol {
            report.violations += 1;
        }
        report.instances += 1;
    }
    Ok(report)
}

/// Report of the plausibility-factorisation (conjecture) check.
#[derive(Clone, Debug, Default)]
pub struct ConjectureReport {
    pub instances: usize,
    pub max_deviation: f64,
    /// An instance whose deviation exceeded the counterexample threshold.
    pub counterexample: Option<ConjectureCounterexample>,
}

#[derive(Clone, Debug)]
pub struct ConjectureCounterexample {
    pub instance: usize,
    pub sample: Vec<usize>,
    pub deviation: f64,
}

/// Compares `Pl({tuple})` of the dense conjunctive combination against
/// `∏ Pl_i({x_i})` on random binary inputs; deviations above `threshold`
/// are recorded as counterexample candidates.
pub fn check_plausibility_conjecture(
    n: usize,
    trials: usize,
    threshold: f64,
    rng: &mut Rng,
) -> Result<ConjectureReport> {
    if (1usize << n) > MAX_FRAME_SIZE {
        return Err(Error::Intractable("need 2^n <= 24 for the dense oracle"));
    }
    let frame = crate::frame::Frame::binary();
    let mut report = ConjectureReport::default();
    for instance in 0..trials {
        let conditionals: Vec<MassFunction> = (0..n)
            .map(|_| sampling::random_full_support(&frame, rng))
            .collect();
        let model = TrialModel::new(conditionals.clone())?;
        let product = model.product_frame()?;
        let dense = model.dense_combination(TrialRule::Conjunctive)?;
        for flat in 0..product.total_size() {
            let idx = product.unflatten(flat);
            let expected: f64 = conditionals
                .iter()
                .zip(&idx)
                .map(|(m, &x)| m.pl_of(SubsetMask::singleton(x)))
                .product();
            let got = dense.pl_of(SubsetMask::singleton(flat));
            let dev = math::abs(got - expected);
            if dev > report.max_deviation {
                report.max_deviation = dev;
            }
            if dev > threshold && report.counterexample.is_none() {
                report.counterexample = Some(ConjectureCounterexample {
                    instance,
                    sample: idx.clone(),
                    deviation: dev,
                });
            }
        }
        report.instances += 1;
    }
    Ok(report)
}
