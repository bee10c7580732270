//! Generalised maximum-entropy classification over a joint
//! observation × class frame.
//!
//! The classifier maximises a concave belief-measure entropy over the mass
//! simplex, subject to the empirical feature expectations being bracketed
//! by the lower (belief) and upper (plausibility) expectations. The
//! histogram read as a Bayesian assignment is always feasible, with both
//! constraint families tight. An augmented-Lagrangian outer loop with
//! projected-gradient inner iterations handles the equality-degenerate
//! cases that a pure interior barrier cannot.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::mass::{self, MassFunction};
use crate::math;
use crate::opt;

/// Dense mass vectors over `2^|Θ|` subsets cap the joint frame size.
pub const MAX_JOINT_OUTCOMES: usize = 16;

/// The five entropy functionals proved concave for the generalised problem.
///
/// `Ht` is the commonality-based functional `Σ_A ln Q(A)`; maximising it
/// favours the least specific (vacuous) assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyKind {
    Ht,
    Hn,
    Hd,
    HBel,
    HPl,
}

impl EntropyKind {
    pub const ALL: [EntropyKind; 5] = [
        EntropyKind::Ht,
        EntropyKind::Hn,
        EntropyKind::Hd,
        EntropyKind::HBel,
        EntropyKind::HPl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntropyKind::Ht => "Ht",
            EntropyKind::Hn => "Hn",
            EntropyKind::Hd => "Hd",
            EntropyKind::HBel => "HBel",
            EntropyKind::HPl => "HPl",
        }
    }

    pub fn parse(name: &str) -> Option<EntropyKind> {
        EntropyKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// A feature map as a table over joint outcomes.
#[derive(Clone, Debug)]
pub struct FeatureTable {
    pub name: String,
    /// One value per joint outcome `(x, C_k)`.
    pub values: Vec<f64>,
}

/// A generalised max-entropy instance.
#[derive(Clone, Debug)]
pub struct MaxentProblem {
    frame: Frame,
    x_size: usize,
    class_size: usize,
    histogram: Vec<f64>,
    features: Vec<FeatureTable>,
    entropy: EntropyKind,
}

impl MaxentProblem {
    /// Builds a problem over the joint frame `X × 𝒞` with outcome labels
    /// `x|class`. The histogram must sum to 1 and features must match the
    /// joint size.
    pub fn new(
        x_labels: &[&str],
        class_labels: &[&str],
        histogram: Vec<f64>,
        features: Vec<FeatureTable>,
        entropy: EntropyKind,
    ) -> Result<Self> {
        let joint = x_labels.len() * class_labels.len();
        if joint == 0 {
            return Err(Error::EmptyFrame);
        }
        if joint > MAX_JOINT_OUTCOMES {
            return Err(Error::Intractable("joint frame is capped at 16 outcomes"));
        }
        let mut labels: Vec<String> = Vec::with_capacity(joint);
        for x in x_labels {
            for c in class_labels {
                labels.push(alloc::format!("{x}|{c}"));
            }
        }
        let frame = Frame::new(labels)?;
        if histogram.len() != joint {
            return Err(Error::Domain("histogram length must equal the joint size"));
        }
        if histogram.iter().any(|&p| p < 0.0) {
            return Err(Error::Domain("histogram entries must be nonnegative"));
        }
        if math::abs(histogram.iter().sum::<f64>() - 1.0) > 1e-9 {
            return Err(Error::NormalizationError(histogram.iter().sum()));
        }
        for f in &features {
            if f.values.len() != joint {
                return Err(Error::Domain("feature table length must equal the joint size"));
            }
        }
        Ok(MaxentProblem {
            frame,
            x_size: x_labels.len(),
            class_size: class_labels.len(),
            histogram,
            features,
            entropy,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn histogram(&self) -> &[f64] {
        &self.histogram
    }

    pub fn features(&self) -> &[FeatureTable] {
        &self.features
    }

    pub fn entropy_kind(&self) -> EntropyKind {
        self.entropy
    }

    pub fn outcome(&self, x: usize, class: usize) -> usize {
        x * self.class_size + class
    }

    /// The histogram read as a Bayesian mass assignment; always feasible.
    pub fn histogram_mass(&self) -> Result<MassFunction> {
        MassFunction::bayesian(self.frame.clone(), &self.histogram)
    }

    /// Empirical expectation `Ê[φ_m] = Σ p̂(x,C) φ_m(x,C)`.
    pub fn empirical_expectation(&self, feature: usize) -> f64 {
        self.features[feature]
            .values
            .iter()
            .zip(&self.histogram)
            .map(|(f, p)| f * p)
            .sum()
    }

    /// Marginal histogram over observations.
    pub fn x_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.x_size];
        for x in 0..self.x_size {
            for c in 0..self.class_size {
                out[x] += self.histogram[self.outcome(x, c)];
            }
        }
        out
    }
}

/// Entropy of a mass function under the chosen functional.
pub fn entropy(m: &MassFunction, kind: EntropyKind) -> Result<f64> {
    let dense = m.dense()?;
    Ok(entropy_value(&dense, m.frame().size(), kind))
}

fn entropy_value(mass: &[f64], n: usize, kind: EntropyKind) -> f64 {
    let size = 1usize << n;
    match kind {
        EntropyKind::Hn => -(1..size).map(|a| math::xlnx(mass[a])).sum::<f64>(),
        EntropyKind::Hd => (1..size)
            .map(|a| mass[a] * math::ln((a as u32).count_ones() as f64))
            .sum(),
        EntropyKind::Ht => {
            let mut q = mass.to_vec();
            mass::superset_sums(&mut q);
            (0..size).map(|a| math::ln_floored(q[a])).sum()
        }
        EntropyKind::HBel => {
            let mut bel = mass.to_vec();
            bel[0] = 0.0;
            mass::subset_sums(&mut bel);
            -(0..size).map(|a| math::xlnx(bel[a])).sum::<f64>()
        }
        EntropyKind::HPl => {
            let mut s = mass.to_vec();
            mass::subset_sums(&mut s);
            let full = size - 1;
            let total: f64 = mass.iter().sum();
            -(0..size)
                .map(|a| math::xlnx(total - s[!a & full]))
                .sum::<f64>()
        }
    }
}

/// Gradient of the entropy w.r.t. the dense mass vector (entries for
/// nonempty subsets; the ∅ slot is returned as 0).
fn entropy_gradient(mass: &[f64], n: usize, kind: EntropyKind) -> Vec<f64> {
    let size = 1usize << n;
    let full = size - 1;
    let mut grad = vec![0.0; size];
    match kind {
        EntropyKind::Hn => {
            for a in 1..size {
                grad[a] = -(1.0 + math::ln_floored(mass[a]));
            }
        }
        EntropyKind::Hd => {
            for a in 1..size {
                grad[a] = math::ln((a as u32).count_ones() as f64);
            }
        }
        EntropyKind::Ht => {
            let mut q = mass.to_vec();
            mass::superset_sums(&mut q);
            let mut w: Vec<f64> = q
                .iter()
                .map(|&v| 1.0 / math::max(v, 1e-12))
                .collect();
            mass::subset_sums(&mut w);
            grad[1..size].copy_from_slice(&w[1..size]);
        }
        EntropyKind::HBel => {
            let mut bel = mass.to_vec();
            bel[0] = 0.0;
            mass::subset_sums(&mut bel);
            let mut u: Vec<f64> = bel.iter().map(|&v| 1.0 + math::ln_floored(v)).collect();
            mass::superset_sums(&mut u);
            for a in 1..size {
                grad[a] = -u[a];
            }
        }
        EntropyKind::HPl => {
            let mut s = mass.to_vec();
            mass::subset_sums(&mut s);
            let total: f64 = mass.iter().sum();
            let u: Vec<f64> = (0..size)
                .map(|a| 1.0 + math::ln_floored(total - s[!a & full]))
                .collect();
            let t: f64 = u.iter().sum();
            let mut usub = u;
            mass::subset_sums(&mut usub);
            for b in 1..size {
                grad[b] = -(t - usub[!b & full]);
            }
        }
    }
    grad[0] = 0.0;
    grad
}

/// The pair of inequality constraints for one feature at a mass vector:
/// `g¹ = Σ Bel({s}) φ(s) − Ê[φ] ≤ 0` and `g² = Σ φ(s)(p̂(s) − Pl({s})) ≤ 0`.
pub fn constraint_values(problem: &MaxentProblem, m: &MassFunction) -> Result<Vec<(f64, f64)>> {
    if m.frame() != &problem.frame {
        return Err(Error::FrameMismatch);
    }
    let dense = m.dense()?;
    Ok(constraint_values_dense(problem, &dense))
}

fn constraint_values_dense(problem: &MaxentProblem, mass: &[f64]) -> Vec<(f64, f64)> {
    let n = problem.frame.size();
    let size = 1usize << n;
    let full = size - 1;
    // Pl({s}) = Σ_{B ∋ s} m(B).
    let mut pl = vec![0.0; n];
    for b in 1..size {
        if mass[b] != 0.0 {
            let mut bits = b;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                pl[s] += mass[b];
                bits &= bits - 1;
            }
        }
    }
    let _ = full;
    problem
        .features
        .iter()
        .enumerate()
        .map(|(j, feature)| {
            let empirical = problem.empirical_expectation(j);
            let mut g1 = -empirical;
            let mut g2 = 0.0;
            for s in 0..n {
                g1 += mass[1 << s] * feature.values[s];
                g2 += feature.values[s] * (problem.histogram[s] - pl[s]);
            }
            (g1, g2)
        })
        .collect()
}

/// Gradients of `(g¹_j, g²_j)` w.r.t. the dense mass vector.
fn constraint_gradients(problem: &MaxentProblem, feature: usize) -> (Vec<f64>, Vec<f64>) {
    let n = problem.frame.size();
    let size = 1usize << n;
    let mut g1 = vec![0.0; size];
    let mut g2 = vec![0.0; size];
    let values = &problem.features[feature].values;
    for s in 0..n {
        g1[1 << s] = values[s];
    }
    for (b, slot) in g2.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        let mut bits = b;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            acc += values[s];
            bits &= bits - 1;
        }
        *slot = -acc;
    }
    (g1, g2)
}

/// Solver configuration.
#[derive(Clone, Debug)]
pub struct MaxentConfig {
    pub rho_initial: f64,
    pub rho_growth: f64,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub inner_tol: f64,
    pub kkt_tol: f64,
}

impl Default for MaxentConfig {
    fn default() -> Self {
        MaxentConfig {
            rho_initial: 10.0,
            rho_growth: 4.0,
            outer_iterations: 60,
            inner_iterations: 200_000,
            inner_tol: 1e-10,
            kkt_tol: 1e-6,
        }
    }
}

/// KKT residual report for the fitted assignment.
#[derive(Clone, Debug)]
pub struct MaxentKkt {
    /// Stationarity residual over coordinates with positive mass.
    pub stationarity: f64,
    /// Violation of `ν ≥ 0` on zero-mass coordinates.
    pub active_dual: f64,
    /// Largest primal violation `max(g, 0)`.
    pub primal: f64,
    /// Largest multiplier negativity.
    pub dual: f64,
    /// Largest slackness product |μ·g|.
    pub slackness: f64,
    pub max_residual: f64,
}

/// Result of [`fit_maxent`].
#[derive(Clone, Debug)]
pub struct MaxentFit {
    pub mass: MassFunction,
    pub objective: f64,
    /// Multipliers of the `g¹` constraints.
    pub mu1: Vec<f64>,
    /// Multipliers of the `g²` constraints.
    pub mu2: Vec<f64>,
    /// Multiplier of the normalization equality.
    pub lambda: f64,
    pub kkt: MaxentKkt,
    pub outer_iterations: usize,
    pub converged: bool,
}

/// Maximises the chosen entropy over the mass simplex subject to the
/// bracketing constraints, by an augmented Lagrangian with
/// projected-gradient inner solves. The histogram assignment seeds the
/// iteration, so a feasible start always exists.
pub fn fit_maxent(problem: &MaxentProblem, config: &MaxentConfig) -> Result<MaxentFit> {
    let n = problem.frame.size();
    let size = 1usize << n;
    let m_features = problem.features.len();

    // Precompute constraint gradients (constant: g is affine in m).
    let grads: Vec<(Vec<f64>, Vec<f64>)> = (0..m_features)
        .map(|j| constraint_gradients(problem, j))
        .collect();

    // Start from a slightly smoothed histogram (interior of the simplex).
    let mut x = vec![0.0; size];
    for s in 0..n {
        x[1 << s] = problem.histogram[s];
    }
    let smoothing = 1e-6;
    for slot in x.iter_mut().skip(1) {
        *slot = (1.0 - smoothing) * *slot + smoothing / (size - 1) as f64;
    }

    let mut mu1 = vec![0.0; m_features];
    let mut mu2 = vec![0.0; m_features];
    let mut rho = config.rho_initial;
    let mut outer_done = 0;

    for outer in 0..config.outer_iterations {
        outer_done = outer + 1;
        // Inner: minimize F(x) = −H(x) + Σ ψ(g_j; μ_j, ρ) over the simplex.
        let value_grad = |x: &[f64]| -> (f64, Vec<f64>) {
            let h = entropy_value(x, n, problem.entropy);
            let hgrad = entropy_gradient(x, n, problem.entropy);
            let gs = constraint_values_dense(problem, x);
            let mut value = -h;
            let mut grad: Vec<f64> = hgrad.iter().map(|&g| -g).collect();
            for (j, &(g1, g2)) in gs.iter().enumerate() {
                for (&mu, g, cgrad) in
                    [(&mu1[j], g1, &grads[j].0), (&mu2[j], g2, &grads[j].1)]
                {
                    let shifted = mu + rho * g;
                    if shifted > 0.0 {
                        value += (shifted * shifted - mu * mu) / (2.0 * rho);
                        for (slot, &d) in grad.iter_mut().zip(cgrad) {
                            *slot += shifted * d;
                        }
                    } else {
                        value += -(mu * mu) / (2.0 * rho);
                    }
                }
            }
            grad[0] = 0.0;
            (value, grad)
        };

        let project = |proposal: &[f64]| -> Vec<f64> {
            let mut projected = opt::project_simplex(&proposal[1..], 1.0);
            projected.insert(0, 0.0);
            projected
        };
        let step_from = |x: &[f64], g: &[f64], t: f64| -> Vec<f64> {
            let proposal: Vec<f64> = x
                .iter()
                .zip(g)
                .enumerate()
                .map(|(i, (xi, gi))| if i == 0 { 0.0 } else { xi - t * gi })
                .collect();
            project(&proposal)
        };
        let distance = |a: &[f64], b: &[f64]| -> f64 {
            math::sqrt(a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum())
        };

        // Phase 1: projected gradient with backtracking on the value.
        let mut step = 1.0;
        let mut good_step = 1e-3;
        let (mut fx, mut gx) = value_grad(&x);
        for _ in 0..config.inner_iterations {
            let projected = step_from(&x, &gx, step);
            let (fp, gp) = value_grad(&projected);
            let displacement = distance(&projected, &x);
            if fp <= fx - 0.25 * displacement * displacement / math::max(step, 1e-12) {
                x = projected;
                fx = fp;
                gx = gp;
                good_step = step;
                step = math::min(step * 1.3, 1e4);
                // Stationarity measured by the unit-step gradient mapping
                // (large accepted steps would deflate the raw displacement).
                let mapping = distance(&step_from(&x, &gx, 1.0), &x);
                if mapping <= config.inner_tol {
                    break;
                }
            } else {
                step *= 0.5;
                if step < 1e-18 {
                    break;
                }
            }
        }
        // Phase 2: fixed-step polish. The value-based line search stalls at
        // the floating-point noise floor of F; the fixed-point iteration
        // x ← P(x − t ∇F) keeps contracting below it. Guarded by the
        // unit-step mapping: only mapping-improving iterates are kept, and
        // the step shrinks whenever the iteration wanders.
        let polish_budget = if size <= 1 << 12 { 4_000 } else { 500 };
        let _ = good_step;
        let mut t = 1.0;
        let (_, g0) = value_grad(&x);
        let mut best_mapping = distance(&step_from(&x, &g0, 1.0), &x);
        'polish: for _attempt in 0..6 {
            if best_mapping <= config.inner_tol {
                break;
            }
            let mut cur = x.clone();
            let mut strikes = 0usize;
            for i in 0..polish_budget {
                let (_, g) = value_grad(&cur);
                cur = step_from(&cur, &g, t);
                if i % 16 == 15 {
                    let (_, g2) = value_grad(&cur);
                    let mapping = distance(&step_from(&cur, &g2, 1.0), &cur);
                    if mapping < best_mapping {
                        best_mapping = mapping;
                        x = cur.clone();
                        strikes = 0;
                        if mapping <= config.inner_tol {
                            break 'polish;
                        }
                    } else {
                        strikes += 1;
                        if strikes >= 4 || mapping > 16.0 * best_mapping {
                            break;
                        }
                    }
                }
            }
            t *= 0.125;
        }

        // Multiplier update and feasibility check.
        let gs = constraint_values_dense(problem, &x);
        let mut max_violation: f64 = 0.0;
        for (j, &(g1, g2)) in gs.iter().enumerate() {
            mu1[j] = math::max(0.0, mu1[j] + rho * g1);
            mu2[j] = math::max(0.0, mu2[j] + rho * g2);
            max_violation = math::max(max_violation, math::max(g1, g2));
        }
        if max_violation < 1e-10 && outer > 2 {
            break;
        }
        rho *= config.rho_growth;
    }

    // Multiplier refinement: the certificate needs *some* nonnegative
    // multipliers satisfying stationarity, and the augmented-Lagrangian
    // estimates lag when active-constraint gradients are dependent. Fit
    // (λ, μ over the active set) to the stationarity system on the free
    // coordinates by least squares, dropping negative multipliers.
    let active_tol = 1e-8;
    let hgrad = entropy_gradient(&x, n, problem.entropy);
    let free_coords: Vec<usize> = (1..size).filter(|&b| x[b] > active_tol).collect();
    let gs_final = constraint_values_dense(problem, &x);
    let mut active: Vec<(usize, bool)> = Vec::new(); // (feature, is_g1)
    for (j, &(g1, g2)) in gs_final.iter().enumerate() {
        if g1 >= -1e-7 {
            active.push((j, true));
        }
        if g2 >= -1e-7 {
            active.push((j, false));
        }
    }
    // Certificate LP over coordinates B = 1..2^n−1, variables
    // (λ⁺, λ⁻, μ_k ≥ 0, e±_B on free rows, s_B ≥ 0 on zero rows):
    //   free B:  λ + Σ μ_k d_k(B) + e⁺ − e⁻ = ∂H(B)
    //   zero B:  λ + Σ μ_k d_k(B) − s     = ∂H(B)   (ν = s ≥ 0)
    // minimising Σ(e⁺ + e⁻). Kept for frames small enough that the LP
    // stays trivial; the multipliers certify stationarity and the sign
    // conditions simultaneously.
    if !free_coords.is_empty() && size <= 1 << 11 {
        let coords: Vec<usize> = (1..size).collect();
        let k_active = active.len();
        let n_free = free_coords.len();
        let mut free_slot = vec![usize::MAX; size];
        for (i, &b) in free_coords.iter().enumerate() {
            free_slot[b] = i;
        }
        let zero_coords: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|&b| free_slot[b] == usize::MAX)
            .collect();
        let mut zero_slot = vec![usize::MAX; size];
        for (i, &b) in zero_coords.iter().enumerate() {
            zero_slot[b] = i;
        }
        let vars = 2 + k_active + 2 * n_free + zero_coords.len();
        let mut a = Vec::with_capacity(coords.len());
        let mut rhs = Vec::with_capacity(coords.len());
        for &b in &coords {
            let mut row = vec![0.0; vars];
            row[0] = 1.0;
            row[1] = -1.0;
            for (k, &(j, is_g1)) in active.iter().enumerate() {
                row[2 + k] = if is_g1 { grads[j].0[b] } else { grads[j].1[b] };
            }
            if free_slot[b] != usize::MAX {
                row[2 + k_active + 2 * free_slot[b]] = 1.0;
                row[2 + k_active + 2 * free_slot[b] + 1] = -1.0;
            } else {
                row[2 + k_active + 2 * n_free + zero_slot[b]] = -1.0;
            }
            a.push(row);
            rhs.push(hgrad[b]);
        }
        let mut cost = vec![0.0; vars];
        for slot in cost.iter_mut().skip(2 + k_active).take(2 * n_free) {
            *slot = 1.0;
        }
        if let Ok(solution) = opt::simplex_lp(&a, &rhs, &cost) {
            for m in mu1.iter_mut().chain(mu2.iter_mut()) {
                *m = 0.0;
            }
            for (k, &(j, is_g1)) in active.iter().enumerate() {
                let value = math::max(solution[2 + k], 0.0);
                if is_g1 {
                    mu1[j] = value;
                } else {
                    mu2[j] = value;
                }
            }
        }
    }

    // KKT report with the refined multipliers.
    let mut residual: Vec<f64> = hgrad.clone();
    for (j, (g1_grad, g2_grad)) in grads.iter().enumerate() {
        for (slot, (&d1, &d2)) in residual.iter_mut().zip(g1_grad.iter().zip(g2_grad)) {
            *slot -= mu1[j] * d1 + mu2[j] * d2;
        }
    }
    let free: Vec<usize> = free_coords;
    let lambda = if free.is_empty() {
        0.0
    } else {
        free.iter().map(|&b| residual[b]).sum::<f64>() / free.len() as f64
    };
    let stationarity = free
        .iter()
        .map(|&b| math::abs(residual[b] - lambda))
        .fold(0.0, math::max);
    let active_dual = (1..size)
        .filter(|&b| x[b] <= active_tol)
        .map(|b| math::max(residual[b] - lambda, 0.0))
        .fold(0.0, math::max);
    let gs = constraint_values_dense(problem, &x);
    let primal = gs
        .iter()
        .map(|&(a, b)| math::max(math::max(a, b), 0.0))
        .fold(0.0, math::max);
    let slackness = gs
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| math::max(math::abs(mu1[j] * a), math::abs(mu2[j] * b)))
        .fold(0.0, math::max);
    let kkt = MaxentKkt {
        stationarity,
        active_dual,
        primal,
        dual: 0.0,
        slackness,
        max_residual: [stationarity, active_dual, primal, slackness]
            .into_iter()
            .fold(0.0, math::max),
    };

    let entries: Vec<(SubsetMask, f64)> = (1..size)
        .filter(|&b| x[b] > 1e-15)
        .map(|b| (SubsetMask::new(b as u32), x[b]))
        .collect();
    let mass = MassFunction::new(problem.frame.clone(), entries, true)?;
    let objective = entropy_value(&x, n, problem.entropy);
    let converged = kkt.max_residual <= config.kkt_tol;
    Ok(MaxentFit {
        mass,
        objective,
        mu1,
        mu2,
        lambda,
        kkt,
        outer_iterations: outer_done,
        converged,
    })
}

/// Classical log-linear maximum-entropy fit.
#[derive(Clone, Debug)]
pub struct ClassicalFit {
    pub lambdas: Vec<f64>,
    /// Conditional table `p(C_k | x)`, indexed `[x][class]`.
    pub conditional: Vec<Vec<f64>>,
    /// Joint distribution `p̂(x) p(C_k|x)` over outcomes.
    pub joint: Vec<f64>,
    /// Sup-norm moment-matching residual.
    pub moment_residual: f64,
    pub converged: bool,
}

/// Solves the classical equality-constrained max-entropy problem by
/// minimising its convex dual; the solution is the log-linear model
/// `p(C|x) ∝ exp(Σ λ_m φ_m(x, C))`.
pub fn classical_maxent(problem: &MaxentProblem) -> Result<ClassicalFit> {
    let m_features = problem.features.len();
    let x_marginal = problem.x_marginal();
    let empirical: Vec<f64> = (0..m_features)
        .map(|j| problem.empirical_expectation(j))
        .collect();

    let conditional_for = |lambdas: &[f64]| -> Vec<Vec<f64>> {
        (0..problem.x_size)
            .map(|x| {
                let scores: Vec<f64> = (0..problem.class_size)
                    .map(|c| {
                        let o = problem.outcome(x, c);
                        lambdas
                            .iter()
                            .enumerate()
                            .map(|(j, &l)| l * problem.features[j].values[o])
                            .sum()
                    })
                    .collect();
                let peak = scores.iter().fold(f64::NEG_INFINITY, |a, &b| math::max(a, b));
                let weights: Vec<f64> = scores.iter().map(|&s| math::exp(s - peak)).collect();
                let z: f64 = weights.iter().sum();
                weights.into_iter().map(|w| w / z).collect()
            })
            .collect()
    };

    // Dual objective: G(λ) = Σ_x p̂(x) ln Z_λ(x) − λ·Ê; we maximise −G.
    let f = |lambdas: &[f64]| -> Option<(f64, Vec<f64>)> {
        let mut value = 0.0;
        let mut grad = vec![0.0; m_features];
        for x in 0..problem.x_size {
            if x_marginal[x] == 0.0 {
                continue;
            }
            let scores: Vec<f64> = (0..problem.class_size)
                .map(|c| {
                    let o = problem.outcome(x, c);
                    lambdas
                        .iter()
                        .enumerate()
                        .map(|(j, &l)| l * problem.features[j].values[o])
                        .sum()
                })
                .collect();
            let peak = scores.iter().fold(f64::NEG_INFINITY, |a, &b| math::max(a, b));
            let z: f64 = scores.iter().map(|&s| math::exp(s - peak)).sum();
            value += x_marginal[x] * (math::ln(z) + peak);
            for c in 0..problem.class_size {
                let p = math::exp(scores[c] - peak) / z;
                let o = problem.outcome(x, c);
                for (j, slot) in grad.iter_mut().enumerate() {
                    *slot += x_marginal[x] * p * problem.features[j].values[o];
                }
            }
        }
        for j in 0..m_features {
            value -= lambdas[j] * empirical[j];
            grad[j] = empirical[j] - grad[j]; // gradient of −G
        }
        Some((-value, grad))
    };

    let out = if m_features == 0 {
        opt::MaximizeOutcome {
            x: Vec::new(),
            value: 0.0,
            grad_norm: 0.0,
            iterations: 0,
            converged: true,
            values: Vec::new(),
        }
    } else {
        opt::maximize_newton(&f, &vec![0.0; m_features], 1e-10, 500)
    };
    let lambdas = out.x.clone();
    let conditional = conditional_for(&lambdas);
    let mut joint = vec![0.0; problem.frame.size()];
    for x in 0..problem.x_size {
        for c in 0..problem.class_size {
            joint[problem.outcome(x, c)] = x_marginal[x] * conditional[x][c];
        }
    }
    let moment_residual = (0..m_features)
        .map(|j| {
            let model: f64 = joint
                .iter()
                .zip(&problem.features[j].values)
                .map(|(p, f)| p * f)
                .sum();
            math::abs(model - empirical[j])
        })
        .fold(0.0, math::max);
    if m_features > 0 && moment_residual > 1e-8 {
        return Err(Error::NonConvergence);
    }
    Ok(ClassicalFit {
        lambdas,
        conditional,
        joint,
        moment_residual,
        converged: out.converged,
    })
}

/// Total-variation distance between a fitted assignment and a dense
/// reference distribution on outcomes (read as a Bayesian assignment).
pub fn total_variation_to_bayesian(m: &MassFunction, reference: &[f64]) -> f64 {
    let n = m.frame().size();
    let mut tv = 0.0;
    for s in 0..n {
        tv += math::abs(m.mass(SubsetMask::singleton(s)) - reference[s]);
    }
    // Mass on non-singletons counts entirely toward the distance.
    let singleton_total: f64 = (0..n).map(|s| m.mass(SubsetMask::singleton(s))).sum();
    tv += m.total_mass() - singleton_total;
    0.5 * tv
}
