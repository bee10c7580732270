//! Combination and conditioning rules.
//!
//! All rules are commutative; Dempster's rule and the conjunctive and
//! disjunctive rules are associative as well. Yager's and Dubois–Prade's
//! rules are *not* associative in general, so their n-ary form
//! ([`combine_all`]) is defined as a left fold in argument order.
//!
//! Cautious and bold combination, and weighted/discounted variants, are out
//! of scope.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::SubsetMask;
use crate::mass::MassFunction;

/// Threshold on conflict mass above which Dempster combination fails.
pub const TOTAL_CONFLICT_TOL: f64 = 1e-12;

/// The combination rules used anywhere in the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinationRule {
    Dempster,
    Conjunctive,
    Disjunctive,
    Yager,
    DuboisPrade,
}

impl CombinationRule {
    pub fn name(self) -> &'static str {
        match self {
            CombinationRule::Dempster => "dempster",
            CombinationRule::Conjunctive => "conjunctive",
            CombinationRule::Disjunctive => "disjunctive",
            CombinationRule::Yager => "yager",
            CombinationRule::DuboisPrade => "dubois",
        }
    }
}

fn check_same_frame(m1: &MassFunction, m2: &MassFunction) -> Result<()> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    Ok(())
}

/// Products of masses over focal pairs, keyed by `pair_set(B, C)`.
fn pairwise<F>(m1: &MassFunction, m2: &MassFunction, pair_set: F) -> BTreeMap<SubsetMask, f64>
where
    F: Fn(SubsetMask, SubsetMask) -> SubsetMask,
{
    let mut out: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for (b, mb) in m1.focal_elements() {
        for (c, mc) in m2.focal_elements() {
            *out.entry(pair_set(b, c)).or_insert(0.0) += mb * mc;
        }
    }
    out
}

/// Dempster's orthogonal sum: intersection products renormalized by
/// `1 − m∩(∅)`.
pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(m1, m2)?;
    if !m1.is_normalized_regime() || !m2.is_normalized_regime() {
        return Err(Error::NotNormalized);
    }
    let mut prods = pairwise(m1, m2, SubsetMask::intersection);
    let conflict = prods.remove(&SubsetMask::EMPTY).unwrap_or(0.0);
    if conflict >= 1.0 - TOTAL_CONFLICT_TOL {
        return Err(Error::TotalConflict);
    }
    let norm = 1.0 - conflict;
    MassFunction::new(
        m1.frame().clone(),
        prods.into_iter().map(|(s, m)| (s, m / norm)),
        true,
    )
}

/// Smets's conjunctive rule: conflict mass stays on ∅, no renormalization.
pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(m1, m2)?;
    let prods = pairwise(m1, m2, SubsetMask::intersection);
    MassFunction::new(m1.frame().clone(), prods, false)
}

/// Disjunctive rule: `m⊔(A) = Σ_{B∪C=A} m1(B) m2(C)`. Belief values
/// multiply: `Bel⊔(A) = Bel1(A)·Bel2(A)`.
pub fn disjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(m1, m2)?;
    let prods = pairwise(m1, m2, SubsetMask::union);
    let normalized = m1.is_normalized_regime() && m2.is_normalized_regime();
    MassFunction::new(m1.frame().clone(), prods, normalized)
}

/// Yager's rule: conflict mass reassigned to the whole frame.
pub fn yager(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(m1, m2)?;
    if !m1.is_normalized_regime() || !m2.is_normalized_regime() {
        return Err(Error::NotNormalized);
    }
    let mut prods = pairwise(m1, m2, SubsetMask::intersection);
    let conflict = prods.remove(&SubsetMask::EMPTY).unwrap_or(0.0);
    if conflict > 0.0 {
        *prods.entry(m1.frame().full()).or_insert(0.0) += conflict;
    }
    MassFunction::new(m1.frame().clone(), prods, true)
}

/// Dubois–Prade's rule: each conflicting product `m1(B) m2(C)`, `B∩C = ∅`,
/// is reassigned to `B ∪ C` (minimum specificity).
pub fn dubois_prade(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(m1, m2)?;
    if !m1.is_normalized_regime() || !m2.is_normalized_regime() {
        return Err(Error::NotNormalized);
    }
    let prods = pairwise(m1, m2, |b, c| {
        let i = b.intersection(c);
        if i.is_empty() {
            b.union(c)
        } else {
            i
        }
    });
    MassFunction::new(m1.frame().clone(), prods, true)
}

/// Dempster conditioning: combination with the categorical mass function
/// on `event`.
pub fn condition(m: &MassFunction, event: SubsetMask) -> Result<MassFunction> {
    m.frame().check_mask(event)?;
    if event.is_empty() {
        return Err(Error::ZeroPlausibility);
    }
    if m.pl_of(event) <= TOTAL_CONFLICT_TOL {
        return Err(Error::ZeroPlausibility);
    }
    let cat = MassFunction::categorical(m.frame().clone(), event)?;
    dempster(m, &cat)
}

/// Applies the chosen rule to a pair.
pub fn combine(rule: CombinationRule, m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    match rule {
        CombinationRule::Dempster => dempster(m1, m2),
        CombinationRule::Conjunctive => conjunctive(m1, m2),
        CombinationRule::Disjunctive => disjunctive(m1, m2),
        CombinationRule::Yager => yager(m1, m2),
        CombinationRule::DuboisPrade => dubois_prade(m1, m2),
    }
}

/// Left fold of the rule over two or more mass functions, in argument order.
pub fn combine_all(rule: CombinationRule, inputs: &[MassFunction]) -> Result<MassFunction> {
    let (first, rest) = inputs
        .split_first()
        .ok_or(Error::InsufficientData("combine_all needs at least one input"))?;
    let mut acc = first.clone();
    for m in rest {
        acc = combine(rule, &acc, m)?;
    }
    Ok(acc)
}
