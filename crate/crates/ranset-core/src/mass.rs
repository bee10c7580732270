//! Mass functions and the belief / plausibility / commonality transform
//! kernel.
//!
//! Masses are stored sparsely (focal elements only); dense `2^n` vectors are
//! materialized per transform call. Fast transforms are in-place subset /
//! superset sums in `O(n 2^n)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
use crate::math;

/// Tolerance on the mass-sum invariant after construction.
pub const MASS_SUM_TOL: f64 = 1e-12;
/// Constructors renormalize when the input sum is within this distance of 1.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// A basic probability assignment over a finite frame.
///
/// With `normalized == true` the empty set carries no mass; the unnormalized
/// regime admits mass on ∅ (conjunctive conflict, believability geometry).
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: BTreeMap<SubsetMask, f64>,
    normalized: bool,
}

impl MassFunction {
    /// Builds a mass function, dropping zero entries, rejecting negative
    /// masses and renormalizing when the total is within `1e-9` of 1.
    pub fn new<I>(frame: Frame, entries: I, normalized: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, f64)>,
    {
        let mut masses: BTreeMap<SubsetMask, f64> = BTreeMap::new();
        for (set, m) in entries {
            frame.check_mask(set)?;
            if !(0.0..=1.0 + RENORMALIZE_TOL).contains(&m) {
                return Err(Error::MassOutOfRange {
                    bits: set.bits(),
                    mass: m,
                });
            }
            if m > 0.0 {
                *masses.entry(set).or_insert(0.0) += m;
            }
        }
        let total: f64 = masses.values().sum();
        if math::abs(total - 1.0) > RENORMALIZE_TOL {
            return Err(Error::NormalizationError(total));
        }
        // Drift below the invariant tolerance is left untouched so that
        // serialisation round trips are exact.
        if math::abs(total - 1.0) > MASS_SUM_TOL {
            for v in masses.values_mut() {
                *v /= total;
            }
        }
        if normalized {
            if let Some(&m0) = masses.get(&SubsetMask::EMPTY) {
                return Err(Error::MassOnEmptySet(m0));
            }
        }
        Ok(MassFunction {
            frame,
            masses,
            normalized,
        })
    }

    /// The vacuous mass function, all mass on Θ.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full();
        MassFunction {
            frame,
            masses: BTreeMap::from([(full, 1.0)]),
            normalized: true,
        }
    }

    /// The categorical mass function focused on `set`.
    pub fn categorical(frame: Frame, set: SubsetMask) -> Result<Self> {
        frame.check_mask(set)?;
        let normalized = !set.is_empty();
        Ok(MassFunction {
            frame,
            masses: BTreeMap::from([(set, 1.0)]),
            normalized,
        })
    }

    /// A Bayesian mass function from a probability vector over outcomes.
    pub fn bayesian(frame: Frame, probs: &[f64]) -> Result<Self> {
        if probs.len() != frame.size() {
            return Err(Error::Domain("probability vector length must equal frame size"));
        }
        let entries: Vec<(SubsetMask, f64)> = probs
            .iter()
            .enumerate()
            .map(|(i, &p)| (SubsetMask::singleton(i), p))
            .collect();
        MassFunction::new(frame, entries, true)
    }

    #[inline]
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Whether the mass function lives in the normalized regime (no mass
    /// on ∅).
    #[inline]
    pub fn is_normalized_regime(&self) -> bool {
        self.normalized
    }

    pub fn mass(&self, set: SubsetMask) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    /// Focal elements with their masses, ascending mask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.masses.iter().map(|(&s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.values().sum()
    }

    /// Belief of a single event, `Bel(A) = Σ_{∅≠B⊆A} m(B)`, computed from
    /// the sparse representation.
    pub fn bel_of(&self, set: SubsetMask) -> f64 {
        self.masses
            .iter()
            .filter(|(s, _)| !s.is_empty() && s.is_subset_of(set))
            .map(|(_, m)| m)
            .sum()
    }

    /// Plausibility of a single event, `Pl(A) = Σ_{B∩A≠∅} m(B)`.
    pub fn pl_of(&self, set: SubsetMask) -> f64 {
        self.masses
            .iter()
            .filter(|(s, _)| s.intersects(set))
            .map(|(_, m)| m)
            .sum()
    }

    /// Dense mass vector indexed by subset mask.
    pub fn dense(&self) -> Result<Vec<f64>> {
        if self.frame.size() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(self.frame.size()));
        }
        let mut v = vec![0.0; self.frame.subset_count()];
        for (&s, &m) in &self.masses {
            v[s.bits() as usize] = m;
        }
        Ok(v)
    }

    /// Belief function: `Bel(A) = Σ_{B⊆A, B≠∅} m(B)` via the subset-sum
    /// (zeta) transform.
    pub fn belief(&self) -> Result<SetFunction> {
        let mut v = self.dense()?;
        v[0] = 0.0; // ∅ never contributes to Bel
        subset_sums(&mut v);
        v[0] = 0.0;
        Ok(SetFunction {
            frame: self.frame.clone(),
            values: v,
            kind: SetFunctionKind::Belief,
        })
    }

    /// Believability: like belief but with mass on ∅ included,
    /// `b(A) = Σ_{∅⊆B⊆A} m(B)` (unnormalized regime).
    pub fn believability(&self) -> Result<SetFunction> {
        let mut v = self.dense()?;
        subset_sums(&mut v);
        Ok(SetFunction {
            frame: self.frame.clone(),
            values: v,
            kind: SetFunctionKind::Believability,
        })
    }

    /// Plausibility function: `Pl(A) = Σ_{B∩A≠∅} m(B)`.
    pub fn plausibility(&self) -> Result<SetFunction> {
        // Pl(A) = total − Σ_{B ⊆ A^c} m(B), valid in both regimes.
        let mut v = self.dense()?;
        subset_sums(&mut v);
        let total = self.total_mass();
        let full = self.frame.full().bits() as usize;
        let values = (0..=full)
            .map(|a| total - v[!a & full])
            .collect();
        Ok(SetFunction {
            frame: self.frame.clone(),
            values,
            kind: SetFunctionKind::Plausibility,
        })
    }

    /// Commonality: `Q(A) = Σ_{B⊇A} m(B)` via the superset-sum transform.
    pub fn commonality(&self) -> Result<SetFunction> {
        let mut v = self.dense()?;
        superset_sums(&mut v);
        Ok(SetFunction {
            frame: self.frame.clone(),
            values: v,
            kind: SetFunctionKind::Commonality,
        })
    }

    /// Largest absolute mass difference against another assignment on the
    /// same frame.
    pub fn sup_diff(&self, other: &MassFunction) -> f64 {
        let mut d = 0.0;
        for (&s, &m) in &self.masses {
            d = math::max(d, math::abs(m - other.mass(s)));
        }
        for (&s, &m) in &other.masses {
            d = math::max(d, math::abs(m - self.mass(s)));
        }
        d
    }

    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        self.frame == other.frame && self.sup_diff(other) <= tol
    }
}

/// Which set function a dense vector holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFunctionKind {
    Belief,
    Plausibility,
    Commonality,
    Believability,
    Capacity,
}

/// A dense set function over the power set of a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunction {
    frame: Frame,
    values: Vec<f64>,
    kind: SetFunctionKind,
}

impl SetFunction {
    /// Wraps a dense vector as a capacity; requires `values[∅] = 0` and
    /// `values[Θ] = 1`.
    pub fn capacity(frame: Frame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.subset_count() {
            return Err(Error::Domain("capacity vector must have 2^n entries"));
        }
        if math::abs(values[0]) > MASS_SUM_TOL {
            return Err(Error::Domain("capacity must vanish on the empty set"));
        }
        if math::abs(values[values.len() - 1] - 1.0) > 1e-9 {
            return Err(Error::Domain("capacity must equal 1 on the full frame"));
        }
        Ok(SetFunction {
            frame,
            values,
            kind: SetFunctionKind::Capacity,
        })
    }

    #[inline]
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    #[inline]
    pub fn kind(&self) -> SetFunctionKind {
        self.kind
    }

    #[inline]
    pub fn value(&self, set: SubsetMask) -> f64 {
        self.values[set.bits() as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Möbius inversion, `m(A) = Σ_{B⊆A} (−1)^{|A∖B|} v(B)`.
    ///
    /// The result may carry negative entries for a general capacity, so it is
    /// returned raw; see [`MoebiusInverse::into_mass_function`].
    pub fn moebius_inverse(&self) -> MoebiusInverse {
        let mut v = self.values.clone();
        inv_subset_sums(&mut v);
        MoebiusInverse {
            frame: self.frame.clone(),
            values: v,
        }
    }

    /// Checks the Chateauneuf–Jaffray 2-monotonicity criterion:
    /// `Σ_{{x,y}⊆E⊆A} m(E) ≥ −tol` for every pair `{x,y}` and every
    /// `A ⊇ {x,y}`, with `m` the Möbius inverse.
    pub fn is_2_monotone(&self, tol: f64) -> TwoMonotonicityReport {
        let n = self.frame.size();
        let m = self.moebius_inverse();
        for x in 0..n {
            for y in (x + 1)..n {
                let pair = SubsetMask::singleton(x).union(SubsetMask::singleton(y));
                // Collect m(E) for E ⊇ {x,y}, indexed by E ∖ {x,y} inside the
                // reduced (n−2)-outcome lattice, then subset-sum to get the
                // partial sums for every A ⊇ {x,y} at once.
                let rest: Vec<usize> = (0..n).filter(|&i| i != x && i != y).collect();
                let mut reduced = vec![0.0; 1 << rest.len()];
                for (idx, slot) in reduced.iter_mut().enumerate() {
                    let mut e = pair;
                    for (bit, &outcome) in rest.iter().enumerate() {
                        if idx >> bit & 1 == 1 {
                            e = e.union(SubsetMask::singleton(outcome));
                        }
                    }
                    *slot = m.value(e);
                }
                subset_sums(&mut reduced);
                for (idx, &sum) in reduced.iter().enumerate() {
                    if sum < -tol {
                        let mut a = pair;
                        for (bit, &outcome) in rest.iter().enumerate() {
                            if idx >> bit & 1 == 1 {
                                a = a.union(SubsetMask::singleton(outcome));
                            }
                        }
                        return TwoMonotonicityReport {
                            is_2_monotone: false,
                            violation: Some(TwoMonotonicityViolation {
                                x,
                                y,
                                superset: a,
                                partial_sum: sum,
                            }),
                        };
                    }
                }
            }
        }
        TwoMonotonicityReport {
            is_2_monotone: true,
            violation: None,
        }
    }
}

/// Result of [`SetFunction::is_2_monotone`].
#[derive(Clone, Debug, PartialEq)]
pub struct TwoMonotonicityReport {
    pub is_2_monotone: bool,
    pub violation: Option<TwoMonotonicityViolation>,
}

/// First violated Chateauneuf–Jaffray constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoMonotonicityViolation {
    pub x: usize,
    pub y: usize,
    pub superset: SubsetMask,
    pub partial_sum: f64,
}

/// Raw output of Möbius inversion; may hold negative entries.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusInverse {
    frame: Frame,
    values: Vec<f64>,
}

impl MoebiusInverse {
    #[inline]
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    #[inline]
    pub fn value(&self, set: SubsetMask) -> f64 {
        self.values[set.bits() as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Converts into a [`MassFunction`], dropping numerical dust with
    /// `|v| ≤ tol` and rejecting anything below `−tol`.
    pub fn into_mass_function(self, tol: f64, normalized: bool) -> Result<MassFunction> {
        let mut entries = Vec::new();
        for (bits, &v) in self.values.iter().enumerate() {
            if v < -tol {
                return Err(Error::MassOutOfRange {
                    bits: bits as u32,
                    mass: v,
                });
            }
            if v > tol {
                entries.push((SubsetMask::new(bits as u32), v));
            }
        }
        MassFunction::new(self.frame, entries, normalized)
    }
}

/// In-place subset-sum (zeta) transform: `v[A] ← Σ_{B⊆A} v[B]`.
pub fn subset_sums(v: &mut [f64]) {
    debug_assert!(v.len().is_power_of_two());
    let mut bit = 1;
    while bit < v.len() {
        for a in 0..v.len() {
            if a & bit != 0 {
                v[a] += v[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse subset-sum (Möbius) transform.
pub fn inv_subset_sums(v: &mut [f64]) {
    debug_assert!(v.len().is_power_of_two());
    let mut bit = 1;
    while bit < v.len() {
        for a in 0..v.len() {
            if a & bit != 0 {
                v[a] -= v[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place superset-sum transform: `v[A] ← Σ_{B⊇A} v[B]`.
pub fn superset_sums(v: &mut [f64]) {
    debug_assert!(v.len().is_power_of_two());
    let mut bit = 1;
    while bit < v.len() {
        for a in 0..v.len() {
            if a & bit == 0 {
                v[a] += v[a | bit];
            }
        }
        bit <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame3() -> Frame {
        Frame::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn constructor_renormalizes_small_drift() {
        let f = frame3();
        let m = MassFunction::new(
            f.clone(),
            [(f.full(), 0.5 + 2e-10), (SubsetMask::singleton(0), 0.5)],
            true,
        )
        .unwrap();
        assert!(math::abs(m.total_mass() - 1.0) <= MASS_SUM_TOL);
    }

    #[test]
    fn constructor_rejects_bad_sum_and_negative_mass() {
        let f = frame3();
        assert!(matches!(
            MassFunction::new(f.clone(), [(f.full(), 0.999)], true),
            Err(Error::NormalizationError(_))
        ));
        assert!(matches!(
            MassFunction::new(
                f.clone(),
                [(f.full(), 1.2), (SubsetMask::singleton(0), -0.2)],
                true
            ),
            Err(Error::MassOutOfRange { .. })
        ));
    }

    #[test]
    fn constructor_rejects_mass_on_empty_set_in_normalized_regime() {
        let f = frame3();
        let entries = [(SubsetMask::EMPTY, 0.25), (f.full(), 0.75)];
        assert!(matches!(
            MassFunction::new(f.clone(), entries, true),
            Err(Error::MassOnEmptySet(_))
        ));
        assert!(MassFunction::new(f, entries, false).is_ok());
    }

    #[test]
    fn vacuous_belief_is_indicator_of_full_frame() {
        let f = frame3();
        let bel = MassFunction::vacuous(f.clone()).belief().unwrap();
        for s in f.subsets() {
            let expected = if s == f.full() { 1.0 } else { 0.0 };
            assert_eq!(bel.value(s), expected);
        }
    }

    #[test]
    fn bayesian_belief_is_additive_and_equals_plausibility() {
        let f = frame3();
        let m = MassFunction::bayesian(f.clone(), &[0.2, 0.3, 0.5]).unwrap();
        let bel = m.belief().unwrap();
        let pl = m.plausibility().unwrap();
        for s in f.subsets() {
            let additive: f64 = s.outcomes().map(|i| [0.2, 0.3, 0.5][i]).sum();
            assert!(math::abs(bel.value(s) - additive) < 1e-15);
            assert!(math::abs(pl.value(s) - additive) < 1e-15);
        }
    }

    #[test]
    fn vacuous_plausibility_is_one_off_empty() {
        let f = frame3();
        let pl = MassFunction::vacuous(f.clone()).plausibility().unwrap();
        assert_eq!(pl.value(SubsetMask::EMPTY), 0.0);
        for s in f.subsets().filter(|s| !s.is_empty()) {
            assert_eq!(pl.value(s), 1.0);
        }
    }

    #[test]
    fn commonality_of_bayesian_vanishes_above_singletons() {
        let f = frame3();
        let m = MassFunction::bayesian(f.clone(), &[0.2, 0.3, 0.5]).unwrap();
        let q = m.commonality().unwrap();
        assert!(math::abs(q.value(SubsetMask::singleton(1)) - 0.3) < 1e-15);
        for s in f.subsets().filter(|s| s.cardinality() > 1) {
            assert_eq!(q.value(s), 0.0);
        }
    }

    #[test]
    fn moebius_recovers_vacuous_and_additive_masses() {
        let f = frame3();
        let bel = MassFunction::vacuous(f.clone()).belief().unwrap();
        let m = bel.moebius_inverse().into_mass_function(1e-10, true).unwrap();
        assert!(m.approx_eq(&MassFunction::vacuous(f.clone()), 1e-12));

        let bayes = MassFunction::bayesian(f.clone(), &[0.1, 0.6, 0.3]).unwrap();
        let back = bayes
            .belief()
            .unwrap()
            .moebius_inverse()
            .into_mass_function(1e-10, true)
            .unwrap();
        assert!(back.approx_eq(&bayes, 1e-12));
        assert_eq!(back.focal_count(), 3); // singletons only
    }

    #[test]
    fn any_belief_function_is_2_monotone() {
        let f = frame3();
        let m = MassFunction::new(
            f.clone(),
            [
                (SubsetMask::new(0b011), 0.4),
                (SubsetMask::new(0b101), 0.1),
                (SubsetMask::singleton(2), 0.2),
                (f.full(), 0.3),
            ],
            true,
        )
        .unwrap();
        let report = m.belief().unwrap().is_2_monotone(1e-12);
        assert!(report.is_2_monotone);
    }

    #[test]
    fn detects_2_monotonicity_violation() {
        // Möbius masses: m({x,y}) = −0.1 with no compensating higher terms.
        let f = frame3();
        let mut v = vec![0.0; 8];
        v[0b001] = 0.4;
        v[0b010] = 0.4;
        v[0b100] = 0.3;
        v[0b011] = -0.1;
        subset_sums(&mut v);
        let cap = SetFunction::capacity(f, v).unwrap();
        let report = cap.is_2_monotone(1e-12);
        assert!(!report.is_2_monotone);
        let viol = report.violation.unwrap();
        assert_eq!((viol.x, viol.y), (0, 1));
        assert!(math::abs(viol.partial_sum + 0.1) < 1e-12);
    }
}
