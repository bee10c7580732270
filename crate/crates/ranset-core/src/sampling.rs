//! Random generation of mass functions and related objects, used by the
//! property checkers and the `verify` command.

use alloc::vec::Vec;

use crate::error::Result;
use crate::frame::{Frame, SubsetMask};
use crate::mass::MassFunction;
use crate::rng::Rng;

/// A random mass function with strictly positive mass on every nonempty
/// subset (Dirichlet(1,…,1) over the sub-simplex, via normalized
/// exponential draws).
pub fn random_full_support(frame: &Frame, rng: &mut Rng) -> MassFunction {
    let draws: Vec<f64> = (1..frame.subset_count()).map(|_| rng.exponential()).collect();
    let total: f64 = draws.iter().sum();
    let entries = draws
        .iter()
        .enumerate()
        .map(|(i, &d)| (SubsetMask::new(i as u32 + 1), d / total));
    MassFunction::new(frame.clone(), entries, true).expect("draws are normalized")
}

/// A random mass function supported on `focal_count` distinct nonempty
/// subsets chosen uniformly.
pub fn random_with_focal_count(
    frame: &Frame,
    focal_count: usize,
    rng: &mut Rng,
) -> Result<MassFunction> {
    let subsets = frame.subset_count() - 1;
    let k = focal_count.min(subsets);
    let mut chosen: Vec<u32> = Vec::with_capacity(k);
    while chosen.len() < k {
        let bits = rng.below(subsets) as u32 + 1;
        if !chosen.contains(&bits) {
            chosen.push(bits);
        }
    }
    let draws: Vec<f64> = (0..k).map(|_| rng.exponential()).collect();
    let total: f64 = draws.iter().sum();
    let entries = chosen
        .into_iter()
        .zip(draws)
        .map(|(bits, d)| (SubsetMask::new(bits), d / total));
    MassFunction::new(frame.clone(), entries, true)
}

/// A random Bayesian mass function (uniform Dirichlet over outcomes).
pub fn random_bayesian(frame: &Frame, rng: &mut Rng) -> MassFunction {
    let draws: Vec<f64> = (0..frame.size()).map(|_| rng.exponential()).collect();
    let total: f64 = draws.iter().sum();
    let probs: Vec<f64> = draws.iter().map(|&d| d / total).collect();
    MassFunction::bayesian(frame.clone(), &probs).expect("normalized by construction")
}

/// Random convex weights of the given length.
pub fn random_convex_weights(len: usize, rng: &mut Rng) -> Vec<f64> {
    let draws: Vec<f64> = (0..len).map(|_| rng.exponential()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn random_masses_are_valid_and_fully_supported() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let mut rng = Rng::seed_from(1);
        for _ in 0..50 {
            let m = random_full_support(&frame, &mut rng);
            assert!(math::abs(m.total_mass() - 1.0) <= 1e-12);
            assert_eq!(m.focal_count(), 7);
        }
    }

    #[test]
    fn focal_count_is_respected() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let mut rng = Rng::seed_from(2);
        let m = random_with_focal_count(&frame, 3, &mut rng).unwrap();
        assert_eq!(m.focal_count(), 3);
    }
}
