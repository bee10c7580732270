//! Deterministic random number generation.
//!
//! Every randomized routine in the crate takes an explicit [`Rng`]; given the
//! same seed the whole pipeline is bit-reproducible.

use rand_core::{RngCore, SeedableRng};

/// A seeded ChaCha12 stream.
#[derive(Clone, Debug)]
pub struct Rng(rand_chacha::ChaCha12Rng);

impl Rng {
    pub fn seed_from(seed: u64) -> Self {
        Rng(rand_chacha::ChaCha12Rng::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `0..n` (widening-multiply reduction).
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard exponential draw.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        // 1 - f64() is in (0, 1], so the log is finite.
        -crate::math::ln(1.0 - self.f64())
    }

    /// An independent generator seeded from this stream, for per-trial
    /// sub-streams.
    pub fn fork(&mut self) -> Rng {
        Rng::seed_from(self.next_u64())
    }
}
