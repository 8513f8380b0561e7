//! Seeded draws for the resampling engine.
//!
//! Every draw method consumes exactly one 64-bit output of a ChaCha8 stream,
//! so a trace's step count pins the position in the stream exactly and two
//! runs with the same seed are bit-identical on every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct DrawRng {
    inner: ChaCha8Rng,
    draws: u64,
}

impl DrawRng {
    pub fn seed_from_u64(seed: u64) -> Self {
        DrawRng { inner: ChaCha8Rng::seed_from_u64(seed), draws: 0 }
    }

    /// Number of 64-bit outputs consumed so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    /// Uniform index in `0..n` by multiply-high (bias below `n / 2^64`).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform value in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Index drawn proportionally to the non-negative `weights`.
    ///
    /// Returns `None` when every weight is zero.
    pub fn weighted(&mut self, weights: &[f64]) -> Option<usize> {
        let total: f64 = weights.iter().sum();
        let u = self.unit();
        if !(total > 0.0) {
            return None;
        }
        let target = u * total;
        let mut acc = 0.0;
        let mut last_positive = None;
        for (i, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                acc += w;
                last_positive = Some(i);
                if target < acc {
                    return Some(i);
                }
            }
        }
        last_positive
    }
}
