//! Seedable random source.
//!
//! Backed by ChaCha8 seeded through `SeedableRng::seed_from_u64`. Normal
//! variates come from `rand_distr::StandardNormal`. Streams are reproducible
//! within this crate for a fixed seed and draw sequence; they are not meant
//! to match any other implementation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform on the closed interval `[a, b]`.
    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        debug_assert!(a <= b);
        self.rng.random_range(a..=b)
    }

    /// Uniform on `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform index in `0..n` (zero-based axis choice).
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}
