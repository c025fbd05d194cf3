//! Seedable, counter-based randomness.
//!
//! Every randomized routine in the crate draws from [`StreamRng`], which maps
//! a `(seed, stream)` pair to an independent ChaCha8 stream. Because the
//! stream id — not the call order — selects the random values, draws indexed
//! by position can be generated in any order (or in parallel) and still
//! reproduce the sequential output bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Factory for deterministic, splittable random streams.
#[derive(Clone, Copy, Debug)]
pub struct StreamRng {
    seed: u64,
}

impl StreamRng {
    pub fn new(seed: u64) -> Self {
        StreamRng { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for the given stream id.
    pub fn stream(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Uniform value in [0,1) determined by `(seed, stream)` alone.
    pub fn uniform(&self, stream: u64) -> f64 {
        self.stream(stream).random::<f64>()
    }

    /// Child factory for a nested randomized phase.
    ///
    /// Distinct labels give statistically independent child seeds, so a
    /// pipeline can hand disjoint randomness to each of its stages.
    pub fn child(&self, label: u64) -> StreamRng {
        let mut rng = self.stream(u64::MAX ^ label);
        StreamRng { seed: rng.random() }
    }
}
