//! Deterministic random number generation.
//!
//! All randomness in the crate flows through [`Rng`], a thin wrapper over a
//! counter-based ChaCha generator. The full generator state round-trips
//! through [`RngState`], which the checkpoint format persists so that a
//! resumed run continues the exact same random sequence.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::scalar::Scalar;

/// Seedable, stream-splittable generator with serializable state.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
}

/// Complete generator state: seed, stream id and position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    pub seed: [u8; 32],
    pub stream: u64,
    pub word_pos: u128,
}

impl Rng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Rng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream derived from the same seed. Streams never overlap,
    /// so components (init, shuffling, noise, data synthesis) can each own
    /// one without coordinating.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Rng { inner }
    }

    /// One draw from N(0, 1). Sampling is always performed in `f64` and then
    /// converted, so `f32` and `f64` instantiations consume the generator
    /// identically.
    pub fn standard_normal<F: Scalar>(&mut self) -> F {
        let v: f64 = StandardNormal.sample(&mut self.inner);
        F::from_f64(v)
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform_f64(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform_f64()
    }

    /// Uniform integer in `[0, bound)`.
    pub fn uniform_u32(&mut self, bound: u32) -> u32 {
        self.inner.gen_range(0..bound)
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.inner.gen_range(0..=i);
            xs.swap(i, j);
        }
    }

    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        self.inner.fill_bytes(out);
    }

    pub fn state(&self) -> RngState {
        RngState {
            seed: self.inner.get_seed(),
            stream: self.inner.get_stream(),
            word_pos: self.inner.get_word_pos(),
        }
    }

    pub fn restore(state: &RngState) -> Self {
        let mut inner = ChaCha8Rng::from_seed(state.seed);
        inner.set_stream(state.stream);
        inner.set_word_pos(state.word_pos);
        Rng { inner }
    }
}
