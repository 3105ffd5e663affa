//! Seedable randomness.
//!
//! Every random decision in the crate is drawn from a [`RandomSource`], a
//! thin wrapper over ChaCha8 (`rand_chacha::ChaCha8Rng`). ChaCha8 output is
//! specified independently of platform and word size, and `seed_from_u64`
//! expands the 64-bit seed with PCG32 as documented by `rand_core`, so a
//! seed fully determines every trace on every machine. Integer sampling goes
//! through `u64` ranges only, never `usize`, for the same reason.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RandomSource {
    inner: ChaCha8Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in the closed range `[lo, hi]`.
    pub fn uniform_int(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        self.inner.random_range(lo..=hi)
    }

    /// Uniform index in `[0, len)`.
    pub fn index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        self.inner.random_range(0..len as u64) as usize
    }

    /// Uniform real in `[0, 1)`.
    pub fn uniform_real(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn coin(&mut self) -> bool {
        self.inner.next_u32() & 1 == 1
    }

    /// `true` with probability `p`; `p` is clamped to `[0, 1]`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform_real() < p
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

/// Uniform random bit string of length `n`; consumes exactly `n` coins.
pub fn random_bitstring(n: usize, rng: &mut RandomSource) -> Result<BitString> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "bit string length must be positive".into(),
        ));
    }
    Ok(BitString::from_bits((0..n).map(|_| rng.coin()).collect()))
}
