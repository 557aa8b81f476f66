//! Seedable deterministic random source.
//!
//! The generator is xoshiro256++ seeded through splitmix64, so two sources
//! built from the same 64-bit seed produce identical streams on every
//! platform. Bounded draws use threshold rejection instead of a bare
//! modulus, which keeps every value in `1..=n` exactly equally likely.

use crate::error::{Error, Result};

/// A deterministic, seedable source of uniform random integers.
///
/// Not cryptographically secure. A source is single-owner: it is `Send`
/// but deliberately exposes only `&mut self` drawing methods, so
/// concurrent generation should use independent sources with distinct
/// seeds.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    state: [u64; 4],
}

impl RandomSource {
    /// Creates a source from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        let mut x = seed;
        let mut state = [0u64; 4];
        for word in &mut state {
            *word = splitmix64(&mut x);
        }
        Self { seed, state }
    }

    /// Creates a source seeded from system entropy.
    ///
    /// Callers that need reproducibility should record [`seed`](Self::seed)
    /// from the returned source.
    pub fn from_entropy() -> Self {
        use std::collections::hash_map::RandomState;
        use std::hash::{BuildHasher, Hasher};
        use std::time::{SystemTime, UNIX_EPOCH};

        let key = RandomState::new().build_hasher().finish();
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.subsec_nanos() as u64 ^ d.as_secs())
            .unwrap_or(0);
        Self::new(key ^ nanos.rotate_left(32))
    }

    /// The seed this source was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next raw 64-bit word of the stream.
    pub fn next_u64(&mut self) -> u64 {
        let [s0, s1, s2, s3] = self.state;
        let result = s0.wrapping_add(s3).rotate_left(23).wrapping_add(s0);
        let t = s1 << 17;
        let mut state = [s0, s1, s2 ^ s0, s3 ^ s1];
        state[1] ^= state[2];
        state[0] ^= state[3];
        state[2] ^= t;
        state[3] = state[3].rotate_left(45);
        self.state = state;
        result
    }

    /// Uniform draw from `{1, …, n}`.
    ///
    /// Every value has probability exactly `1/n`.
    pub fn uniform(&mut self, n: u32) -> Result<u32> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(self.bounded(n) + 1)
    }

    /// Unbiased draw from `0..n`. Requires `n >= 1`.
    pub(crate) fn bounded(&mut self, n: u32) -> u32 {
        debug_assert!(n >= 1);
        let n = u64::from(n);
        // Accept only below the largest multiple of n; the leftover top
        // slice of the 2^64 range is redrawn (probability < n / 2^64).
        let leftover = ((u64::MAX % n) + 1) % n;
        let limit = u64::MAX - leftover;
        loop {
            let v = self.next_u64();
            if v <= limit {
                return (v % n) as u32;
            }
        }
    }
}

fn splitmix64(x: &mut u64) -> u64 {
    *x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
