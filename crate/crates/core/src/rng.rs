//! Portable random streams.
//!
//! Every random quantity in the crate (observation noise, scenario-4
//! entries, latent permutations) is drawn from a [`Stream`]. The stream is
//! ChaCha8 seeded through `rand_core`'s `seed_from_u64` (PCG32 key
//! expansion), both of which are value-stable across platforms and
//! releases. Derived quantities are computed with fixed formulas so a port
//! to another language reproduces the same values:
//!
//! * uniform `[0, 1)`: the top 53 bits of one 64-bit output, times 2^-53;
//! * standard normal: Box–Muller, cosine branch, `u1 = 1 - uniform()`
//!   taken from the first output and `u2 = uniform()` from the second;
//! * integers below `bound`: rejection sampling on the full 64-bit output;
//! * shuffles: Fisher–Yates from the last position downwards.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::f64::consts::TAU;

const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * TWO_POW_NEG_53
    }

    /// Uniform draw on `[lo, hi)`.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }

    /// Uniform integer in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // largest multiple of `bound` that fits, minus one
        let limit = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= limit {
                return x % bound;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Order-sensitive hash-combine of seed components:
/// `h_0 = mix64(parts[0])`, `h_{i} = mix64(h_{i-1} ^ parts[i])`.
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut iter = parts.iter();
    let mut h = mix64(iter.next().copied().unwrap_or(0));
    for &p in iter {
        h = mix64(h ^ p);
    }
    h
}

/// FNV-1a over a string, used to turn identifiers into seed components.
pub fn str_component(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
