//! Pinned deterministic randomness.
//!
//! Everything seeded in this crate draws from ChaCha8 with the seed spread
//! into the low word, and bounded values come from the rejection sampler
//! below rather than from `rand`'s distribution machinery. That keeps every
//! shuffle and sample reproducible bit-for-bit across platforms and across
//! `rand` upgrades.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `[0, bound)` by rejection below `2^64 mod bound`.
pub(crate) fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let x = rng.next_u64();
        if x >= threshold {
            return x % bound;
        }
    }
}

/// Uniform f64 in [0, 1) with 53 random bits.
pub(crate) fn uniform_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// First `k` elements of a uniform random permutation of `0..n`
/// (partial Fisher–Yates).
pub(crate) fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<u32> {
    let k = k.min(n);
    let mut pool: Vec<u32> = (0..n as u32).collect();
    for i in 0..k {
        let j = i + uniform_below(rng, (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}
