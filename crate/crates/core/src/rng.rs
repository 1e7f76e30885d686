//! Seeding rules shared by every randomized routine.
//!
//! Edge sampling is counter-based: pair `(u, v)` with `u < v` has stream index
//! equal to its lexicographic rank among all pairs, and its coin is a pure
//! function of `(seed, rank)`. Sequential randomness (local search, uniform
//! draws) uses ChaCha8 seeded from a derived 64-bit seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform 64-bit word for stream index `index` under `seed`.
pub fn counter_word(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed.wrapping_add(GOLDEN)) ^ index.wrapping_mul(GOLDEN).wrapping_add(1))
}

/// Lexicographic rank of the pair `(u, v)`, `u < v < n`.
pub fn pair_rank(n: u64, u: u64, v: u64) -> u64 {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Coin with success probability `p` for one stream word. `p >= 1` always
/// succeeds and `p <= 0` never does.
pub fn bernoulli(word: u64, p: f64) -> bool {
    if p >= 1.0 {
        return true;
    }
    if p <= 0.0 {
        return false;
    }
    // 53-bit uniform in [0, 1)
    ((word >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
}

/// Seed for `(point, trial)` under a master seed.
pub fn derive_seed(master: u64, point: u64, trial: u64) -> u64 {
    counter_word(counter_word(master, point), trial)
}

pub fn chacha(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
