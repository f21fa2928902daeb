//! Seeded randomness.
//!
//! All sampling goes through [`Xoshiro256PlusPlus`] seeded with
//! `seed_from_u64`, so a given seed reproduces the same stream on every
//! platform. Parallel sweeps never share a generator: trial `i` of a run
//! seeded with `s` gets its own generator built from a seed derived from
//! `(s, i)`.

use rand::SeedableRng;
pub use rand_xoshiro::Xoshiro256PlusPlus as Rng;

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// SplitMix64 finaliser over `master ⊕ golden·(index + 1)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
