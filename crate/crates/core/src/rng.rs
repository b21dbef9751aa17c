//! Seeded randomness.
//!
//! Two generators are used throughout the crate:
//!
//! * a counter-based mixer ([`mix64`]) built on the SplitMix64 finalizer. It
//!   maps `(seed, counter)` to a 64-bit word with no internal state, so each
//!   vertex pair of a G(n,p) sample gets its own independent draw and the
//!   sampling order never matters;
//! * [`GameRng`], a ChaCha8 stream generator used by strategies. Every game
//!   derives one stream per player from the game seed, which keeps players'
//!   random choices independent of each other and of execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream generator handed to strategies.
pub type GameRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer applied to `seed + GOLDEN * (counter + 1)`.
#[inline]
pub fn mix64(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN.wrapping_mul(counter.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform double in `[0, 1)` from the top 53 bits of `mix64(seed, counter)`.
#[inline]
pub fn unit_f64(seed: u64, counter: u64) -> f64 {
    (mix64(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Derives an independent child seed from a parent seed and a tag.
///
/// Tags are small constants (see [`tags`]) or indices; distinct tags give
/// unrelated children.
#[inline]
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    mix64(mix64(seed, tag), 0x5EED)
}

/// A ChaCha8 stream for the given seed and substream tag.
pub fn stream(seed: u64, tag: u64) -> GameRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

/// Substream tags used by the engine and harness.
pub mod tags {
    pub const BOARD: u64 = 1;
    pub const GAME: u64 = 2;
    pub const MAKER: u64 = 3;
    pub const BREAKER: u64 = 4;
    pub const AUDIT: u64 = 5;
}
