//! Seeded randomness.
//!
//! Every random choice in the crate comes from ChaCha8 keyed by a single
//! 64-bit seed. Independent components draw from separate ChaCha streams of
//! the same key, so adding draws to one component never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream ids used by the generators. Fixed so corpora stay reproducible.
pub mod streams {
    pub const POSITIONS: u64 = 1;
    pub const SIZES: u64 = 2;
    pub const SHAPES: u64 = 3;
    pub const WEIGHTS: u64 = 4;
    pub const FAMILY: u64 = 5;
    pub const STRUCTURE: u64 = 6;
}

/// Generator for component `stream` under `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
