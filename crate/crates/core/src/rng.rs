//! Seeded randomness.
//!
//! Every random procedure in this crate draws from [`SeededRng`], which is
//! ChaCha8 seeded through `SeedableRng::seed_from_u64`. The stream is defined
//! by the `rand_chacha` crate and does not depend on platform or word size,
//! so a given seed reproduces the same graphs everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
