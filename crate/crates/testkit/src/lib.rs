//! Reference oracles and random instance generators for the plantkb test
//! suites. The oracles are deliberately naive: they trade speed for being
//! obviously correct.

pub mod closure;
pub mod dot;
pub mod gen;
pub mod sparql;
pub mod text;

use rand::SeedableRng;

pub use rand;

/// Deterministic RNG for a case number.
pub fn rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}
