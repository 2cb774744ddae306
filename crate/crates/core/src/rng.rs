//! Seeded random streams. Every component draws from its own ChaCha stream,
//! so a single run seed can drive data generation, splitting, SMOTE and the
//! trees without their random numbers coinciding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const GENERATE: u64 = 0;
pub(crate) const SPLIT: u64 = 1;
pub(crate) const SMOTE: u64 = 2;
/// Tree `t` uses stream `TREES + t`.
pub(crate) const TREES: u64 = 1 << 32;

pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
