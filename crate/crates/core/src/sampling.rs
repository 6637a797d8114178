//! Deterministic random streams.
//!
//! Every task draws from its own ChaCha stream selected by `(seed, task)`,
//! so fanned-out work is reproducible regardless of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0;

pub fn rng(seed: u64, task: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng
}
