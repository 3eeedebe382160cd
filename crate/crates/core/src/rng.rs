//! Seeded random streams.
//!
//! Every random draw goes through ChaCha8 (`rand_chacha::ChaCha8Rng`). A run
//! seed `s` is expanded with `ChaCha8Rng::seed_from_u64(s)`, and sample `i` of
//! an ensemble reads from ChaCha stream `i` of that key (`set_stream(i)`), so
//! per-sample draws do not depend on scheduling or on how many other samples
//! were taken.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` under run seed `seed`.
pub fn state_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
