//! Seeded random streams.
//!
//! Every simulation draws from ChaCha8 keyed by a 64-bit master seed, with
//! the 64-bit ChaCha stream id selecting an independent substream. Work item
//! `i` always reads the substream derived from `(seed, i)`, so results do not
//! depend on the number of worker threads or on scheduling order.
//! Reproducibility is promised within one release of this crate only.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for all simulations.
pub type StreamRng = ChaCha8Rng;

/// Independent substream `stream` of master seed `seed`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
