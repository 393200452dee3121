//! Random number streams.
//!
//! Every stochastic component draws from [`Stream`], a ChaCha8 generator
//! (counter based, 64-bit seed). Independent runs of an experiment derive
//! their seed from a tuple of identifiers with [`derive_seed`]:
//!
//! ```text
//! seed = splitmix64-fold(baseSeed, instanceId, algorithmId, repetition)
//! ```
//!
//! The fold starts from `baseSeed` and, for each further component `c`,
//! computes `state = splitmix64(state ^ splitmix64(c + GOLDEN))`. The result
//! is then passed to `ChaCha8Rng::seed_from_u64`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a base seed and a list of identifiers into one stream seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(splitmix64(base), |state, &part| {
        splitmix64(state ^ splitmix64(part.wrapping_add(GOLDEN)))
    })
}

pub fn stream(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}
