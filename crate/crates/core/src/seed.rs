//! Seed derivation for reproducible random streams.
//!
//! Every random stream in a run is keyed by a tuple of integers
//! (master seed, run index, generation, group index). The tuple is folded
//! through the SplitMix64 finalizer:
//!
//! ```text
//! h = 0x6A09E667F3BCC909
//! for part in parts: h = splitmix64(h ^ part)
//! ```
//!
//! and the result seeds a ChaCha8 generator. Both steps are fixed, so a run is
//! reproducible from its configuration alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FOLD_INIT: u64 = 0x6A09_E667_F3BC_C909;

/// The SplitMix64 output function applied to `x`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(FOLD_INIT, |h, &part| splitmix64(h ^ part))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of run `run_index` within an experiment.
pub fn run_seed(master_seed: u64, run_index: usize) -> u64 {
    derive_seed(&[master_seed, run_index as u64])
}

/// Seed of generation `generation` within a run. Generation 0 drives
/// initialization, generation `g >= 1` drives the breeding that produces it.
pub fn generation_seed(run_seed: u64, generation: usize) -> u64 {
    derive_seed(&[run_seed, generation as u64])
}

/// Seed of the stream used by breeding group `group` under `breed_seed`.
pub fn group_seed(breed_seed: u64, group: usize) -> u64 {
    derive_seed(&[breed_seed, group as u64])
}
