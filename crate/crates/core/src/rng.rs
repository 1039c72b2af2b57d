//! Seed splitting.
//!
//! Every random quantity is drawn from a stream derived by a pure function of
//! `(master seed, stream id)`, so generation order and parallel scheduling can
//! never change a result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream id of the spectral synthesis phases.
pub const STREAM_SPECTRAL_PHASES: u64 = 1;
/// Stream id of the per-epoch sign draws of the cascade process.
pub const STREAM_EPOCH_SIGNS: u64 = 2;
/// Stream id of Monte-Carlo sign draws for the expected scale-free time.
pub const STREAM_TF_SIGNS: u64 = 3;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for stream `stream` of `seed`.
pub fn split(seed: u64, stream: u64) -> u64 {
    mix64(seed ^ mix64(stream.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split(seed, stream))
}

/// Equiprobable `±1` for epoch `epoch`: the top bit of
/// `split(split(seed, STREAM_EPOCH_SIGNS), epoch)`.
pub fn epoch_sign(seed: u64, epoch: u64) -> i8 {
    let bits = split(split(seed, STREAM_EPOCH_SIGNS), epoch);
    if bits >> 63 == 0 {
        1
    } else {
        -1
    }
}
