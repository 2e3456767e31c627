//! Seeded random streams.
//!
//! Every randomized component draws from a ChaCha8 stream derived from the run seed
//! and a fixed label, so results never depend on call order across components.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the sub-stream `label` under `seed`.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    splitmix(seed ^ splitmix(fnv1a(label.as_bytes())))
}

/// Random stream for component `label` under run seed `seed`.
pub fn stream(seed: u64, label: &str) -> Rng {
    Rng::seed_from_u64(derive_seed(seed, label))
}

/// Sub-stream keyed by a label and an index.
pub fn indexed_stream(seed: u64, label: &str, index: u64) -> Rng {
    Rng::seed_from_u64(splitmix(derive_seed(seed, label) ^ splitmix(index)))
}
