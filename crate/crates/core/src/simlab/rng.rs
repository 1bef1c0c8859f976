//! Independent random streams keyed by `(master seed, replication, stream)`.
//!
//! Each stream is a ChaCha8 generator whose key is derived from the master
//! seed and whose 64-bit stream id encodes the replication and the stream
//! index, so the numbers a work unit sees never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream index reserved for truth sampling; study `i` uses `i + 1`.
pub const TRUTH_STREAM: u64 = 0;

const STREAM_BITS: u32 = 20;

pub type StreamRng = ChaCha8Rng;

pub fn stream(master_seed: u64, replication: u64, index: u64) -> StreamRng {
    assert!(index < 1 << STREAM_BITS, "stream index {index} too large");
    assert!(
        replication < 1 << (64 - STREAM_BITS),
        "replication {replication} too large"
    );
    let mut key = [0u8; 32];
    let mut state = master_seed;
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream((replication << STREAM_BITS) | index);
    rng
}

pub fn study_stream(master_seed: u64, replication: u64, study: usize) -> StreamRng {
    stream(master_seed, replication, study as u64 + 1)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
