//! Named, reproducible random streams derived from one master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when neither the caller nor `LINPOLY_SEED` supplies one.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

fn fnv1a(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// A generator for the sub-stream `name` of `seed`.
///
/// Streams with different names are independent of each other, so the order
/// in which callers consume them does not matter.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name));
    rng
}
