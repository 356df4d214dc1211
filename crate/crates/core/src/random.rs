//! Seeded sampling helpers.
//!
//! Every sample gets its own ChaCha stream derived from the master seed and
//! the sample index, so results do not depend on how work is split across
//! threads.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

pub const DEFAULT_BOUND: i64 = 10_000;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let bound = bound.max(1);
    let p = rng.random_range(-bound..=bound);
    let q = rng.random_range(1..=bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_vec<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| rational(rng, bound)).collect()
}
