//! Deterministic random inputs for the randomized suites.
//!
//! Rationals are drawn with numerators in `[-9, 9] \ {0}` and denominators in
//! `[1, 9]` so that failing cases print small and are reproducible from the
//! seed alone.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rat, Rational};

/// Seeded RNG used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational.
pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut n: i64 = rng.gen_range(-9..=8);
    if n >= 0 {
        n += 1;
    }
    let d: i64 = rng.gen_range(1..=9);
    rat(n, d)
}

/// A small rational, possibly zero.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=9);
    rat(n, d)
}

pub fn small_rationals(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    (0..count).map(|_| small_rational(rng)).collect()
}
