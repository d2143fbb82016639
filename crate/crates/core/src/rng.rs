//! Seeded random number generation, pinned to one generator.
//!
//! Every randomized routine in the crate derives its stream from a `u64`
//! seed through this module, so results are reproducible across runs and
//! platforms and outputs can state exactly which generator produced them.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Identifier recorded alongside any randomized output.
pub const GENERATOR_ID: &str = "chacha12";

/// Generator for the given seed, stream 0.
pub fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Independent stream `stream` under the same seed. Streams are stable:
/// (seed, stream) always yields the same sequence, regardless of how many
/// other streams are drawn from, which makes per-sample parallelism
/// deterministic.
pub fn seeded_stream(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_stable_and_independent() {
        let a: u64 = seeded_stream(7, 3).random();
        let b: u64 = seeded_stream(7, 3).random();
        assert_eq!(a, b);
        let c: u64 = seeded_stream(7, 4).random();
        assert_ne!(a, c);
        let d: u64 = seeded(7).random();
        let e: u64 = seeded_stream(7, 0).random();
        assert_eq!(d, e);
    }
}
