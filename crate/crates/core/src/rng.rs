//! Deterministic pseudo-random generator used for every randomized routine.
//!
//! Reproducibility across platforms, threads, and releases is a hard
//! requirement for the report pipeline (reruns with the same seed must be
//! byte-identical), so the crate fixes one tiny, fully documented generator
//! instead of depending on an external RNG whose stream might change between
//! versions. The update is the splitmix64 finalizer (Steele, Lea & Flood's
//! public-domain constants): a 64-bit Weyl sequence fed through an
//! avalanching mix.
//!
//! The generator identifier recorded in reports is [`GENERATOR_ID`].

/// Identifier recorded in run reports next to the seed.
pub const GENERATOR_ID: &str = "splitmix64";

/// Splitmix64 stream. One `u64` of state; each call advances the Weyl
/// counter by an odd constant and mixes it.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Create a stream seeded with `seed`. Equal seeds give equal streams.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next 64 uniformly distributed bits.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` built from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A coefficient in `{-1, +1}` decided by the top bit.
    pub fn next_sign(&mut self) -> i64 {
        if self.next_u64() >> 63 == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = SplitMix64::new(0xDEAD_BEEF);
        let mut b = SplitMix64::new(0xDEAD_BEEF);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn distinct_seeds_diverge() {
        let mut a = SplitMix64::new(1);
        let mut b = SplitMix64::new(2);
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn doubles_land_in_unit_interval() {
        let mut g = SplitMix64::new(7);
        for _ in 0..10_000 {
            let x = g.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn signs_are_roughly_balanced() {
        let mut g = SplitMix64::new(42);
        let sum: i64 = (0..100_000).map(|_| g.next_sign()).sum();
        assert!(sum.abs() < 2_000, "sign bias too large: {sum}");
    }

    /// Reference values for the fixed constants: the stream must never
    /// change across releases, or archived reports stop being reproducible.
    #[test]
    fn stream_is_pinned() {
        let mut g = SplitMix64::new(0);
        let first: Vec<u64> = (0..3).map(|_| g.next_u64()).collect();
        assert_eq!(
            first,
            vec![
                0xE220_A839_7B1D_CDAF,
                0x6E78_9E6A_A1B9_65F4,
                0x06C4_5D18_8009_454F
            ]
        );
    }
}
