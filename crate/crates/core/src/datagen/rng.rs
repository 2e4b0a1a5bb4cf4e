//! Portable, seeded uniform generation.
//!
//! The workhorse generator is xoshiro256++ with its state filled from
//! SplitMix64, following the reference construction. Both algorithms are
//! fixed here so that a given seed yields the same sequence on every
//! platform and in every release; the unit tests pin the published
//! reference outputs.

/// SplitMix64 stepper, used to expand a 64-bit seed into generator state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ uniform generator.
#[derive(Debug, Clone)]
pub struct Xoshiro256pp {
    s: [u64; 4],
}

impl Xoshiro256pp {
    /// Seeds the four state words from SplitMix64(seed).
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut mixer = SplitMix64::new(seed);
        let mut s = [0u64; 4];
        loop {
            for word in &mut s {
                *word = mixer.next_u64();
            }
            // The all-zero state is the one invalid seed.
            if s.iter().any(|&w| w != 0) {
                break;
            }
        }
        Xoshiro256pp { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)`: the top 53 bits scaled by 2⁻⁵³.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    pub fn unit_positive(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix64_reference_vectors() {
        // Reference outputs of the published SplitMix64 algorithm.
        let mut rng = SplitMix64::new(1_234_567);
        assert_eq!(rng.next_u64(), 6_457_827_717_110_365_317);
        assert_eq!(rng.next_u64(), 3_203_168_211_198_807_973);
        assert_eq!(rng.next_u64(), 9_817_491_932_198_370_423);

        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 16_294_208_416_658_607_535);
        assert_eq!(rng.next_u64(), 7_960_286_522_194_355_700);
    }

    #[test]
    fn xoshiro_reference_vectors() {
        // First outputs after seeding from SplitMix64(42), recomputed
        // independently from the reference algorithm definitions.
        let mut rng = Xoshiro256pp::seed_from_u64(42);
        assert_eq!(rng.next_u64(), 15_021_278_609_987_233_951);
        assert_eq!(rng.next_u64(), 5_881_210_131_331_364_753);
        assert_eq!(rng.next_u64(), 18_149_643_915_985_481_100);
        assert_eq!(rng.next_u64(), 12_933_668_939_759_105_464);
        assert_eq!(rng.next_u64(), 14_637_574_242_682_825_331);
    }

    #[test]
    fn unit_range() {
        let mut rng = Xoshiro256pp::seed_from_u64(7);
        for _ in 0..10_000 {
            let u = rng.unit();
            assert!((0.0..1.0).contains(&u));
            let p = rng.unit_positive();
            assert!(p > 0.0 && p <= 1.0);
        }
    }
}
