//! Portable seeded pseudo-random stream for test corpora.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//! `state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`.
//! Outputs are taken from the high bits, which are the well-mixed ones.
//! Floats are `(x >> 11) * 2^-53`, exact in every IEEE-754 implementation,
//! so a seed pins the same instance on every platform.

pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        // one step so that nearby seeds diverge immediately
        let mut rng = Lcg { state: seed };
        rng.next_u64();
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n` (multiply-shift on the high 32 bits).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0 && n <= u32::MAX as usize);
        (((self.next_u64() >> 32) * n as u64) >> 32) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_vector() {
        let mut r = Lcg { state: 0 };
        assert_eq!(r.next_u64(), INCREMENT);
        assert_eq!(r.next_u64(), INCREMENT.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT));
    }

    #[test]
    fn reproducible_and_in_range() {
        let (mut a, mut b) = (Lcg::new(7), Lcg::new(7));
        for _ in 0..1000 {
            let x = a.next_f64();
            assert_eq!(x.to_bits(), b.next_f64().to_bits());
            assert!((0.0..1.0).contains(&x));
            assert!(a.range(3, 5) == b.range(3, 5));
        }
        let mut c = Lcg::new(1);
        let mut seen = [false; 4];
        for _ in 0..100 {
            seen[c.below(4)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
