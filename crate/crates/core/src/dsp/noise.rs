//! Seeded uniform white noise.
//!
//! Each stream is a ChaCha8 keystream keyed by the render seed and addressed by
//! a stream id hashed from a name, so sub-models draw from independent
//! sequences that never depend on evaluation order.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const DEFAULT_STREAM: &str = "default";

pub struct NoiseStream {
    rng: ChaCha8Rng,
}

impl NoiseStream {
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(stream));
        Self { rng }
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on [-1, 1).
    pub fn next_bipolar(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }

    /// Uniform on the open interval (0, 1).
    pub fn next_open_unit(&mut self) -> f64 {
        loop {
            let u = self.next_unit();
            if u > 0.0 {
                return u;
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }

    /// Uniform integer in `lo..hi`.
    pub fn below(&mut self, lo: u32, hi: u32) -> u32 {
        debug_assert!(hi > lo);
        let span = (hi - lo) as u64;
        // Rejection keeps the draw exactly uniform.
        let zone = u64::MAX - (u64::MAX % span);
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return lo + (v % span) as u32;
            }
        }
    }

    pub fn fill_bipolar(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_bipolar()).collect()
    }
}

/// FNV-1a; stable across platforms and compiler versions.
pub fn stream_id(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// `n` samples of U[-1, 1) noise from the default stream of `seed`.
pub fn white_noise(seed: u64, n: usize) -> Vec<f64> {
    NoiseStream::new(seed, DEFAULT_STREAM).fill_bipolar(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_request_gives_empty_signal() {
        assert!(white_noise(42, 0).is_empty());
    }

    #[test]
    fn mean_and_range_over_a_million_samples() {
        let x = white_noise(42, 1_000_000);
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!(x.iter().all(|&v| (-1.0..1.0).contains(&v)));
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let a = white_noise(42, 100);
        let b = white_noise(42, 100);
        assert_eq!(
            a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn named_streams_are_uncorrelated() {
        let n = 200_000;
        let a = NoiseStream::new(7, "rumbler/wn1").fill_bipolar(n);
        let b = NoiseStream::new(7, "rumbler/wn2").fill_bipolar(n);
        assert_ne!(a[..16], b[..16]);
        let corr = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / n as f64 / (1.0 / 3.0);
        assert!(corr.abs() < 0.01, "correlation {corr}");
    }

    #[test]
    fn integer_draws_cover_range() {
        let mut s = NoiseStream::new(1, "ints");
        let mut seen = [0usize; 5];
        for _ in 0..10_000 {
            seen[(s.below(1, 6) - 1) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 1_800));
    }
}
