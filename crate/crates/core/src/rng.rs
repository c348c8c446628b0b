//! Deterministic pseudo-randomness.
//!
//! Everything stochastic in this crate (pattern sampling, baseline
//! initialization, task generation) draws from [`SplitMix64`], a tiny 64-bit
//! generator with a fixed, documented update rule. Golden files and run
//! reports are therefore reproducible bit-for-bit across platforms and
//! toolchains, which an external RNG crate cannot promise across versions.
//!
//! The update rule is the standard splitmix64 finalizer: the state advances by
//! the constant `0x9E3779B97F4A7C15` and the output is the state mixed through
//! two xor-shift-multiply rounds.

use crate::linalg::Matrix;
use crate::scalar::Real;

/// Splitmix-style 64-bit generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)` via Lemire's widening multiply.
    ///
    /// The slight modulo bias of the plain multiply is irrelevant here; what
    /// matters is that the mapping is fixed so sampled index sets never drift.
    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        ((u128::from(self.next_u64()) * u128::from(n)) >> 64) as u64
    }

    /// Standard normal via Box-Muller; consumes two uniforms per sample.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Matrix with independent standard normal entries, row-major fill order.
    pub fn normal_matrix<T: Real>(&mut self, rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |_, _| T::of(self.next_normal()))
    }

    /// Vector of independent standard normal entries.
    pub fn normal_vec<T: Real>(&mut self, len: usize) -> Vec<T> {
        (0..len).map(|_| T::of(self.next_normal())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn known_first_output_for_seed_zero() {
        // First output of splitmix64 from state 0; pinned so the documented
        // generator can never silently change.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn next_below_stays_in_range() {
        let mut r = SplitMix64::new(7);
        for n in [1u64, 2, 3, 10, 1000] {
            for _ in 0..50 {
                assert!(r.next_below(n) < n);
            }
        }
    }

    #[test]
    fn normals_have_plausible_moments() {
        let mut r = SplitMix64::new(11);
        let n = 20_000;
        let samples: Vec<f64> = (0..n).map(|_| r.next_normal()).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
