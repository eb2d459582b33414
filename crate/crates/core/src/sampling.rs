//! Deterministic sample generators for law validation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` points drawn uniformly from `[lo, hi)` with a fixed seed.
pub fn uniform_points(lo: f64, hi: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

/// `n` points whose logarithms are uniform on `[ln lo, ln hi)`; `lo > 0`.
pub fn log_uniform_points(lo: f64, hi: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|_| rng.gen_range(a..b).exp()).collect()
}
