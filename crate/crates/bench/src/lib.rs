//! Shared sample generation for the benchmark suite.

use cograde_core::distributions::random_distribution;
use cograde_core::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic batch of normalized distributions for benchmarking.
pub fn sample_distributions(n: usize, count: usize, seed: u64) -> Vec<Distribution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_distribution(n, &mut rng)).collect()
}
