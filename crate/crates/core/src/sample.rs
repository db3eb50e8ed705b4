//! Seeded sample-point generation for randomized identity checking.

use crate::forms::Chart;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default number of sample points for form-level identity checks.
pub const DEFAULT_SAMPLES: usize = 20;

/// Default RNG seed.
pub const DEFAULT_SEED: u64 = 42;

/// `n` points drawn uniformly from the chart box, shrunk by 5% per side to
/// stay clear of boundary effects.
pub fn sample_points(chart: &Chart, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            chart
                .bounds
                .iter()
                .map(|&(lo, hi)| {
                    let margin = 0.05 * (hi - lo);
                    rng.gen_range((lo + margin)..(hi - margin))
                })
                .collect()
        })
        .collect()
}

/// Seeded uniform draws in [-scale, scale], for random coefficient vectors.
pub fn sample_coeffs(n: usize, scale: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}
