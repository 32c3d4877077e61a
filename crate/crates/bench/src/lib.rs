//! Input generators shared by the benchmarks.

use mvrho::SampleMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n × m` independent uniforms from a fixed seed.
pub fn uniform_sample(n: usize, m: usize, seed: u64) -> SampleMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SampleMatrix::new(n, m, (0..n * m).map(|_| rng.gen()).collect()).expect("valid sample")
}
