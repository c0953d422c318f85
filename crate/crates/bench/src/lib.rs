//! Benchmark fixtures shared by the criterion targets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use einstein4::curvature::random::{random_nonnegative_einstein, random_operator};
use einstein4::curvature::CurvatureOperator;

/// Fixed-seed operators so runs are comparable.
pub fn operators(n: usize) -> Vec<CurvatureOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    (0..n).map(|_| random_operator(&mut rng)).collect()
}

pub fn einstein_operators(n: usize) -> Vec<CurvatureOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    (0..n).map(|_| random_nonnegative_einstein(&mut rng)).collect()
}
