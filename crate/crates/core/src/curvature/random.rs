//! Random curvature data for fuzzing and sampling checks.

use nalgebra::{Matrix3, Matrix6};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{reconstruct, CurvatureDecomposition, CurvatureOperator, TraceFree3};

fn gaussian3<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    Matrix3::from_fn(|_, _| rng.sample(StandardNormal))
}

/// Symmetric trace-free 3×3 block with Gaussian entries.
pub fn random_trace_free<R: Rng + ?Sized>(rng: &mut R) -> TraceFree3 {
    let g = gaussian3(rng);
    let sym = (g + g.transpose()) * 0.5;
    TraceFree3::from_matrix_unchecked(sym - Matrix3::identity() * (sym.trace() / 3.0))
}

/// Symmetric 6×6 operator with equal block traces, i.e. a valid curvature operator.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R) -> CurvatureOperator {
    let g = Matrix6::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let mut m = (g + g.transpose()) * 0.5;
    let shift = (m.fixed_view::<3, 3>(0, 0).trace() - m.fixed_view::<3, 3>(3, 3).trace()) / 6.0;
    for i in 0..3 {
        m[(i, i)] -= shift;
        m[(i + 3, i + 3)] += shift;
    }
    CurvatureOperator::from_matrix_unchecked(m)
}

/// Random decomposition with all four pieces non-trivial.
pub fn random_decomposition<R: Rng + ?Sized>(rng: &mut R) -> CurvatureDecomposition {
    CurvatureDecomposition {
        w_plus: random_trace_free(rng),
        w_minus: random_trace_free(rng),
        mixed: gaussian3(rng),
        scalar: rng.sample::<f64, _>(StandardNormal) * 12.0,
    }
}

/// Einstein operator whose scalar curvature sits at or above the threshold
/// `-6(λ₊ + λ₋)` for non-negative sectional curvature; one in four lands exactly on it.
pub fn random_nonnegative_einstein<R: Rng + ?Sized>(rng: &mut R) -> CurvatureOperator {
    let w_plus = random_trace_free(rng).scaled(rng.random::<f64>() * 2.0);
    let w_minus = random_trace_free(rng).scaled(rng.random::<f64>() * 2.0);
    let threshold = -6.0 * (w_plus.smallest_eigenvalue() + w_minus.smallest_eigenvalue());
    let slack = if rng.random::<f64>() < 0.25 { 0.0 } else { rng.random::<f64>() * 6.0 };
    reconstruct(&CurvatureDecomposition {
        w_plus,
        w_minus,
        mixed: Matrix3::zeros(),
        scalar: threshold + slack,
    })
}
