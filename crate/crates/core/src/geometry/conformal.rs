use super::chart::{curvature_operator_at, laplacian_at, Chart, FiniteDifference};
use crate::curvature::decompose;
use crate::error::{Error, Result};

/// `𝔖 = s - 2√6 |W⁺|` at a point.
pub fn frak_s_at(chart: &Chart, x: &[f64; 4], fd: &FiniteDifference) -> Result<f64> {
    let d = decompose(&curvature_operator_at(chart, x, fd)?);
    Ok(d.scalar - 2.0 * 6f64.sqrt() * d.w_plus.norm())
}

/// Rescales by `u²` after checking `u > 0` at every given sample point.
pub fn conformal_rescale(
    chart: &Chart,
    u: impl Fn(&[f64; 4]) -> f64 + Send + Sync + 'static,
    samples: &[[f64; 4]],
) -> Result<Chart> {
    for x in samples {
        let value = u(x);
        if !(value > 0.0) {
            return Err(Error::NonPositiveConformalFactor { value, point: *x });
        }
    }
    Ok(chart.conformal_rescale(u))
}

/// `𝔖_{u²g} u³ - (6Δ_g u + 𝔖_g u)` at `x`; vanishes up to the finite-difference error.
pub fn conformal_law_residual(
    chart: &Chart,
    u: impl Fn(&[f64; 4]) -> f64 + Send + Sync + Clone + 'static,
    x: &[f64; 4],
    fd: &FiniteDifference,
) -> Result<f64> {
    let value = u(x);
    if !(value > 0.0) {
        return Err(Error::NonPositiveConformalFactor { value, point: *x });
    }
    let rescaled = chart.conformal_rescale(u.clone());
    let lhs = frak_s_at(&rescaled, x, fd)? * value.powi(3);
    let lap = laplacian_at(chart, &u, x, fd)?;
    let rhs = 6.0 * lap + frak_s_at(chart, x, fd)? * value;
    Ok(lhs - rhs)
}

/// Residuals at `step` and `step/2` with plain central differences, and their
/// second-order extrapolation `(4 r(h/2) - r(h)) / 3`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConvergenceStudy {
    pub step: f64,
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
    pub extrapolated: f64,
}

pub fn conformal_law_convergence(
    chart: &Chart,
    u: impl Fn(&[f64; 4]) -> f64 + Send + Sync + Clone + 'static,
    x: &[f64; 4],
    step: f64,
) -> Result<ConvergenceStudy> {
    let coarse = conformal_law_residual(chart, u.clone(), x, &FiniteDifference::plain(step))?;
    let fine = conformal_law_residual(chart, u, x, &FiniteDifference::plain(0.5 * step))?;
    Ok(ConvergenceStudy {
        step,
        coarse,
        fine,
        ratio: coarse / fine,
        extrapolated: (4.0 * fine - coarse) / 3.0,
    })
}
