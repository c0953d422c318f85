use nalgebra::{Cholesky, Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::curvature::{CurvatureOperator, Riemann4};
use crate::error::{Error, Result};

pub type MetricFn = Arc<dyn Fn(&[f64; 4]) -> Matrix4<f64> + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(&[f64; 4]) -> f64 + Send + Sync>;

/// Christoffel symbols `Γ^a_bc`, indexed `[a][b][c]`.
pub type Christoffel = [[[f64; 4]; 4]; 4];

/// Central-difference settings. With `richardson` the estimate at `step` is
/// combined with the one at `step/2`, cancelling the `O(step²)` error term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteDifference {
    pub step: f64,
    pub richardson: bool,
}

impl Default for FiniteDifference {
    fn default() -> Self {
        Self {
            step: 1e-3,
            richardson: true,
        }
    }
}

impl FiniteDifference {
    pub fn plain(step: f64) -> Self {
        Self {
            step,
            richardson: false,
        }
    }

    pub fn with_step(self, step: f64) -> Self {
        Self { step, ..self }
    }
}

/// A coordinate chart: an open box in ℝ⁴ (possibly unbounded) with metric components.
#[derive(Clone)]
pub struct Chart {
    pub name: String,
    pub lower: [f64; 4],
    pub upper: [f64; 4],
    metric: MetricFn,
    conformal: Option<ScalarFn>,
    /// The set the chart misses, for reports.
    pub excluded: String,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("conformal", &self.conformal.is_some())
            .field("excluded", &self.excluded)
            .finish()
    }
}

impl Chart {
    pub fn new(
        name: impl Into<String>,
        lower: [f64; 4],
        upper: [f64; 4],
        excluded: impl Into<String>,
        metric: impl Fn(&[f64; 4]) -> Matrix4<f64> + Send + Sync + 'static,
    ) -> Self {
        Chart {
            name: name.into(),
            lower,
            upper,
            metric: Arc::new(metric),
            conformal: None,
            excluded: excluded.into(),
        }
    }

    /// Distance from `x` to the nearest face of the coordinate box.
    pub fn boundary_distance(&self, x: &[f64; 4]) -> f64 {
        (0..4)
            .map(|i| (x[i] - self.lower[i]).min(self.upper[i] - x[i]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Metric components at `x`, validated symmetric positive definite.
    pub fn metric_at(&self, x: &[f64; 4]) -> Result<Matrix4<f64>> {
        let mut g = (self.metric)(x);
        if let Some(u) = &self.conformal {
            let value = u(x);
            if !(value > 0.0) {
                return Err(Error::NonPositiveConformalFactor { value, point: *x });
            }
            g *= value * value;
        }
        if !g.iter().all(|v| v.is_finite()) || Cholesky::new(g).is_none() {
            return Err(Error::NotPositiveDefinite { point: *x });
        }
        Ok(g)
    }

    /// `√det g`, the density of the Riemannian measure in these coordinates.
    pub fn volume_density(&self, x: &[f64; 4]) -> Result<f64> {
        Ok(self.metric_at(x)?.determinant().sqrt())
    }

    /// The chart for `u² g`. Factors compose multiplicatively under repeated rescaling.
    pub fn conformal_rescale(&self, u: impl Fn(&[f64; 4]) -> f64 + Send + Sync + 'static) -> Self {
        let combined: ScalarFn = match &self.conformal {
            None => Arc::new(u),
            Some(prev) => {
                let prev = Arc::clone(prev);
                Arc::new(move |x: &[f64; 4]| prev(x) * u(x))
            }
        };
        Chart {
            name: format!("{} (conformally rescaled)", self.name),
            conformal: Some(combined),
            ..self.clone()
        }
    }

    /// Step actually used at `x`. On unbounded charts it grows with `|x|`, tracking the
    /// coordinate length scale of metrics that decay at infinity and keeping
    /// rounding error in second differences below the truncation error.
    pub fn local_step(&self, x: &[f64; 4], step: f64) -> f64 {
        let unbounded = self.lower.iter().chain(&self.upper).any(|v| v.is_infinite());
        if unbounded {
            step * x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0)
        } else {
            step
        }
    }

    fn check_margin(&self, x: &[f64; 4], step: f64) -> Result<()> {
        let margin = 2.0 * step;
        if self.boundary_distance(x) < margin {
            return Err(Error::BoundaryMargin { point: *x, margin });
        }
        Ok(())
    }
}

/// Metric, first and second coordinate derivatives at a point.
#[derive(Debug, Clone)]
pub struct MetricJet {
    pub g: Matrix4<f64>,
    /// `dg[c] = ∂_c g`
    pub dg: [Matrix4<f64>; 4],
    /// `ddg[c][d] = ∂_c ∂_d g`
    pub ddg: [[Matrix4<f64>; 4]; 4],
}

fn shifted(x: &[f64; 4], moves: &[(usize, f64)]) -> [f64; 4] {
    let mut y = *x;
    for &(i, h) in moves {
        y[i] += h;
    }
    y
}

/// First and second central differences of a matrix- or scalar-valued function.
fn jet_level<T>(f: &impl Fn(&[f64; 4]) -> Result<T>, x: &[f64; 4], h: f64) -> Result<(T, [T; 4], [[T; 4]; 4])>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let center = f(x)?;
    let mut plus = [center; 4];
    let mut minus = [center; 4];
    for c in 0..4 {
        plus[c] = f(&shifted(x, &[(c, h)]))?;
        minus[c] = f(&shifted(x, &[(c, -h)]))?;
    }
    let first: [T; 4] = std::array::from_fn(|c| (plus[c] - minus[c]) * (0.5 / h));
    let mut second = [[center * 0.0; 4]; 4];
    for c in 0..4 {
        second[c][c] = (plus[c] + minus[c] - center * 2.0) * (1.0 / (h * h));
        for d in (c + 1)..4 {
            let pp = f(&shifted(x, &[(c, h), (d, h)]))?;
            let pm = f(&shifted(x, &[(c, h), (d, -h)]))?;
            let mp = f(&shifted(x, &[(c, -h), (d, h)]))?;
            let mm = f(&shifted(x, &[(c, -h), (d, -h)]))?;
            let v = (pp - pm - mp + mm) * (0.25 / (h * h));
            second[c][d] = v;
            second[d][c] = v;
        }
    }
    Ok((center, first, second))
}

fn jet<T>(f: impl Fn(&[f64; 4]) -> Result<T>, x: &[f64; 4], fd: &FiniteDifference) -> Result<(T, [T; 4], [[T; 4]; 4])>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let coarse = jet_level(&f, x, fd.step)?;
    if !fd.richardson {
        return Ok(coarse);
    }
    let fine = jet_level(&f, x, 0.5 * fd.step)?;
    let extrapolate = |a: T, b: T| (b * 4.0 - a) * (1.0 / 3.0);
    let first = std::array::from_fn(|c| extrapolate(coarse.1[c], fine.1[c]));
    let second = std::array::from_fn(|c| std::array::from_fn(|d| extrapolate(coarse.2[c][d], fine.2[c][d])));
    Ok((coarse.0, first, second))
}

pub fn metric_jet(chart: &Chart, x: &[f64; 4], fd: &FiniteDifference) -> Result<MetricJet> {
    let fd = fd.with_step(chart.local_step(x, fd.step));
    chart.check_margin(x, fd.step)?;
    let (g, dg, ddg) = jet(|y| chart.metric_at(y), x, &fd)?;
    Ok(MetricJet { g, dg, ddg })
}

fn christoffel_from_jet(jet: &MetricJet) -> Result<Christoffel> {
    let ginv = jet.g.try_inverse().ok_or(Error::NotPositiveDefinite { point: [f64::NAN; 4] })?;
    let mut lower = [[[0.0; 4]; 4]; 4];
    for d in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                lower[d][b][c] = 0.5 * (jet.dg[b][(d, c)] + jet.dg[c][(d, b)] - jet.dg[d][(b, c)]);
            }
        }
    }
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                gamma[a][b][c] = (0..4).map(|d| ginv[(a, d)] * lower[d][b][c]).sum();
            }
        }
    }
    Ok(gamma)
}

/// `Γ^a_bc = ½ g^ad (∂_b g_dc + ∂_c g_db - ∂_d g_bc)` from finite differences of the metric.
pub fn christoffel_at(chart: &Chart, x: &[f64; 4], fd: &FiniteDifference) -> Result<Christoffel> {
    christoffel_from_jet(&metric_jet(chart, x, fd)?)
}

fn riemann_from_jet(jet: &MetricJet) -> Result<Riemann4> {
    let gamma = christoffel_from_jet(jet)?;
    let g = &jet.g;
    let dd = |a: usize, b: usize, i: usize, j: usize| jet.ddg[a][b][(i, j)];
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let second = 0.5 * (dd(b, c, a, d) + dd(a, d, b, c) - dd(a, c, b, d) - dd(b, d, a, c));
                    let mut quad = 0.0;
                    for e in 0..4 {
                        for f in 0..4 {
                            quad += g[(e, f)] * (gamma[e][b][c] * gamma[f][a][d] - gamma[e][b][d] * gamma[f][a][c]);
                        }
                    }
                    r[a][b][c][d] = second + quad;
                }
            }
        }
    }
    Ok(r)
}

/// Coordinate components `R_abcd`, normalised so `R_abab > 0` on the round sphere.
pub fn riemann_at(chart: &Chart, x: &[f64; 4], fd: &FiniteDifference) -> Result<Riemann4> {
    riemann_from_jet(&metric_jet(chart, x, fd)?)
}

/// Orthonormal frame `E = G^{-1/2}` (columns are frame vectors in coordinates).
pub fn orthonormal_frame(g: &Matrix4<f64>) -> Matrix4<f64> {
    let eig = SymmetricEigen::new(*g);
    let inv_sqrt = eig.eigenvalues.map(|l| 1.0 / l.sqrt());
    eig.eigenvectors * Matrix4::from_diagonal(&inv_sqrt) * eig.eigenvectors.transpose()
}

fn to_frame(r: &Riemann4, e: &Matrix4<f64>) -> Riemann4 {
    // contract one slot at a time
    let mut cur = *r;
    for slot in 0..4 {
        let mut next = [[[[0.0; 4]; 4]; 4]; 4];
        for i0 in 0..4 {
            for i1 in 0..4 {
                for i2 in 0..4 {
                    for i3 in 0..4 {
                        let idx = [i0, i1, i2, i3];
                        let mut acc = 0.0;
                        for a in 0..4 {
                            let mut src = idx;
                            src[slot] = a;
                            acc += e[(a, idx[slot])] * cur[src[0]][src[1]][src[2]][src[3]];
                        }
                        next[i0][i1][i2][i3] = acc;
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

/// Curvature operator on Λ² in the orthonormal frame `G^{-1/2} ∂`.
pub fn curvature_operator_at(chart: &Chart, x: &[f64; 4], fd: &FiniteDifference) -> Result<CurvatureOperator> {
    let jet = metric_jet(chart, x, fd)?;
    let r = riemann_from_jet(&jet)?;
    let e = orthonormal_frame(&jet.g);
    Ok(CurvatureOperator::from_riemann(&to_frame(&r, &e)))
}

/// Positive Laplacian `Δu = -g^ab (∂_a∂_b u - Γ^c_ab ∂_c u)`.
pub fn laplacian_at(chart: &Chart, u: &dyn Fn(&[f64; 4]) -> f64, x: &[f64; 4], fd: &FiniteDifference) -> Result<f64> {
    let jet_g = metric_jet(chart, x, fd)?;
    let gamma = christoffel_from_jet(&jet_g)?;
    let ginv = jet_g.g.try_inverse().ok_or(Error::NotPositiveDefinite { point: *x })?;
    let (_, du, ddu) = jet(|y| Ok(u(y)), x, &fd.with_step(chart.local_step(x, fd.step)))?;
    let mut acc = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let conn: f64 = (0..4).map(|c| gamma[c][a][b] * du[c]).sum();
            acc += ginv[(a, b)] * (ddu[a][b] - conn);
        }
    }
    Ok(-acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> Chart {
        Chart::new("s4", [f64::NEG_INFINITY; 4], [f64::INFINITY; 4], "a point", |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            Matrix4::identity() * (4.0 / (1.0 + r2).powi(2))
        })
    }

    #[test]
    fn margin_and_positivity_errors() {
        let c = Chart::new("box", [0.0; 4], [1.0; 4], "nothing", |_| Matrix4::identity());
        let fd = FiniteDifference::default();
        assert!(matches!(riemann_at(&c, &[0.001, 0.5, 0.5, 0.5], &fd), Err(Error::BoundaryMargin { .. })));
        let bad = Chart::new("bad", [0.0; 4], [1.0; 4], "nothing", |_| -Matrix4::<f64>::identity());
        assert!(matches!(riemann_at(&bad, &[0.5; 4], &fd), Err(Error::NotPositiveDefinite { .. })));
        let neg = c.conformal_rescale(|_| -1.0);
        assert!(matches!(neg.metric_at(&[0.5; 4]), Err(Error::NonPositiveConformalFactor { .. })));
    }

    #[test]
    fn sphere_christoffels_match_conformal_formula() {
        // g = e^{2f} δ with f = ln 2 - ln(1 + r²): Γ^a_bc = δ_ab ∂_c f + δ_ac ∂_b f - δ_bc ∂_a f
        let x = [0.3, -0.2, 0.5, 0.1];
        let gamma = christoffel_at(&sphere(), &x, &FiniteDifference::default()).unwrap();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let df: Vec<f64> = x.iter().map(|&xi| -2.0 * xi / (1.0 + r2)).collect();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let d = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                    let expected = d(a, b) * df[c] + d(a, c) * df[b] - d(b, c) * df[a];
                    assert!((gamma[a][b][c] - expected).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn flat_metric_has_exactly_zero_curvature() {
        let c = Chart::new("t4", [0.0; 4], [1.0; 4], "nothing", |_| Matrix4::identity());
        let fd = FiniteDifference::default();
        let gamma = christoffel_at(&c, &[0.5; 4], &fd).unwrap();
        assert!(gamma.iter().flatten().flatten().all(|&v| v == 0.0));
        let op = curvature_operator_at(&c, &[0.5; 4], &fd).unwrap();
        assert_eq!(op, CurvatureOperator::zero());
    }

    #[test]
    fn sphere_operator_is_identity_off_origin() {
        let fd = FiniteDifference::default();
        for x in [[0.0; 4], [0.7, -0.3, 0.2, 1.1], [-2.0, 0.5, 0.0, 0.4], [3.0, 1.0, 0.0, 0.0]] {
            let op = curvature_operator_at(&sphere(), &x, &fd).unwrap();
            let err = (op.matrix() - nalgebra::Matrix6::<f64>::identity()).amax();
            assert!(err < 1e-8, "{x:?} {err}");
        }
    }

    #[test]
    fn plain_differences_converge_at_second_order() {
        let x = [0.4, 0.1, -0.3, 0.2];
        let err = |h: f64| {
            let op = curvature_operator_at(&sphere(), &x, &FiniteDifference::plain(h)).unwrap();
            (op.matrix() - nalgebra::Matrix6::<f64>::identity()).amax()
        };
        let ratio = err(0.02) / err(0.01);
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn laplacian_of_coordinate_function_on_flat_space() {
        let c = Chart::new("r4", [f64::NEG_INFINITY; 4], [f64::INFINITY; 4], "nothing", |_| Matrix4::identity());
        let u = |x: &[f64; 4]| x[0] * x[0] + 3.0 * x[1] * x[2];
        let lap = laplacian_at(&c, &u, &[0.2, 0.3, 0.4, 0.5], &FiniteDifference::default()).unwrap();
        assert!((lap + 2.0).abs() < 1e-8);
    }
}
