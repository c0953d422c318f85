//! Product Gauss–Legendre quadrature of curvature integrands over a chart.

pub mod checks;
pub mod rule;

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::curvature::{decompose, CurvatureDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{curvature_operator_at, Chart, Cover, FiniteDifference, ModelManifold};

pub use checks::{
    bishop_volume_check, euler_bound_check, functional_bounds_report, gap_theorem_check, BishopCheck, CheckStatus,
    EulerBoundCheck, FunctionalBoundsReport, GapTheoremCheck, InequalityBranch,
};
pub use rule::{gauss_legendre, KahanSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    GaussLegendre,
    /// Value at one point times the volume; valid for homogeneous models.
    Homogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub orders: [usize; 4],
    pub fd: FiniteDifference,
    /// Near a chart face the difference step is capped at this fraction of the distance to it.
    pub boundary_margin: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: Scheme::GaussLegendre,
            orders: [12, 8, 8, 8],
            fd: FiniteDifference::default(),
            boundary_margin: 0.25,
        }
    }
}

impl QuadratureSpec {
    pub fn homogeneous() -> Self {
        Self {
            scheme: Scheme::Homogeneous,
            ..Self::default()
        }
    }

    pub fn with_order(self, order: usize) -> Self {
        Self {
            orders: [order; 4],
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.orders.iter().any(|&n| n < 2) {
            return Err(Error::InvalidParameter(format!("quadrature orders must be at least 2, got {:?}", self.orders)));
        }
        if !(self.fd.step > 0.0) || !(self.boundary_margin > 0.0 && self.boundary_margin < 0.5) {
            return Err(Error::InvalidParameter("finite-difference step and boundary margin must be positive".into()));
        }
        Ok(())
    }

    fn step_at(&self, chart: &Chart, x: &[f64; 4]) -> FiniteDifference {
        let cap = self.boundary_margin * chart.boundary_distance(x);
        self.fd.with_step(self.fd.step.min(cap))
    }
}

/// Visits every product node with its measure weight `w·J·√det g`.
fn for_each_node(
    chart: &Chart,
    cover: &Cover,
    spec: &QuadratureSpec,
    mut visit: impl FnMut(&[f64; 4], f64) -> Result<()>,
) -> Result<()> {
    spec.validate()?;
    let rules: Vec<_> = spec.orders.iter().map(|&n| gauss_legendre(n)).collect();
    for (&t0, &w0) in rules[0].0.iter().zip(&rules[0].1) {
        for (&t1, &w1) in rules[1].0.iter().zip(&rules[1].1) {
            for (&t2, &w2) in rules[2].0.iter().zip(&rules[2].1) {
                for (&t3, &w3) in rules[3].0.iter().zip(&rules[3].1) {
                    let (x, jac) = cover.map(chart, &[t0, t1, t2, t3]);
                    let density = chart.volume_density(&x)?;
                    let w = w0 * w1 * w2 * w3 * jac * density;
                    if !w.is_finite() {
                        return Err(Error::NonFinite { point: x });
                    }
                    visit(&x, w)?;
                }
            }
        }
    }
    Ok(())
}

/// `∫ f dμ` over the chart.
pub fn integrate(
    chart: &Chart,
    cover: &Cover,
    spec: &QuadratureSpec,
    f: impl Fn(&[f64; 4]) -> Result<f64>,
) -> Result<f64> {
    let mut acc = KahanSum::default();
    for_each_node(chart, cover, spec, |x, w| {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { point: *x });
        }
        acc.add(w * v);
        Ok(())
    })?;
    Ok(acc.value())
}

pub fn volume(model: &ModelManifold, spec: &QuadratureSpec) -> Result<f64> {
    integrate(&model.chart, &model.cover, spec, |_| Ok(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    Standard,
    Reversed,
}

/// The curvature integrals every invariant below is built from.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CurvatureIntegrals {
    pub volume: f64,
    /// `∫ s dμ`
    pub scalar: f64,
    /// `∫ |W⁺|² dμ`
    pub w_plus_sq: f64,
    /// `∫ |W⁻|² dμ`
    pub w_minus_sq: f64,
    /// `∫ s²/24 dμ`
    pub scalar_sq_24: f64,
    /// `∫ |r̊|²/2 dμ`
    pub traceless_ricci_half: f64,
}

impl CurvatureIntegrals {
    fn terms(d: &CurvatureDecomposition) -> [f64; 6] {
        [
            1.0,
            d.scalar,
            d.w_plus.norm_squared(),
            d.w_minus.norm_squared(),
            d.scalar * d.scalar / 24.0,
            0.5 * d.traceless_ricci_norm_squared(),
        ]
    }

    fn from_terms(t: [f64; 6]) -> Self {
        Self {
            volume: t[0],
            scalar: t[1],
            w_plus_sq: t[2],
            w_minus_sq: t[3],
            scalar_sq_24: t[4],
            traceless_ricci_half: t[5],
        }
    }

    /// Reversing orientation swaps the roles of `W⁺` and `W⁻`.
    pub fn oriented(&self, orientation: Orientation) -> Self {
        match orientation {
            Orientation::Standard => *self,
            Orientation::Reversed => Self {
                w_plus_sq: self.w_minus_sq,
                w_minus_sq: self.w_plus_sq,
                ..*self
            },
        }
    }

    /// Gauss–Bonnet: `(1/8π²) ∫ (|W⁺|² + |W⁻|² + s²/24 - |r̊|²/2) dμ`.
    pub fn euler_characteristic(&self) -> f64 {
        (self.w_plus_sq + self.w_minus_sq + self.scalar_sq_24 - self.traceless_ricci_half) / (8.0 * PI * PI)
    }

    /// Signature: `(1/12π²) ∫ (|W⁺|² - |W⁻|²) dμ`.
    pub fn signature(&self) -> f64 {
        (self.w_plus_sq - self.w_minus_sq) / (12.0 * PI * PI)
    }

    /// `∫ s dμ / (∫ dμ)^{1/2}`.
    pub fn total_scalar_functional(&self) -> f64 {
        self.scalar / self.volume.sqrt()
    }
}

/// Integrates the curvature terms over a chart by the product rule.
pub fn chart_integrals(chart: &Chart, cover: &Cover, spec: &QuadratureSpec) -> Result<CurvatureIntegrals> {
    let mut acc = [KahanSum::default(); 6];
    for_each_node(chart, cover, spec, |x, w| {
        let d = decompose(&curvature_operator_at(chart, x, &spec.step_at(chart, x))?);
        for (a, t) in acc.iter_mut().zip(CurvatureIntegrals::terms(&d)) {
            if !t.is_finite() {
                return Err(Error::NonFinite { point: *x });
            }
            a.add(w * t);
        }
        Ok(())
    })?;
    Ok(CurvatureIntegrals::from_terms(acc.map(|a| a.value())))
}

/// Curvature integrals for a model, by full quadrature or the homogeneous shortcut.
pub fn curvature_integrals(model: &ModelManifold, spec: &QuadratureSpec) -> Result<CurvatureIntegrals> {
    match spec.scheme {
        Scheme::GaussLegendre => chart_integrals(&model.chart, &model.cover, spec),
        Scheme::Homogeneous => {
            let vol = volume(model, spec)?;
            let x = model.base_point();
            let d = decompose(&curvature_operator_at(&model.chart, &x, &spec.fd)?);
            Ok(CurvatureIntegrals::from_terms(CurvatureIntegrals::terms(&d).map(|t| t * vol)))
        }
    }
}

pub fn euler_characteristic(model: &ModelManifold, spec: &QuadratureSpec) -> Result<f64> {
    Ok(curvature_integrals(model, spec)?.euler_characteristic())
}

pub fn signature(model: &ModelManifold, spec: &QuadratureSpec) -> Result<f64> {
    Ok(curvature_integrals(model, spec)?.signature())
}

pub fn total_scalar_functional(model: &ModelManifold, spec: &QuadratureSpec) -> Result<f64> {
    Ok(curvature_integrals(model, spec)?.total_scalar_functional())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub model: String,
    pub orientation: Orientation,
    pub spec: QuadratureSpec,
    pub volume: f64,
    pub euler_characteristic: f64,
    pub signature: f64,
    pub total_scalar_functional: f64,
    pub integrals: CurvatureIntegrals,
    pub euler_bound: EulerBoundCheck,
    pub gap_theorem: GapTheoremCheck,
    pub bishop: BishopCheck,
}

pub fn invariant_report(model: &ModelManifold, spec: &QuadratureSpec, orientation: Orientation) -> Result<InvariantReport> {
    let integrals = curvature_integrals(model, spec)?.oriented(orientation);
    let einstein = model.reference.einstein_constant;
    Ok(InvariantReport {
        model: model.name.clone(),
        orientation,
        spec: *spec,
        volume: integrals.volume,
        euler_characteristic: integrals.euler_characteristic(),
        signature: integrals.signature(),
        total_scalar_functional: integrals.total_scalar_functional(),
        integrals,
        euler_bound: euler_bound_check(&integrals, einstein.is_some()),
        gap_theorem: gap_theorem_check(&integrals, einstein.is_some()),
        bishop: bishop_volume_check(integrals.volume, einstein),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{flat_torus, round_sphere};

    #[test]
    fn orders_are_validated() {
        let bad = QuadratureSpec::default().with_order(1);
        assert!(volume(&flat_torus(1.0).unwrap(), &bad).is_err());
    }

    #[test]
    fn flat_torus_volume_is_exact() {
        let t = flat_torus(2.0).unwrap();
        let v = volume(&t, &QuadratureSpec::default().with_order(3)).unwrap();
        assert!((v - 16.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_volume_converges() {
        let s = round_sphere(1.0).unwrap();
        let v = volume(&s, &QuadratureSpec::default()).unwrap();
        assert!((v / s.reference.volume - 1.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn orientation_swaps_weyl_terms() {
        let i = CurvatureIntegrals {
            volume: 1.0,
            scalar: 2.0,
            w_plus_sq: 3.0,
            w_minus_sq: 1.0,
            scalar_sq_24: 0.5,
            traceless_ricci_half: 0.0,
        };
        let r = i.oriented(Orientation::Reversed);
        assert_eq!(r.euler_characteristic(), i.euler_characteristic());
        assert_eq!(r.signature(), -i.signature());
    }
}
