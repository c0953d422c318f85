//! Pointwise inequalities between the pieces of an Einstein curvature tensor,
//! and the Gauss-Bonnet and signature integrands.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{CurvatureDecomposition, Tolerances, TraceFree3};
use crate::error::Result;

/// Relative window for the eigenvalue-degeneracy test behind the saturation flags.
const SATURATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenBoundReport {
    pub lambda_min: f64,
    pub frobenius: f64,
    /// `√6 |λ_min| / ‖M‖_F`, at least one; reported as exactly one for `M = 0`.
    pub ratio: f64,
    /// `2(λ² - μν)`, which equals `‖M‖_F²` for trace-free `M`.
    pub two_lambda_sq_minus_mu_nu: f64,
    pub ok: bool,
    pub saturated: bool,
}

/// `|λ_min| ≥ ‖M‖_F/√6` for a trace-free symmetric block.
pub fn eigen_lower_bound_report(m: &TraceFree3) -> EigenBoundReport {
    let [lambda, mu, nu] = m.eigenvalues();
    let frobenius = m.norm();
    let identity = 2.0 * (lambda * lambda - mu * nu);
    if frobenius == 0.0 {
        return EigenBoundReport {
            lambda_min: 0.0,
            frobenius,
            ratio: 1.0,
            two_lambda_sq_minus_mu_nu: identity,
            ok: true,
            saturated: true,
        };
    }
    let ratio = 6f64.sqrt() * lambda.abs() / frobenius;
    EigenBoundReport {
        lambda_min: lambda,
        frobenius,
        ratio,
        two_lambda_sq_minus_mu_nu: identity,
        ok: ratio >= 1.0 - 1e-12,
        saturated: (mu - lambda).abs() <= SATURATION_TOL * frobenius,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetBoundReport {
    /// `3√6 det M`
    pub lhs: f64,
    /// `‖M‖_F³`
    pub rhs: f64,
    pub ok: bool,
    pub saturated: bool,
}

/// `3√6 det M ≤ ‖M‖³`, sharp exactly when the two lowest eigenvalues agree.
pub fn det_bound_check(m: &TraceFree3) -> DetBoundReport {
    let lhs = 3.0 * 6f64.sqrt() * m.determinant();
    let norm = m.norm();
    let rhs = norm.powi(3);
    let [lambda, mu, _] = m.eigenvalues();
    DetBoundReport {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-10 * rhs,
        saturated: (mu - lambda).abs() <= SATURATION_TOL * norm && mu <= 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylNormBound {
    /// `s/√6`
    pub lhs: f64,
    /// `|W⁺| + |W⁻|`
    pub rhs: f64,
    pub ok: bool,
    /// `lhs - rhs`
    pub margin: f64,
}

/// `s/√6 ≥ |W⁺| + |W⁻|`, which holds wherever an Einstein metric has
/// non-negative sectional curvature.
pub fn weyl_norm_bound_check(d: &CurvatureDecomposition) -> Result<WeylNormBound> {
    d.require_einstein(Tolerances::default().einstein)?;
    let lhs = d.scalar / 6f64.sqrt();
    let rhs = d.w_plus.norm() + d.w_minus.norm();
    let tol = 1e-10 * lhs.abs().max(rhs);
    Ok(WeylNormBound {
        lhs,
        rhs,
        ok: lhs >= rhs - tol,
        margin: lhs - rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeitzenbockReport {
    /// `(s/2)|W⁺|²`
    pub lhs: f64,
    /// `18 det W⁺`
    pub rhs: f64,
    /// `|lhs - rhs| / max(|lhs|, |rhs|)`, zero when both vanish.
    pub residual: f64,
}

/// The algebraic part of the Weitzenböck identity for harmonic `W⁺`; with
/// `∇W⁺ = 0` it reduces to `(s/2)|W⁺|² = 18 det W⁺`.
pub fn weitzenbock_parallel_check(d: &CurvatureDecomposition) -> WeitzenbockReport {
    let lhs = 0.5 * d.scalar * d.w_plus.norm_squared();
    let rhs = 18.0 * d.w_plus.determinant();
    let scale = lhs.abs().max(rhs.abs());
    WeitzenbockReport {
        lhs,
        rhs,
        residual: if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale },
    }
}

/// `(1/8π²)[|W⁺|² + |W⁻|² + s²/24 - |r̊|²/2]`
pub fn gauss_bonnet_integrand(d: &CurvatureDecomposition) -> f64 {
    (d.w_plus.norm_squared() + d.w_minus.norm_squared() + d.scalar * d.scalar / 24.0
        - 0.5 * d.traceless_ricci_norm_squared())
        / (8.0 * PI * PI)
}

/// `(1/12π²)[|W⁺|² - |W⁻|²]`
pub fn signature_integrand(d: &CurvatureDecomposition) -> f64 {
    (d.w_plus.norm_squared() - d.w_minus.norm_squared()) / (12.0 * PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix3;

    fn einstein(w_plus: [f64; 3], w_minus: [f64; 3], s: f64) -> CurvatureDecomposition {
        CurvatureDecomposition {
            w_plus: TraceFree3::diagonal(w_plus[0], w_plus[1], w_plus[2]).unwrap(),
            w_minus: TraceFree3::diagonal(w_minus[0], w_minus[1], w_minus[2]).unwrap(),
            mixed: Matrix3::zeros(),
            scalar: s,
        }
    }

    #[test]
    fn eigen_bound_saturates_on_doubly_degenerate_spectrum() {
        let a = 1.0 / 3.0;
        let r = eigen_lower_bound_report(&TraceFree3::diagonal(-a, -a, 2.0 * a).unwrap());
        assert!((r.lambda_min.abs() - a).abs() < 1e-15);
        assert!((r.frobenius / 6f64.sqrt() - a).abs() < 1e-15);
        assert!(r.ok && r.saturated);
        assert!((r.two_lambda_sq_minus_mu_nu - r.frobenius.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn eigen_bound_zero_is_saturated_by_convention() {
        let r = eigen_lower_bound_report(&TraceFree3::zero());
        assert!(r.ok && r.saturated);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn eigen_bound_strict_for_generic_spectrum() {
        let r = eigen_lower_bound_report(&TraceFree3::diagonal(1.0, 0.0, -1.0).unwrap());
        assert!(r.ok && !r.saturated);
        assert!((r.ratio - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn det_bound_examples() {
        let k = det_bound_check(&TraceFree3::diagonal(4.0, -2.0, -2.0).unwrap());
        assert!((k.lhs - 48.0 * 6f64.sqrt()).abs() < 1e-12);
        assert!((k.rhs - 24f64.powf(1.5)).abs() < 1e-12);
        assert!(k.ok && k.saturated);
        let z = det_bound_check(&TraceFree3::zero());
        assert!(z.ok && z.lhs == 0.0 && z.rhs == 0.0);
        let g = det_bound_check(&TraceFree3::diagonal(1.0, 0.0, -1.0).unwrap());
        assert!(g.lhs.abs() < 1e-15 && (g.rhs - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(g.ok && !g.saturated);
        // the mirror spectrum (a, a, -2a) minimises det instead
        let m = det_bound_check(&TraceFree3::diagonal(2.0, 2.0, -4.0).unwrap());
        assert!(m.ok && !m.saturated);
    }

    #[test]
    fn weyl_norm_bound_examples() {
        let third = 1.0 / 3.0;
        let ps = weyl_norm_bound_check(&einstein([2.0 * third, -third, -third], [2.0 * third, -third, -third], 4.0)).unwrap();
        assert!((ps.lhs - 4.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((ps.rhs - 2.0 * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(ps.margin.abs() < 1e-14 && ps.ok);

        let s4 = weyl_norm_bound_check(&einstein([0.0; 3], [0.0; 3], 12.0)).unwrap();
        assert!(s4.ok && s4.margin > 0.0);

        let cp2 = weyl_norm_bound_check(&einstein([4.0, -2.0, -2.0], [0.0; 3], 24.0)).unwrap();
        assert!((cp2.lhs - 9.797958971132712).abs() < 1e-12);
        assert!((cp2.rhs - 24f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn weitzenbock_examples() {
        let cp2 = weitzenbock_parallel_check(&einstein([4.0, -2.0, -2.0], [0.0; 3], 24.0));
        assert!((cp2.lhs - 288.0).abs() < 1e-12 && (cp2.rhs - 288.0).abs() < 1e-12);
        assert!(cp2.residual < 1e-15);
        let z = weitzenbock_parallel_check(&einstein([0.0; 3], [0.0; 3], 0.0));
        assert_eq!(z.residual, 0.0);
        for a in [0.1, 1.0, 3.5, 17.0] {
            let r = weitzenbock_parallel_check(&einstein([2.0 * a, -a, -a], [0.0; 3], 12.0 * a));
            assert!((r.lhs - 36.0 * a.powi(3)).abs() < 1e-10 * a.powi(3));
            assert!(r.residual < 1e-14);
        }
    }

    #[test]
    fn integrand_examples() {
        let s4 = einstein([0.0; 3], [0.0; 3], 12.0);
        assert!((gauss_bonnet_integrand(&s4) - 6.0 / (8.0 * PI * PI)).abs() < 1e-16);
        assert!((gauss_bonnet_integrand(&s4) * 8.0 * PI * PI / 3.0 - 2.0).abs() < 1e-14);
        let cp2 = einstein([4.0, -2.0, -2.0], [0.0; 3], 24.0);
        assert!((signature_integrand(&cp2) - 2.0 / (PI * PI)).abs() < 1e-15);
        assert!((signature_integrand(&cp2) * PI * PI / 2.0 - 1.0).abs() < 1e-14);
        let flat = einstein([0.0; 3], [0.0; 3], 0.0);
        assert_eq!(gauss_bonnet_integrand(&flat), 0.0);
        assert_eq!(signature_integrand(&flat), 0.0);
    }
}
