//! Integral inequalities for Einstein metrics, each reported with a signed margin.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::CurvatureIntegrals;

/// Relative window inside which an inequality is reported as an equality.
pub const EQUALITY_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Equality,
    Violated,
    Inapplicable,
}

impl CheckStatus {
    /// Anything but a violation.
    pub fn passes(&self) -> bool {
        !matches!(self, CheckStatus::Violated)
    }
}

/// `lhs ≥ rhs`, or the reason it was not evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityBranch {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub margin: f64,
    pub status: CheckStatus,
    pub reason: Option<String>,
}

impl InequalityBranch {
    fn evaluate(lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs());
        let status = if margin.abs() <= EQUALITY_TOL * scale {
            CheckStatus::Equality
        } else if margin > 0.0 {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        };
        Self {
            lhs,
            rhs,
            margin,
            status,
            reason: None,
        }
    }

    fn inapplicable(lhs: f64, rhs: f64, reason: &str) -> Self {
        Self {
            lhs,
            rhs,
            margin: lhs - rhs,
            status: CheckStatus::Inapplicable,
            reason: Some(reason.to_owned()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerBoundCheck {
    pub chi: f64,
    /// `(5/8π²) ∫ s²/24 dμ`
    pub bound: f64,
    /// `bound - χ`; must be strictly positive.
    pub margin: f64,
    /// Largest integer strictly below the bound.
    pub implied_max_chi: Option<i64>,
    pub status: CheckStatus,
    pub reason: Option<String>,
}

/// `χ < (5/8π²) ∫ s²/24 dμ` for non-flat Einstein metrics of non-negative sectional curvature.
pub fn euler_bound_check(i: &CurvatureIntegrals, einstein: bool) -> EulerBoundCheck {
    let chi = i.euler_characteristic();
    let bound = 5.0 * i.scalar_sq_24 / (8.0 * PI * PI);
    let margin = bound - chi;
    let flat = i.scalar_sq_24 + i.w_plus_sq + i.w_minus_sq <= 1e-12 * i.volume.max(1.0);
    let (status, reason) = if !einstein {
        (CheckStatus::Inapplicable, Some("metric is not Einstein".to_owned()))
    } else if flat {
        (CheckStatus::Inapplicable, Some("metric is flat".to_owned()))
    } else if margin > EQUALITY_TOL * bound {
        (CheckStatus::Holds, None)
    } else {
        (CheckStatus::Violated, None)
    };
    let implied_max_chi = (status == CheckStatus::Holds).then(|| (bound - EQUALITY_TOL * bound).ceil() as i64 - 1);
    EulerBoundCheck {
        chi,
        bound,
        margin,
        implied_max_chi,
        status,
        reason,
    }
}

/// Lower bounds on `∫|W^±|²` for Einstein metrics with `s > 0` and the
/// corresponding Weyl half not identically zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapTheoremCheck {
    /// `∫|W⁺|² ≥ ∫ s²/24`
    pub self_dual: InequalityBranch,
    /// `∫|W⁻|² ≥ ∫ s²/24`
    pub anti_self_dual: InequalityBranch,
    /// `(2χ - 3τ)/3 ≥ (1/4π²) ∫ s²/24`
    pub euler_signature: InequalityBranch,
    /// Equality in the self-dual branch forces `∇W⁺ ≡ 0`.
    pub parallel_w_plus: bool,
    /// Equality in the anti-self-dual branches forces `∇W⁻ ≡ 0`.
    pub parallel_w_minus: bool,
}

/// Evaluated on already-oriented integrals, so reversing orientation beforehand
/// exchanges the two Weyl branches.
pub fn gap_theorem_check(i: &CurvatureIntegrals, einstein: bool) -> GapTheoremCheck {
    let s24 = i.scalar_sq_24;
    let vanishing = |w: f64| w <= 1e-8 * s24.max(1e-300);
    let precondition = if !einstein {
        Some("metric is not Einstein")
    } else if i.scalar <= 0.0 {
        Some("scalar curvature is not positive")
    } else {
        None
    };
    let branch = |w: f64, lhs: f64, rhs: f64, zero_reason: &str| match precondition {
        Some(r) => InequalityBranch::inapplicable(lhs, rhs, r),
        None if vanishing(w) => InequalityBranch::inapplicable(lhs, rhs, zero_reason),
        None => InequalityBranch::evaluate(lhs, rhs),
    };
    let self_dual = branch(i.w_plus_sq, i.w_plus_sq, s24, "W+ vanishes identically");
    let anti_self_dual = branch(i.w_minus_sq, i.w_minus_sq, s24, "W- vanishes identically");
    let lhs = (2.0 * i.euler_characteristic() - 3.0 * i.signature()) / 3.0;
    let euler_signature = branch(i.w_minus_sq, lhs, s24 / (4.0 * PI * PI), "W- vanishes identically");
    GapTheoremCheck {
        parallel_w_plus: self_dual.status == CheckStatus::Equality,
        parallel_w_minus: anti_self_dual.status == CheckStatus::Equality
            && euler_signature.status == CheckStatus::Equality,
        self_dual,
        anti_self_dual,
        euler_signature,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BishopCheck {
    pub einstein_constant: Option<f64>,
    /// Volume after rescaling the metric by `λ/3`, so that `r = 3g`.
    pub rescaled_volume: f64,
    pub sphere_volume: f64,
    /// `sphere_volume - rescaled_volume`
    pub margin: f64,
    pub status: CheckStatus,
    pub reason: Option<String>,
}

/// Volume comparison with the unit four-sphere after normalising to `r = 3g`.
pub fn bishop_volume_check(volume: f64, einstein_constant: Option<f64>) -> BishopCheck {
    let sphere_volume = 8.0 * PI * PI / 3.0;
    match einstein_constant {
        Some(l) if l > 0.0 => {
            let rescaled_volume = volume * (l / 3.0).powi(2);
            let b = InequalityBranch::evaluate(sphere_volume, rescaled_volume);
            BishopCheck {
                einstein_constant,
                rescaled_volume,
                sphere_volume,
                margin: b.margin,
                status: b.status,
                reason: None,
            }
        }
        _ => BishopCheck {
            einstein_constant,
            rescaled_volume: f64::NAN,
            sphere_volume,
            margin: f64::NAN,
            status: CheckStatus::Inapplicable,
            reason: Some("requires an Einstein metric with positive constant".to_owned()),
        },
    }
}

/// Windows for the normalised total scalar curvature of competing Einstein metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalBoundsReport {
    /// Fubini-Study value `12π√2`.
    pub cp2_reference: f64,
    /// `4π√6`, strict upper bound for any other Einstein metric on `ℂP²`.
    pub cp2_upper_bound: f64,
    /// `|cp2_reference/√3 - cp2_upper_bound|`
    pub cp2_consistency: f64,
    /// Round-sphere value `8π√6`.
    pub s4_reference: f64,
    /// `(8π√(6/5), 8π√2)`, open window for other non-negatively curved Einstein metrics on `S⁴`.
    pub s4_window: [f64; 2],
    /// Maximum deviation of the window from `(S₁/√5, S₁/√3)`.
    pub s4_consistency: f64,
    pub s4_reference_excluded: bool,
}

pub fn functional_bounds_report() -> FunctionalBoundsReport {
    let cp2_reference = 12.0 * PI * 2f64.sqrt();
    let cp2_upper_bound = 4.0 * PI * 6f64.sqrt();
    let s4_reference = 8.0 * PI * 6f64.sqrt();
    let s4_window = [8.0 * PI * (6.0f64 / 5.0).sqrt(), 8.0 * PI * 2f64.sqrt()];
    let s4_consistency = (s4_window[0] - s4_reference / 5f64.sqrt())
        .abs()
        .max((s4_window[1] - s4_reference / 3f64.sqrt()).abs());
    FunctionalBoundsReport {
        cp2_reference,
        cp2_upper_bound,
        cp2_consistency: (cp2_reference / 3f64.sqrt() - cp2_upper_bound).abs(),
        s4_reference,
        s4_window,
        s4_consistency,
        s4_reference_excluded: !(s4_window[0] < s4_reference && s4_reference < s4_window[1]),
    }
}
