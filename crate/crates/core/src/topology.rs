//! Exact-arithmetic obstructions to non-negatively curved Einstein metrics in terms of
//! Betti numbers, Euler characteristic and signature.

use num::rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TopologyDescriptor {
    pub b_plus: u32,
    pub b_minus: u32,
    pub b_one: u32,
    pub orientable: bool,
    pub simply_connected: bool,
    pub finite_pi1: bool,
}

impl TopologyDescriptor {
    /// A simply connected orientable manifold with the given intersection-form signature counts.
    pub fn simply_connected(b_plus: u32, b_minus: u32) -> Self {
        Self {
            b_plus,
            b_minus,
            b_one: 0,
            orientable: true,
            simply_connected: true,
            finite_pi1: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.simply_connected && !self.finite_pi1 {
            return Err(Error::InvalidParameter("a simply connected manifold has finite fundamental group".into()));
        }
        if self.finite_pi1 && self.b_one != 0 {
            return Err(Error::InvalidParameter("finite fundamental group forces b1 = 0".into()));
        }
        if !self.orientable {
            return Err(Error::InvalidParameter("b+ and b- need an orientation".into()));
        }
        Ok(())
    }

    /// `2 - 2b₁ + b⁺ + b⁻`, using Poincaré duality `b₃ = b₁`.
    pub fn chi(&self) -> i64 {
        2 - 2 * self.b_one as i64 + self.b_plus as i64 + self.b_minus as i64
    }

    pub fn tau(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }
}

fn check_parity(chi: i64, tau: i64) -> Result<()> {
    if (chi - tau).rem_euclid(2) != 0 {
        return Err(Error::Parity { chi, tau });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowGate {
    pub chi: i64,
    pub tau: i64,
    /// `9 - χ`, must be non-negative.
    pub upper_margin: i64,
    /// `χ - (15/4)|τ|`, must be positive.
    #[serde(serialize_with = "ratio_str")]
    pub lower_margin: Ratio<i64>,
    pub ok: bool,
}

/// `9 ≥ χ > (15/4)|τ|`, necessary for a non-negatively curved Einstein metric
/// that is neither self-dual nor anti-self-dual.
pub fn window_gate(chi: i64, tau: i64) -> Result<WindowGate> {
    check_parity(chi, tau)?;
    let upper_margin = 9 - chi;
    let lower_margin = Ratio::from_integer(chi) - Ratio::new(15 * tau.abs(), 4);
    Ok(WindowGate {
        chi,
        tau,
        upper_margin,
        ok: upper_margin >= 0 && lower_margin > Ratio::from_integer(0),
        lower_margin,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HitchinGate {
    pub chi: i64,
    pub tau: i64,
    /// `8χ² - 27τ²`; with `χ ≥ 0` its sign decides `χ ≥ (3/2)^{3/2}|τ|`.
    pub exact_margin: i64,
    /// `χ - (3/2)^{3/2}|τ|`, for display only.
    pub margin: f64,
    pub ok: bool,
}

/// `χ ≥ (3/2)^{3/2}|τ|`, necessary for an Einstein metric of positive sectional curvature.
pub fn hitchin_gate(chi: i64, tau: i64) -> Result<HitchinGate> {
    check_parity(chi, tau)?;
    let exact_margin = 8 * chi * chi - 27 * tau * tau;
    Ok(HitchinGate {
        chi,
        tau,
        exact_margin,
        margin: chi as f64 - 1.5f64.powf(1.5) * tau.abs() as f64,
        ok: chi >= 0 && exact_margin >= 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub tau: i64,
    /// Least `χ ≤ 9` with `χ > (15/4)|τ|` and `χ ≡ τ (mod 2)`.
    pub min_chi: Option<i64>,
    /// Largest degree `k` of a covering with `k·min_chi ≤ 9`.
    pub max_cover_degree: Option<i64>,
    pub reasoning: String,
}

/// What the window forces for a manifold of signature `τ ≠ 0` with finite fundamental group.
/// A `k`-fold cover multiplies both `χ` and `τ` by `k`, so once `2·min_chi > 9`
/// the universal cover is the manifold itself.
pub fn simply_connected_deduction(tau: i64) -> Result<Deduction> {
    if tau == 0 {
        return Err(Error::InvalidParameter(
            "signature zero yields no conclusion: covers need not violate the window".into(),
        ));
    }
    let t = tau.abs();
    let min_chi = (0..=9).find(|&chi| 4 * chi > 15 * t && (chi - t) % 2 == 0);
    let max_cover_degree = min_chi.map(|c| 9 / c);
    let reasoning = match (min_chi, max_cover_degree) {
        (Some(c), Some(1)) => format!(
            "chi > 15/4*{t} with chi = tau mod 2 gives chi >= {c}; a k-fold cover has chi = {c}k > 9 for k >= 2, so pi1 is trivial"
        ),
        (Some(c), Some(k)) => format!("chi >= {c}; covers of degree up to {k} remain inside the window"),
        _ => format!("no chi <= 9 exceeds 15/4*{t}; no such manifold exists"),
    };
    Ok(Deduction {
        tau,
        min_chi,
        max_cover_degree,
        reasoning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The metric must be homothetic to Fubini-Study on `ℂP²`.
    FubiniStudy,
    /// No Einstein metric of non-negative sectional curvature exists.
    NoMetric,
    /// The positive-form hypotheses fail; nothing is concluded.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveFormGate {
    pub descriptor: TopologyDescriptor,
    pub hypotheses_met: bool,
    pub window: WindowGate,
    pub hitchin: HitchinGate,
    pub verdict: Verdict,
    pub conclusion: String,
}

/// Positive definite intersection form (`b⁻ = 0`, `b⁺ ≠ 0`): a non-negatively curved
/// Einstein metric is then homothetic to Fubini-Study, so only `b⁺ = 1` survives.
pub fn positive_form_gate(desc: &TopologyDescriptor) -> Result<PositiveFormGate> {
    desc.validate()?;
    let (chi, tau) = (desc.chi(), desc.tau());
    let window = window_gate(chi, tau)?;
    let hitchin = hitchin_gate(chi, tau)?;
    let hypotheses_met = desc.b_minus == 0 && desc.b_plus != 0;
    let (verdict, conclusion) = if !hypotheses_met {
        (Verdict::NotApplicable, "hypotheses not met: need b- = 0 and b+ != 0".to_owned())
    } else if desc.b_plus == 1 && chi == 3 {
        (
            Verdict::FubiniStudy,
            "any Einstein metric of non-negative sectional curvature is homothetic to Fubini-Study CP2".to_owned(),
        )
    } else {
        let why = if window.ok {
            "only CP2 carries such a metric with a positive definite form"
        } else if hitchin.ok {
            "window closed (Hitchin bound open), and the self-dual case forces CP2"
        } else {
            "window and Hitchin bound both closed"
        };
        (Verdict::NoMetric, format!("no non-negatively curved Einstein metric: {why}"))
    };
    Ok(PositiveFormGate {
        descriptor: *desc,
        hypotheses_met,
        window,
        hitchin,
        verdict,
        conclusion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormType {
    /// `b₂ = 0`
    Trivial,
    /// Diagonal `b⁺⟨1⟩ ⊕ b⁻⟨-1⟩`.
    Odd,
    /// `k·H` for the hyperbolic plane `H`.
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Self-dual or anti-self-dual metrics, classified up to isometry.
    SelfDual,
    /// Neither, constrained by the window.
    Window,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homeotype {
    pub b_plus: u32,
    pub b_minus: u32,
    pub chi: i64,
    pub tau: i64,
    pub form: FormType,
    pub branch: Branch,
    pub representative: String,
}

fn representative(b_plus: u32, b_minus: u32, form: FormType) -> String {
    let sum = |n: u32, m: &str| match n {
        0 => None,
        1 => Some(m.to_owned()),
        n => Some(format!("{n}{m}")),
    };
    match form {
        FormType::Trivial => "S4".into(),
        FormType::Even if b_plus == 1 => "S2xS2".into(),
        FormType::Even => format!("{b_plus}(S2xS2)"),
        FormType::Odd => [sum(b_plus, "CP2"), sum(b_minus, "CP2bar")]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("#"),
    }
}

/// Simply connected homeotypes that could carry an Einstein metric of non-negative
/// sectional curvature, counted up to orientation.
///
/// Self-dual branch: `S⁴` and `ℂP²`. Window branch: every `(b⁺, b⁻)` with
/// `b⁺ ≥ b⁻`, `χ = 2 + b⁺ + b⁻ ≤ 9` and `χ > (15/4)|τ|`; indefinite forms are
/// odd, or even when `τ ≡ 0 (mod 8)`, which in range means `τ = 0`.
pub fn enumerate_homeotypes() -> Vec<Homeotype> {
    let mut out = Vec::new();
    let mut push = |b_plus: u32, b_minus: u32, form: FormType, branch: Branch| {
        if out.iter().any(|h: &Homeotype| (h.b_plus, h.b_minus, h.form) == (b_plus, b_minus, form)) {
            return;
        }
        out.push(Homeotype {
            b_plus,
            b_minus,
            chi: 2 + b_plus as i64 + b_minus as i64,
            tau: b_plus as i64 - b_minus as i64,
            form,
            branch,
            representative: representative(b_plus, b_minus, form),
        });
    };
    push(0, 0, FormType::Trivial, Branch::SelfDual);
    push(1, 0, FormType::Odd, Branch::SelfDual);
    for b_plus in 0..=7u32 {
        for b_minus in 0..=b_plus {
            let chi = 2 + (b_plus + b_minus) as i64;
            let tau = b_plus as i64 - b_minus as i64;
            if !window_gate(chi, tau).is_ok_and(|g| g.ok) {
                continue;
            }
            if b_plus + b_minus == 0 {
                push(0, 0, FormType::Trivial, Branch::Window);
                continue;
            }
            push(b_plus, b_minus, FormType::Odd, Branch::Window);
            if tau % 8 == 0 && b_minus > 0 {
                push(b_plus, b_minus, FormType::Even, Branch::Window);
            }
        }
    }
    out
}
