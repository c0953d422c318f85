use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::chart::Chart;
use crate::error::{Error, Result};

/// How the unit cube `[0,1]⁴` is mapped onto a chart's domain for quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cover {
    /// Affine map onto the chart's finite coordinate box.
    Box,
    /// Compactified hyperspherical coordinates on all of ℝ⁴: radius `scale·√(t/(1-t))`.
    Radial { scale: f64 },
}

impl Cover {
    /// Coordinates and Jacobian of the map at a point of the unit cube.
    pub fn map(&self, chart: &Chart, t: &[f64; 4]) -> ([f64; 4], f64) {
        match *self {
            Cover::Box => {
                let mut x = [0.0; 4];
                let mut jac = 1.0;
                for i in 0..4 {
                    let w = chart.upper[i] - chart.lower[i];
                    x[i] = chart.lower[i] + w * t[i];
                    jac *= w;
                }
                (x, jac)
            }
            Cover::Radial { scale } => {
                // r² = scale²·t/(1-t) makes √det g polynomial in t for both round and Fubini-Study metrics
                let u = 1.0 - t[0];
                let r = scale * (t[0] / u).sqrt();
                let r3_dr = scale.powi(4) * t[0] / (2.0 * u.powi(3));
                let (p1, p2, p3) = (PI * t[1], PI * t[2], 2.0 * PI * t[3]);
                let (s1, s2) = (p1.sin(), p2.sin());
                let x = [
                    r * p1.cos(),
                    r * s1 * p2.cos(),
                    r * s1 * s2 * p3.cos(),
                    r * s1 * s2 * p3.sin(),
                ];
                let jac = r3_dr * s1 * s1 * s2 * 2.0 * PI.powi(3);
                (x, jac)
            }
        }
    }
}

/// Closed-form data a model is checked against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub euler_characteristic: i64,
    pub signature: i64,
    pub volume: f64,
    pub scalar: f64,
    /// `λ` in `r = λg`, absent for non-Einstein members of a family.
    pub einstein_constant: Option<f64>,
    pub w_plus_spectrum: [f64; 3],
    pub w_minus_spectrum: [f64; 3],
    pub sectional_range: [f64; 2],
}

impl ReferenceData {
    /// `s = 4λ` and the Weyl spectra are sorted and trace-free.
    pub fn is_consistent(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
        let spectrum_ok = |w: &[f64; 3]| w[0] <= w[1] && w[1] <= w[2] && close(w[0] + w[1] + w[2], 0.0);
        self.einstein_constant.is_none_or(|l| close(4.0 * l, self.scalar))
            && spectrum_ok(&self.w_plus_spectrum)
            && spectrum_ok(&self.w_minus_spectrum)
            && self.sectional_range[0] <= self.sectional_range[1]
            && self.volume > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    S4,
    Cp2,
    S2xS2,
    T4,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::S4, ModelKind::Cp2, ModelKind::S2xS2, ModelKind::T4];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::S4 => "s4",
            ModelKind::Cp2 => "cp2",
            ModelKind::S2xS2 => "s2xs2",
            ModelKind::T4 => "t4",
        }
    }

    /// The model with unit size parameters.
    pub fn standard(&self) -> ModelManifold {
        match self {
            ModelKind::S4 => round_sphere(1.0),
            ModelKind::Cp2 => fubini_study(),
            ModelKind::S2xS2 => product_spheres(1.0, 1.0),
            ModelKind::T4 => flat_torus(1.0),
        }
        .expect("unit parameters are valid")
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model `{s}` (expected s4, cp2, s2xs2 or t4)")))
    }
}

#[derive(Debug, Clone)]
pub struct ModelManifold {
    pub kind: ModelKind,
    pub name: String,
    pub chart: Chart,
    pub cover: Cover,
    pub reference: ReferenceData,
}

impl ModelManifold {
    /// True when the curvature invariants do not depend on the point.
    pub fn is_homogeneous(&self) -> bool {
        true
    }

    /// A chart point a fixed fraction of the way into the domain, away from every excluded locus.
    pub fn base_point(&self) -> [f64; 4] {
        match self.cover {
            Cover::Radial { .. } => [0.0; 4],
            Cover::Box => std::array::from_fn(|i| {
                let (lo, hi) = (self.chart.lower[i], self.chart.upper[i]);
                lo + 0.4 * (hi - lo)
            }),
        }
    }

    /// Maps a point of the unit cube, clamped away from the faces, into the chart.
    pub fn sample_point(&self, t: &[f64; 4]) -> [f64; 4] {
        let clamp: [f64; 4] = std::array::from_fn(|i| 0.05 + 0.9 * t[i].clamp(0.0, 1.0));
        match self.cover {
            Cover::Box => self.cover.map(&self.chart, &clamp).0,
            Cover::Radial { .. } => {
                // keep radial samples in a moderate ball, radius below 2
                let c = [0.02 + 0.78 * t[0].clamp(0.0, 1.0), clamp[1], clamp[2], clamp[3]];
                Cover::Radial { scale: 1.0 }.map(&self.chart, &c).0
            }
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Round `S⁴` of the given radius in stereographic coordinates.
pub fn round_sphere(radius: f64) -> Result<ModelManifold> {
    positive("radius", radius)?;
    let c = 4.0 * radius * radius;
    let chart = Chart::new(
        "stereographic",
        [f64::NEG_INFINITY; 4],
        [f64::INFINITY; 4],
        "the pole opposite the origin",
        move |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            Matrix4::identity() * (c / (1.0 + r2).powi(2))
        },
    );
    let k = 1.0 / (radius * radius);
    Ok(ModelManifold {
        kind: ModelKind::S4,
        name: format!("round S4 (radius {radius})"),
        chart,
        cover: Cover::Radial { scale: 1.0 },
        reference: ReferenceData {
            euler_characteristic: 2,
            signature: 0,
            volume: 8.0 * PI * PI * radius.powi(4) / 3.0,
            scalar: 12.0 * k,
            einstein_constant: Some(3.0 * k),
            w_plus_spectrum: [0.0; 3],
            w_minus_spectrum: [0.0; 3],
            sectional_range: [k, k],
        },
    })
}

/// Real components of the Fubini-Study metric in the affine chart `z₁ = x₀ + i x₁`, `z₂ = x₂ + i x₃`.
fn fubini_study_metric(x: &[f64; 4]) -> Matrix4<f64> {
    let z = [(x[0], x[1]), (x[2], x[3])];
    let m = [x[0] * x[0] + x[1] * x[1], x[2] * x[2] + x[3] * x[3]];
    let n = 1.0 + m[0] + m[1];
    // h_jk = [n δ_jk - conj(z_j) z_k] / n², diagonal written as 1 + |z_other|² to avoid cancellation
    let h = |j: usize, k: usize| -> (f64, f64) {
        if j == k {
            return ((1.0 + m[1 - j]) / (n * n), 0.0);
        }
        let (aj, bj) = z[j];
        let (ak, bk) = z[k];
        let re = aj * ak + bj * bk;
        let im = aj * bk - bj * ak;
        (-re / (n * n), -im / (n * n))
    };
    // coordinate vector e_a as a complex 2-vector: (slot, is_imaginary)
    let basis = [(0usize, false), (0, true), (1, false), (1, true)];
    Matrix4::from_fn(|a, b| {
        let (j, ia) = basis[a];
        let (k, ib) = basis[b];
        // Re[h_jk X^j conj(Y^k)] with X^j, Y^k ∈ {1, i}
        let (hr, hi) = h(j, k);
        match (ia, ib) {
            (false, false) | (true, true) => hr,
            (true, false) => -hi,
            (false, true) => hi,
        }
    })
}

/// `ℂP²` with the Fubini-Study metric of holomorphic sectional curvature 4.
pub fn fubini_study() -> Result<ModelManifold> {
    let chart = Chart::new(
        "affine",
        [f64::NEG_INFINITY; 4],
        [f64::INFINITY; 4],
        "the line at infinity",
        fubini_study_metric,
    );
    Ok(ModelManifold {
        kind: ModelKind::Cp2,
        name: "Fubini-Study CP2".into(),
        chart,
        cover: Cover::Radial { scale: 1.0 },
        reference: ReferenceData {
            euler_characteristic: 3,
            signature: 1,
            volume: PI * PI / 2.0,
            scalar: 24.0,
            einstein_constant: Some(6.0),
            w_plus_spectrum: [-2.0, -2.0, 4.0],
            w_minus_spectrum: [0.0; 3],
            sectional_range: [1.0, 4.0],
        },
    })
}

/// `S²(a) × S²(b)` in spherical angles `(θ₁, φ₁, θ₂, φ₂)`.
pub fn product_spheres(a: f64, b: f64) -> Result<ModelManifold> {
    positive("a", a)?;
    positive("b", b)?;
    let chart = Chart::new(
        "spherical angles",
        [0.0; 4],
        [PI, 2.0 * PI, PI, 2.0 * PI],
        "the poles and the date lines of each factor",
        move |x| Matrix4::from_diagonal(&[a * a, (a * x[0].sin()).powi(2), b * b, (b * x[2].sin()).powi(2)].into()),
    );
    let (k1, k2) = (1.0 / (a * a), 1.0 / (b * b));
    let w = (k1 + k2) / 6.0;
    Ok(ModelManifold {
        kind: ModelKind::S2xS2,
        name: format!("S2({a}) x S2({b})"),
        chart,
        cover: Cover::Box,
        reference: ReferenceData {
            euler_characteristic: 4,
            signature: 0,
            volume: 16.0 * PI * PI * a * a * b * b,
            scalar: 2.0 * (k1 + k2),
            einstein_constant: (a == b).then_some(k1),
            w_plus_spectrum: [-w, -w, 2.0 * w],
            w_minus_spectrum: [-w, -w, 2.0 * w],
            sectional_range: [0.0, k1.max(k2)],
        },
    })
}

/// Flat torus `ℝ⁴ / (side·ℤ)⁴`.
pub fn flat_torus(side: f64) -> Result<ModelManifold> {
    positive("side", side)?;
    let chart = Chart::new("periodic box", [0.0; 4], [side; 4], "the faces of the fundamental domain", |_| {
        Matrix4::identity()
    });
    Ok(ModelManifold {
        kind: ModelKind::T4,
        name: format!("flat T4 (side {side})"),
        chart,
        cover: Cover::Box,
        reference: ReferenceData {
            euler_characteristic: 0,
            signature: 0,
            volume: side.powi(4),
            scalar: 0.0,
            einstein_constant: Some(0.0),
            w_plus_spectrum: [0.0; 3],
            w_minus_spectrum: [0.0; 3],
            sectional_range: [0.0, 0.0],
        },
    })
}

/// The four models with unit size parameters.
pub fn catalog() -> Vec<ModelManifold> {
    ModelKind::ALL.iter().map(ModelKind::standard).collect()
}
