//! Sectional curvature and its minimum over the Grassmannian of 2-planes.
//!
//! A unit simple bivector is `φ = (u ⊕ v)/√2` with `u, v` unit vectors in ℝ³, so
//! the Grassmannian of oriented 2-planes is `S² × S²` and
//!
//! ```text
//! K(φ) = ½⟨u, A u⟩ + ½⟨v, C v⟩ + ⟨u, B v⟩
//! ```
//!
//! for the blocks `A`, `C`, `B` of the curvature operator. The minimiser runs
//! exact block-coordinate descent (each block update is a quadratic on a
//! sphere, solved through its secular equation) from a fixed multi-start set,
//! followed by Riemannian gradient refinement.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{eigen_sym3, Bivector6, CurvatureDecomposition, CurvatureOperator, Tolerances};
use crate::error::{Error, Result};

const SIMPLE_TOL: f64 = 1e-9;

/// `⟨φ, ℛφ⟩` for a unit simple bivector `φ`.
pub fn sectional_curvature(r: &CurvatureOperator, phi: &Bivector6) -> Result<f64> {
    let norm = phi.norm();
    if !((norm - 1.0).abs() <= SIMPLE_TOL) {
        return Err(Error::NotUnit { norm });
    }
    let (plus_sq, minus_sq) = (phi.plus().norm_squared(), phi.minus().norm_squared());
    if !((plus_sq - minus_sq).abs() <= SIMPLE_TOL) {
        return Err(Error::NotSimple { plus_sq, minus_sq });
    }
    Ok(phi.dot(&r.apply(phi)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinSectionalOptions {
    /// Pseudo-random starts in addition to the eigenvector starts.
    pub random_starts: usize,
    pub max_iterations: usize,
    /// Riemannian gradient norm (relative to the operator scale) accepted as stationary.
    pub gradient_tol: f64,
    /// Relative window within which two minima count as tied.
    pub tie_tol: f64,
}

impl Default for MinSectionalOptions {
    fn default() -> Self {
        Self {
            random_starts: 24,
            max_iterations: 500,
            gradient_tol: 1e-9,
            tie_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinSectional {
    pub value: f64,
    pub u: Vector3<f64>,
    pub v: Vector3<f64>,
    /// Minimising plane, `(u ⊕ v)/√2`.
    pub argmin: Bivector6,
    /// Whether the returned point met the stationarity tolerance.
    pub certified: bool,
    pub gradient_norm: f64,
}

struct Blocks {
    a: Matrix3<f64>,
    c: Matrix3<f64>,
    b: Matrix3<f64>,
    scale: f64,
}

impl Blocks {
    fn value(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        0.5 * u.dot(&(self.a * u)) + 0.5 * v.dot(&(self.c * v)) + u.dot(&(self.b * v))
    }

    /// Riemannian gradient on `S² × S²`.
    fn gradient(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
        let gu = self.a * u + self.b * v;
        let gv = self.c * v + self.b.transpose() * u;
        (gu - u * u.dot(&gu), gv - v * v.dot(&gv))
    }
}

/// Minimises `½⟨x, Mx⟩ + ⟨g, x⟩` over the unit sphere in ℝ³.
fn sphere_quadratic_min(m: &Matrix3<f64>, g: &Vector3<f64>) -> Vector3<f64> {
    let eig = eigen_sym3(m);
    let d = eig.values;
    let c = eig.vectors.transpose() * g;
    let gnorm = g.norm();
    // The minimiser is x = -(M - σ)⁻¹ g with σ ≤ d₀; write σ = d₀ - t, t ≥ 0.
    let norm_sq = |t: f64| -> f64 { (0..3).map(|i| (c[i] / (d[i] - d[0] + t)).powi(2)).sum() };
    let point = |t: f64| -> Vector3<f64> {
        let y = Vector3::from_fn(|i, _| -c[i] / (d[i] - d[0] + t));
        eig.vectors * y
    };
    let width = (d[2] - d[0]).abs().max(gnorm).max(1e-300);
    let floor = 1e-14 * width;
    if gnorm == 0.0 {
        return eig.vectors.column(0).into_owned();
    }
    if norm_sq(floor) >= 1.0 {
        // easy case: bisection on the secular equation |x(t)| = 1 for t ∈ [floor, |g|]
        let (mut lo, mut hi) = (floor, gnorm.max(floor));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if norm_sq(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi {
                break;
            }
        }
        let x = point(0.5 * (lo + hi));
        return x / x.norm();
    }
    // hard case: g has (numerically) no component along the lowest eigenspace
    let mut y = Vector3::zeros();
    let mut partial = 0.0;
    for i in 0..3 {
        let gap = d[i] - d[0];
        if gap > floor {
            y[i] = -c[i] / gap;
            partial += y[i] * y[i];
        }
    }
    let free = (1.0 - partial).max(0.0).sqrt();
    let mut best: Option<(f64, Vector3<f64>)> = None;
    for sign in [1.0, -1.0] {
        let mut z = y;
        z[0] = sign * free;
        let x = eig.vectors * z;
        let x = x / x.norm();
        let val = 0.5 * x.dot(&(m * x)) + g.dot(&x);
        if best.map_or(true, |(b, _)| val < b) {
            best = Some((val, x));
        }
    }
    best.unwrap().1
}

fn normalize_sign(u: Vector3<f64>, v: Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    // (u, v) and (-u, -v) are the same plane with opposite orientation
    let lead = u.iter().chain(v.iter()).copied().find(|x| x.abs() > 1e-12).unwrap_or(0.0);
    if lead < 0.0 {
        (-u, -v)
    } else {
        (u, v)
    }
}

fn lex_less(a: &(Vector3<f64>, Vector3<f64>), b: &(Vector3<f64>, Vector3<f64>)) -> bool {
    for (x, y) in a.0.iter().chain(a.1.iter()).zip(b.0.iter().chain(b.1.iter())) {
        if (x - y).abs() > 1e-9 {
            return x < y;
        }
    }
    false
}

fn descend(blocks: &Blocks, mut u: Vector3<f64>, mut v: Vector3<f64>, opts: &MinSectionalOptions) -> (Vector3<f64>, Vector3<f64>) {
    let mut value = blocks.value(&u, &v);
    for _ in 0..opts.max_iterations {
        u = sphere_quadratic_min(&blocks.a, &(blocks.b * v));
        v = sphere_quadratic_min(&blocks.c, &(blocks.b.transpose() * u));
        let next = blocks.value(&u, &v);
        let done = value - next <= 1e-15 * blocks.scale;
        value = next;
        if done {
            break;
        }
    }
    // gradient refinement with backtracking along geodesic-free retraction
    let mut step = 1.0 / blocks.scale.max(1e-300);
    for _ in 0..opts.max_iterations {
        let (gu, gv) = blocks.gradient(&u, &v);
        let gnorm = (gu.norm_squared() + gv.norm_squared()).sqrt();
        if gnorm <= 1e-14 * blocks.scale {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let nu = (u - gu * step).normalize();
            let nv = (v - gv * step).normalize();
            let nval = blocks.value(&nu, &nv);
            if nval <= value - 1e-4 * step * gnorm * gnorm {
                u = nu;
                v = nv;
                value = nval;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (u, v)
}

/// Minimum sectional curvature of an algebraic curvature operator.
pub fn min_sectional(r: &CurvatureOperator, opts: &MinSectionalOptions) -> MinSectional {
    let a = r.plus_block();
    let c = r.minus_block();
    let b = r.mixed_block();
    let scale = r.matrix().amax().max(1e-300);
    let blocks = Blocks { a, c, b, scale };

    let ea = eigen_sym3(&a).vectors;
    let ec = eigen_sym3(&c).vectors;
    let mut starts: Vec<(Vector3<f64>, Vector3<f64>)> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for sign in [1.0, -1.0] {
                starts.push((ea.column(i).into_owned(), ec.column(j) * sign));
            }
        }
    }
    // deterministic low-discrepancy starts on S² × S²
    let golden = 0.618_033_988_749_894_9_f64;
    for k in 0..opts.random_starts {
        let t = (k as f64 + 0.5) / opts.random_starts as f64;
        let s1 = ((k as f64) * golden).fract();
        let s2 = ((k as f64) * golden * golden).fract();
        starts.push((sphere_point(t, s1), sphere_point(1.0 - s2, t)));
    }

    let mut best: Option<(f64, (Vector3<f64>, Vector3<f64>))> = None;
    for (u0, v0) in starts {
        let (u, v) = descend(&blocks, u0, v0, opts);
        let val = blocks.value(&u, &v);
        let cand = normalize_sign(u, v);
        best = match best {
            None => Some((val, cand)),
            Some((bv, bp)) => {
                let tie = (val - bv).abs() <= opts.tie_tol * scale;
                if (tie && lex_less(&cand, &bp)) || (!tie && val < bv) {
                    Some((val.min(bv), cand))
                } else {
                    Some((bv, bp))
                }
            }
        };
    }
    let (value, (u, v)) = best.expect("start set is non-empty");
    let (gu, gv) = blocks.gradient(&u, &v);
    let gradient_norm = (gu.norm_squared() + gv.norm_squared()).sqrt();
    let certified = gradient_norm <= opts.gradient_tol * scale;
    MinSectional {
        value,
        u,
        v,
        argmin: Bivector6::from_parts(&(u * std::f64::consts::FRAC_1_SQRT_2), &(v * std::f64::consts::FRAC_1_SQRT_2)),
        certified,
        gradient_norm,
    }
}

/// Smallest sectional curvature over `samples` uniformly random planes; an upper
/// bound for the true minimum, used as an independent oracle.
pub fn sampled_min_sectional<R: Rng + ?Sized>(r: &CurvatureOperator, rng: &mut R, samples: usize) -> f64 {
    let blocks = Blocks {
        a: r.plus_block(),
        c: r.minus_block(),
        b: r.mixed_block(),
        scale: 1.0,
    };
    let mut unit = || {
        let x = Vector3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        x / x.norm()
    };
    (0..samples)
        .map(|_| {
            let u = unit();
            let v = unit();
            blocks.value(&u, &v)
        })
        .fold(f64::INFINITY, f64::min)
}

fn sphere_point(t: f64, s: f64) -> Vector3<f64> {
    let z = 1.0 - 2.0 * t;
    let rho = (1.0 - z * z).max(0.0).sqrt();
    let phi = 2.0 * std::f64::consts::PI * s;
    Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
}

/// Closed form for Einstein curvature: `s/12 + (λ₊ + λ₋)/2`.
///
/// This is the minimum over unit simple bivectors; in terms of a pair of unit
/// forms `φ⁺ + φ⁻` (norm √2) the same condition reads `s/6 + λ₊ + λ₋ ≥ 0`.
pub fn min_sectional_einstein(d: &CurvatureDecomposition) -> Result<f64> {
    d.require_einstein(Tolerances::default().einstein)?;
    Ok(d.scalar / 12.0 + 0.5 * (d.w_plus.smallest_eigenvalue() + d.w_minus.smallest_eigenvalue()))
}
