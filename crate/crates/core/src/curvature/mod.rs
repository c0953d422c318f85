//! Pointwise algebra of 2-forms and algebraic curvature operators in dimension four.
//!
//! Bivectors are stored in the adapted orthonormal basis
//!
//! ```text
//! f1± = (e0∧e1 ± e2∧e3)/√2,  f2± = (e0∧e2 ± e3∧e1)/√2,  f3± = (e0∧e3 ± e1∧e2)/√2
//! ```
//!
//! with the orientation `e0∧e1∧e2∧e3 > 0`, so that the first three coordinates span
//! the self-dual forms Λ⁺ and the last three the anti-self-dual forms Λ⁻. The
//! inner product gives `e0∧e1` unit length, and a curvature operator acts by
//! `(Rφ)_ab = ½ R_abcd φ^cd`, so the unit round 4-sphere has `R = Id`.

mod bounds;
mod eigen;
pub mod random;
mod sectional;

pub use bounds::{
    det_bound_check, eigen_lower_bound_report, gauss_bonnet_integrand, signature_integrand,
    weitzenbock_parallel_check, weyl_norm_bound_check, DetBoundReport, EigenBoundReport,
    WeitzenbockReport, WeylNormBound,
};
pub use eigen::{eigen_sym3, eigenvalues_sym3, SymEigen3};
pub use sectional::{
    min_sectional, min_sectional_einstein, sampled_min_sectional, sectional_curvature, MinSectional, MinSectionalOptions,
};

use nalgebra::{Matrix3, Matrix4, Matrix6, Vector3, Vector6};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Riemann tensor `R_abcd` in an orthonormal frame, all indices down.
pub type Riemann4 = [[[[f64; 4]; 4]; 4]; 4];

/// Index pairs `(a, b)` with `a < b`, the coordinate basis of Λ².
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Absolute floor used when a relative tolerance meets an all-zero input.
pub(crate) const ZERO_FLOOR: f64 = 1e-300;

/// Default relative tolerances for validating curvature input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed `max |M - Mᵀ|` relative to `max |M|`.
    pub symmetry: f64,
    /// Allowed `|tr A - tr C|` relative to `max |M|`.
    pub block_trace: f64,
    /// Allowed `‖mixed‖_F` relative to the decomposition scale for the Einstein predicate.
    pub einstein: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            symmetry: 1e-10,
            block_trace: 1e-10,
            einstein: 1e-6,
        }
    }
}

/// Antisymmetric 4×4 component matrix `φ_ab` of a 2-form in an orthonormal coframe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoForm(pub Matrix4<f64>);

impl TwoForm {
    /// `e ∧ f` for covectors `e`, `f`: `φ_ab = e_a f_b - e_b f_a`.
    pub fn wedge(e: &[f64; 4], f: &[f64; 4]) -> Self {
        TwoForm(Matrix4::from_fn(|a, b| e[a] * f[b] - e[b] * f[a]))
    }

    /// Component form of the Hodge star, `(⋆φ)_ab = ½ ε_abcd φ_cd`.
    pub fn hodge_star(&self) -> Self {
        let mut out = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        acc += 0.5 * levi_civita([a, b, c, d]) * self.0[(c, d)];
                    }
                }
                out[(a, b)] = acc;
            }
        }
        TwoForm(out)
    }

    /// `φ ∧ φ` as a multiple of the volume form.
    pub fn wedge_self(&self) -> f64 {
        let p = &self.0;
        2.0 * (p[(0, 1)] * p[(2, 3)] - p[(0, 2)] * p[(1, 3)] + p[(0, 3)] * p[(1, 2)])
    }
}

/// Sign of the permutation `idx` of `(0, 1, 2, 3)`, zero on repeated indices.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    let mut p = idx;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
        }
    }
    for i in 0..4 {
        while p[i] != i {
            let t = p[i];
            p.swap(i, t);
            sign = -sign;
        }
    }
    sign
}

/// A 2-form at a point, in the adapted basis `(f1⁺, f2⁺, f3⁺, f1⁻, f2⁻, f3⁻)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bivector6(pub Vector6<f64>);

impl Bivector6 {
    pub fn new(components: [f64; 6]) -> Self {
        Bivector6(Vector6::from_column_slice(&components))
    }

    pub fn from_parts(plus: &Vector3<f64>, minus: &Vector3<f64>) -> Self {
        Bivector6(Vector6::new(
            plus[0], plus[1], plus[2], minus[0], minus[1], minus[2],
        ))
    }

    pub fn plus(&self) -> Vector3<f64> {
        self.0.fixed_rows::<3>(0).into_owned()
    }

    pub fn minus(&self) -> Vector3<f64> {
        self.0.fixed_rows::<3>(3).into_owned()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dot(&self, other: &Bivector6) -> f64 {
        self.0.dot(&other.0)
    }

    /// Negates the anti-self-dual half.
    pub fn hodge_star(&self) -> Self {
        let mut out = self.0;
        for i in 3..6 {
            out[i] = -out[i];
        }
        Bivector6(out)
    }

    /// `|φ⁺|² - |φ⁻|²`, which vanishes exactly on simple bivectors.
    pub fn simplicity_defect(&self) -> f64 {
        self.plus().norm_squared() - self.minus().norm_squared()
    }

    pub fn from_two_form(form: &TwoForm) -> Self {
        let p = &form.0;
        let (p01, p02, p03, p12, p13, p23) = (
            p[(0, 1)],
            p[(0, 2)],
            p[(0, 3)],
            p[(1, 2)],
            p[(1, 3)],
            p[(2, 3)],
        );
        Bivector6::new([
            SQRT_HALF * (p01 + p23),
            SQRT_HALF * (p02 - p13),
            SQRT_HALF * (p03 + p12),
            SQRT_HALF * (p01 - p23),
            SQRT_HALF * (p02 + p13),
            SQRT_HALF * (p03 - p12),
        ])
    }

    pub fn to_two_form(&self) -> TwoForm {
        let c = &self.0;
        let p01 = SQRT_HALF * (c[0] + c[3]);
        let p23 = SQRT_HALF * (c[0] - c[3]);
        let p02 = SQRT_HALF * (c[1] + c[4]);
        let p13 = SQRT_HALF * (c[4] - c[1]);
        let p03 = SQRT_HALF * (c[2] + c[5]);
        let p12 = SQRT_HALF * (c[2] - c[5]);
        let mut m = Matrix4::zeros();
        for &(a, b, v) in &[
            (0, 1, p01),
            (0, 2, p02),
            (0, 3, p03),
            (1, 2, p12),
            (1, 3, p13),
            (2, 3, p23),
        ] {
            m[(a, b)] = v;
            m[(b, a)] = -v;
        }
        TwoForm(m)
    }

    /// Coordinate image of `e ∧ f`.
    pub fn wedge(e: &[f64; 4], f: &[f64; 4]) -> Self {
        Self::from_two_form(&TwoForm::wedge(e, f))
    }
}

/// The fixed oriented orthonormal basis `f1⁺, f2⁺, f3⁺, f1⁻, f2⁻, f3⁻`.
pub fn adapted_basis() -> [Bivector6; 6] {
    std::array::from_fn(|i| {
        let mut v = Vector6::zeros();
        v[i] = 1.0;
        Bivector6(v)
    })
}

/// Matrix of the induced action `φ ↦ Q φ Qᵀ` of an orthogonal `Q` on Λ², in the adapted basis.
pub fn lambda2_action(q: &Matrix4<f64>) -> Matrix6<f64> {
    let basis = adapted_basis();
    let mut out = Matrix6::zeros();
    for (j, f) in basis.iter().enumerate() {
        let form = f.to_two_form();
        let rotated = TwoForm(q * form.0 * q.transpose());
        out.set_column(j, &Bivector6::from_two_form(&rotated).0);
    }
    out
}

/// Symmetric operator `ℛ: Λ² → Λ²` in the adapted basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureOperator(Matrix6<f64>);

impl CurvatureOperator {
    /// Validates symmetry and the equal-block-trace condition (the first Bianchi identity).
    pub fn new(matrix: Matrix6<f64>) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: Matrix6<f64>, tol: &Tolerances) -> Result<Self> {
        let scale = matrix.amax().max(ZERO_FLOOR);
        let asym = (matrix - matrix.transpose()).amax();
        if !(asym <= tol.symmetry * scale) {
            return Err(Error::NotSymmetric {
                asymmetry: asym,
                tolerance: tol.symmetry * scale,
            });
        }
        let plus = matrix.fixed_view::<3, 3>(0, 0).trace();
        let minus = matrix.fixed_view::<3, 3>(3, 3).trace();
        if !((plus - minus).abs() <= tol.block_trace * scale) {
            return Err(Error::BlockTraceMismatch { plus, minus });
        }
        // store exactly symmetric
        Ok(CurvatureOperator(0.5 * (matrix + matrix.transpose())))
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix6<f64>) -> Self {
        CurvatureOperator(matrix)
    }

    pub fn identity() -> Self {
        CurvatureOperator(Matrix6::identity())
    }

    pub fn zero() -> Self {
        CurvatureOperator(Matrix6::zeros())
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    pub fn plus_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(0, 0).into_owned()
    }

    pub fn minus_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(3, 3).into_owned()
    }

    pub fn mixed_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(0, 3).into_owned()
    }

    pub fn apply(&self, phi: &Bivector6) -> Bivector6 {
        Bivector6(self.0 * phi.0)
    }

    /// Assembles the operator from orthonormal-frame components `R_abcd`.
    ///
    /// The tensor is symmetrised over pair exchange before projection; the
    /// block-trace condition is not checked here since finite-difference input
    /// only satisfies it approximately.
    pub fn from_riemann(r: &Riemann4) -> Self {
        let basis: Vec<TwoForm> = adapted_basis().iter().map(|f| f.to_two_form()).collect();
        let mut m = Matrix6::zeros();
        for i in 0..6 {
            for j in i..6 {
                let (fi, fj) = (&basis[i].0, &basis[j].0);
                let mut acc = 0.0;
                for &(a, b) in &PAIRS {
                    for &(c, d) in &PAIRS {
                        acc += fi[(a, b)] * r[a][b][c][d] * fj[(c, d)];
                    }
                }
                m[(i, j)] = acc;
                m[(j, i)] = acc;
            }
        }
        CurvatureOperator(m)
    }

    /// Inverse of [`CurvatureOperator::from_riemann`]: `R_abcd = ⟨e_a∧e_b, ℛ(e_c∧e_d)⟩`.
    pub fn to_riemann(&self) -> Riemann4 {
        let mut unit = [[Bivector6::new([0.0; 6]); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut e = [0.0; 4];
                let mut f = [0.0; 4];
                e[a] = 1.0;
                f[b] = 1.0;
                unit[a][b] = Bivector6::wedge(&e, &f);
            }
        }
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        r[a][b][c][d] = unit[a][b].dot(&self.apply(&unit[c][d]));
                    }
                }
            }
        }
        r
    }

    /// Ricci contraction `r_ac = Σ_b R_abcb`.
    pub fn ricci(&self) -> Matrix4<f64> {
        let r = self.to_riemann();
        Matrix4::from_fn(|a, c| (0..4).map(|b| r[a][b][c][b]).sum())
    }

    /// Conjugates by the Λ²-action of an orthogonal 4×4 matrix.
    pub fn rotated(&self, q: &Matrix4<f64>) -> Self {
        let l = lambda2_action(q);
        CurvatureOperator(l * self.0 * l.transpose())
    }

    /// The same curvature viewed with the opposite orientation: Λ⁺ and Λ⁻ trade places.
    pub fn reversed_orientation(&self) -> Self {
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.minus_block());
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(&self.plus_block());
        let b = self.mixed_block();
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(&b.transpose());
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&b);
        CurvatureOperator(m)
    }
}

/// Symmetric trace-free 3×3 block (`W⁺` or `W⁻`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceFree3(Matrix3<f64>);

impl TraceFree3 {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let scale = m.amax().max(ZERO_FLOOR);
        let asym = (m - m.transpose()).amax();
        if !(asym <= 1e-12 * scale) {
            return Err(Error::NotSymmetric {
                asymmetry: asym,
                tolerance: 1e-12 * scale,
            });
        }
        if !(m.trace().abs() <= 1e-12 * scale) {
            return Err(Error::NotTraceFree { trace: m.trace() });
        }
        Ok(TraceFree3(m))
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(Matrix3::from_diagonal(&Vector3::new(a, b, c)))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        TraceFree3(m)
    }

    pub fn zero() -> Self {
        TraceFree3(Matrix3::zeros())
    }

    pub fn scaled(&self, c: f64) -> Self {
        TraceFree3(self.0 * c)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Endomorphism norm `|W|`, the Frobenius norm of the block.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Eigenvalues `λ ≤ μ ≤ ν`.
    pub fn eigenvalues(&self) -> [f64; 3] {
        eigenvalues_sym3(&self.0)
    }

    /// Smallest eigenvalue, which is `≤ 0` for a trace-free block.
    pub fn smallest_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

/// The primitive pieces `W⁺`, `W⁻`, the trace-free Ricci block and `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureDecomposition {
    pub w_plus: TraceFree3,
    pub w_minus: TraceFree3,
    /// Off-diagonal `Λ⁻ → Λ⁺` block, the trace-free Ricci curvature.
    pub mixed: Matrix3<f64>,
    pub scalar: f64,
}

impl CurvatureDecomposition {
    /// `|r̊|²` as a tensor norm, four times the Frobenius norm squared of the mixed block.
    pub fn traceless_ricci_norm_squared(&self) -> f64 {
        4.0 * self.mixed.norm_squared()
    }

    fn scale(&self) -> f64 {
        self.scalar
            .abs()
            .max(self.w_plus.norm())
            .max(self.w_minus.norm())
            .max(self.mixed.norm())
    }

    pub fn is_einstein(&self, tol: f64) -> bool {
        self.mixed.norm() <= tol * self.scale()
    }

    pub(crate) fn require_einstein(&self, tol: f64) -> Result<()> {
        if self.is_einstein(tol) {
            Ok(())
        } else {
            Err(Error::NotEinstein {
                mixed_norm: self.mixed.norm(),
            })
        }
    }

    pub fn reversed_orientation(&self) -> Self {
        CurvatureDecomposition {
            w_plus: self.w_minus,
            w_minus: self.w_plus,
            mixed: self.mixed.transpose(),
            scalar: self.scalar,
        }
    }
}

/// Splits `ℛ` into `W⁺ + s/12`, `W⁻ + s/12` and the mixed block.
pub fn decompose(r: &CurvatureOperator) -> CurvatureDecomposition {
    let a = r.plus_block();
    let c = r.minus_block();
    let scalar = 2.0 * (a.trace() + c.trace());
    let shift = Matrix3::identity() * (scalar / 12.0);
    CurvatureDecomposition {
        w_plus: TraceFree3::from_matrix_unchecked(a - shift),
        w_minus: TraceFree3::from_matrix_unchecked(c - shift),
        mixed: r.mixed_block(),
        scalar,
    }
}

pub fn reconstruct(d: &CurvatureDecomposition) -> CurvatureOperator {
    let shift = Matrix3::identity() * (d.scalar / 12.0);
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&(d.w_plus.matrix() + shift));
    m.fixed_view_mut::<3, 3>(3, 3)
        .copy_from(&(d.w_minus.matrix() + shift));
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(&d.mixed);
    m.fixed_view_mut::<3, 3>(3, 0)
        .copy_from(&d.mixed.transpose());
    CurvatureOperator::from_matrix_unchecked(m)
}
