//! Symmetric 3×3 eigenproblems.
//!
//! Eigenvalues come from the closed-form trigonometric solution of the
//! characteristic cubic. When the cubic is close to having a repeated root the
//! arccos is ill-conditioned, so we fall back to cyclic Jacobi rotations there.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::PI;

/// Below this value of `1 - r²` the trigonometric branch is abandoned.
const DISCRIMINANT_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen3 {
    /// Ascending eigenvalues.
    pub values: [f64; 3],
    /// Orthonormal eigenvectors, column `i` belonging to `values[i]`.
    pub vectors: Matrix3<f64>,
}

/// Sorted eigenvalues of a symmetric 3×3 matrix (only the upper triangle is read).
pub fn eigenvalues_sym3(m: &Matrix3<f64>) -> [f64; 3] {
    let off = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
    let q = m.trace() / 3.0;
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q, q, q];
    }
    let b = (m - Matrix3::identity() * q) / p;
    let r = 0.5 * sym_det(&b);
    if 1.0 - r * r < DISCRIMINANT_FLOOR {
        return eigen_sym3(m).values;
    }
    let phi = r.clamp(-1.0, 1.0).acos() / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let middle = 3.0 * q - largest - smallest;
    let mut out = [smallest, middle, largest];
    out.sort_by(f64::total_cmp);
    out
}

fn sym_det(b: &Matrix3<f64>) -> f64 {
    let (a, d, f) = (b[(0, 0)], b[(1, 1)], b[(2, 2)]);
    let (bb, c, e) = (b[(0, 1)], b[(0, 2)], b[(1, 2)]);
    a * (d * f - e * e) - bb * (bb * f - e * c) + c * (bb * e - d * c)
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn eigen_sym3(m: &Matrix3<f64>) -> SymEigen3 {
    let mut a = 0.5 * (m + m.transpose());
    let mut v = Matrix3::<f64>::identity();
    let scale = a.amax();
    if scale > 0.0 {
        for _sweep in 0..64 {
            let off = a[(0, 1)].abs() + a[(0, 2)].abs() + a[(1, 2)].abs();
            if off <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let mut rot = Matrix3::identity();
                rot[(p, p)] = c;
                rot[(q, q)] = c;
                rot[(p, q)] = s;
                rot[(q, p)] = -s;
                a = rot.transpose() * a * rot;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                v *= rot;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.map(|i| a[(i, i)]);
    let vectors = Matrix3::from_columns(&order.map(|i| -> Vector3<f64> { v.column(i).into_owned() }));
    SymEigen3 { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Rotation3;

    fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(eigenvalues_sym3(&Matrix3::zeros()), [0.0; 3]);
        let m = Matrix3::from_diagonal(&Vector3::new(2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0));
        let ev = eigenvalues_sym3(&m);
        assert!(close(ev, [-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0], 1e-15));
    }

    #[test]
    fn rotated_kahler_spectrum() {
        let d = Matrix3::from_diagonal(&Vector3::new(4.0, -2.0, -2.0));
        for (ax, angle) in [(Vector3::new(1.0, 2.0, 3.0), 0.7), (Vector3::new(-1.0, 0.5, 0.2), 2.1)] {
            let r = Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(ax), angle);
            let m = r.matrix() * d * r.matrix().transpose();
            assert!(close(eigenvalues_sym3(&m), [-2.0, -2.0, 4.0], 1e-10));
        }
    }

    #[test]
    fn jacobi_vectors_diagonalize() {
        let m = Matrix3::new(2.0, 1.0, 0.5, 1.0, -1.0, 0.25, 0.5, 0.25, 0.0);
        let e = eigen_sym3(&m);
        let d = e.vectors.transpose() * m * e.vectors;
        for i in 0..3 {
            assert!((d[(i, i)] - e.values[i]).abs() < 1e-13);
        }
        assert!((e.vectors.transpose() * e.vectors - Matrix3::identity()).amax() < 1e-14);
        assert!(close(eigenvalues_sym3(&m), e.values, 1e-12));
    }

    #[test]
    fn trig_and_jacobi_agree_near_degeneracy() {
        let eps = 1e-9;
        let m = Matrix3::from_diagonal(&Vector3::new(-1.0, -1.0 + eps, 2.0 - eps));
        let r = Rotation3::from_euler_angles(0.3, -0.2, 1.1);
        let m = r.matrix() * m * r.matrix().transpose();
        let trig = eigenvalues_sym3(&m);
        let jac = eigen_sym3(&m).values;
        assert!(close(trig, jac, 1e-12));
    }
}
