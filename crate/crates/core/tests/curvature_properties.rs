use nalgebra::{Matrix3, Matrix4, Matrix6};
use proptest::prelude::*;

use einstein4::curvature::{
    decompose, eigen_lower_bound_report, min_sectional, min_sectional_einstein, reconstruct, sectional_curvature,
    weyl_norm_bound_check, Bivector6, CurvatureDecomposition, CurvatureOperator, MinSectionalOptions, TraceFree3,
};

fn symmetric3(v: [f64; 6]) -> Matrix3<f64> {
    Matrix3::new(v[0], v[1], v[2], v[1], v[3], v[4], v[2], v[4], v[5])
}

fn trace_free() -> impl Strategy<Value = TraceFree3> {
    prop::array::uniform6(-5.0..5.0f64).prop_map(|v| {
        let m = symmetric3(v);
        TraceFree3::new(m - Matrix3::identity() * (m.trace() / 3.0)).expect("trace removed")
    })
}

fn operator() -> impl Strategy<Value = CurvatureOperator> {
    (trace_free(), trace_free(), prop::array::uniform9(-3.0..3.0f64), -30.0..30.0f64).prop_map(|(wp, wm, b, s)| {
        reconstruct(&CurvatureDecomposition {
            w_plus: wp,
            w_minus: wm,
            mixed: Matrix3::from_row_slice(&b),
            scalar: s,
        })
    })
}

fn vector4() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0..1.0f64).prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

/// Orthogonal factor of a QR decomposition, flipped to determinant one.
fn rotation() -> impl Strategy<Value = Matrix4<f64>> {
    prop::array::uniform16(-1.0..1.0f64)
        .prop_map(|v| Matrix4::from_row_slice(&v) + Matrix4::identity() * 3.0)
        .prop_map(|m| {
            let q = m.qr().q();
            if q.determinant() < 0.0 {
                let mut f = Matrix4::identity();
                f[(0, 0)] = -1.0;
                q * f
            } else {
                q
            }
        })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decomposition_round_trips(r in operator()) {
        let back = reconstruct(&decompose(&r));
        prop_assert!((back.matrix() - r.matrix()).amax() <= 1e-12 * r.matrix().amax().max(1.0));
    }

    #[test]
    fn symmetric_matrices_with_equal_traces_are_accepted(v in prop::array::uniform21(-2.0..2.0f64)) {
        let mut m = Matrix6::zeros();
        let mut k = 0;
        for i in 0..6 {
            for j in i..6 {
                m[(i, j)] = v[k];
                m[(j, i)] = v[k];
                k += 1;
            }
        }
        let shift = (m.fixed_view::<3, 3>(0, 0).trace() - m.fixed_view::<3, 3>(3, 3).trace()) / 6.0;
        for i in 0..3 {
            m[(i, i)] -= shift;
            m[(i + 3, i + 3)] += shift;
        }
        prop_assert!(CurvatureOperator::new(m).is_ok());
    }

    #[test]
    fn wedges_are_simple(e in vector4(), f in vector4()) {
        let phi = Bivector6::wedge(&e, &f);
        prop_assert!(phi.simplicity_defect().abs() <= 1e-12 * phi.norm().powi(2).max(1e-300));
        prop_assert!(close(phi.plus().norm(), phi.minus().norm(), 1e-12));
    }

    #[test]
    fn eigenvalue_bound_holds(m in trace_free()) {
        let r = eigen_lower_bound_report(&m);
        prop_assert!(r.ok, "{r:?}");
        prop_assert!(close(r.two_lambda_sq_minus_mu_nu, r.frobenius * r.frobenius, 1e-10));
    }

    #[test]
    fn invariants_are_rotation_invariant(r in operator(), q in rotation()) {
        let (d, e) = (decompose(&r), decompose(&r.rotated(&q)));
        prop_assert!(close(d.scalar, e.scalar, 1e-10));
        prop_assert!(close(d.w_plus.norm(), e.w_plus.norm(), 1e-10));
        prop_assert!(close(d.w_minus.norm(), e.w_minus.norm(), 1e-10));
        prop_assert!(close(d.mixed.norm(), e.mixed.norm(), 1e-10));
        for (a, b) in d.w_plus.eigenvalues().iter().zip(e.w_plus.eigenvalues()) {
            prop_assert!(close(*a, b, 1e-9));
        }
    }

    #[test]
    fn orientation_reversal_swaps_weyl_halves(r in operator()) {
        let (d, e) = (decompose(&r), decompose(&r.reversed_orientation()));
        prop_assert_eq!(d.w_plus, e.w_minus);
        prop_assert_eq!(d.w_minus, e.w_plus);
        prop_assert_eq!(d.scalar, e.scalar);
    }

    #[test]
    fn weyl_bound_is_sound(wp in trace_free(), wm in trace_free(), slack in 0.0..10.0f64) {
        // at or above the non-negative sectional curvature threshold
        let s = -6.0 * (wp.smallest_eigenvalue() + wm.smallest_eigenvalue()) + slack;
        let d = CurvatureDecomposition { w_plus: wp, w_minus: wm, mixed: Matrix3::zeros(), scalar: s };
        prop_assert!(min_sectional_einstein(&d).unwrap() >= -1e-12 * s.abs().max(1.0));
        prop_assert!(weyl_norm_bound_check(&d).unwrap().ok);
    }

    #[test]
    fn minimum_is_below_every_plane(r in operator(), e in vector4(), f in vector4()) {
        let phi = Bivector6::wedge(&e, &f);
        prop_assume!(phi.norm() > 1e-3);
        let unit = Bivector6::new(std::array::from_fn(|i| phi.0[i] / phi.norm()));
        let k = sectional_curvature(&r, &unit).unwrap();
        let m = min_sectional(&r, &MinSectionalOptions { random_starts: 8, ..Default::default() });
        prop_assert!(m.value <= k + 1e-9 * r.matrix().amax().max(1.0), "{} > {k}", m.value);
    }
}
