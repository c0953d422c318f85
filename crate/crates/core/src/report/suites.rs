use nalgebra::Matrix3;
use num::rational::Ratio;
use num::{BigInt, BigRational, Complex, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::{CheckRecord, Provenance, ReportOptions, Suite, SuiteReport};
use crate::curvature::random::{random_nonnegative_einstein, random_operator, random_trace_free};
use crate::curvature::{
    decompose, det_bound_check, eigen_lower_bound_report, min_sectional, min_sectional_einstein, reconstruct,
    sampled_min_sectional, weitzenbock_parallel_check, weyl_norm_bound_check, CurvatureDecomposition,
    CurvatureOperator, MinSectionalOptions, TraceFree3,
};
use crate::error::Result;
use crate::geometry::{
    conformal_law_convergence, conformal_law_residual, curvature_operator_at, frak_s_at, product_spheres, ModelKind,
    ModelManifold,
};
use crate::quadrature::{
    bishop_volume_check, curvature_integrals, euler_bound_check, functional_bounds_report, gap_theorem_check,
    CheckStatus, CurvatureIntegrals, Orientation,
};
use crate::spinor::{
    exact_soldering, kato_constants_estimate, projection_ratio, random_symmetric, random_vector, ExactComplex,
    SpinorTensor,
};
use crate::topology::{
    enumerate_homeotypes, hitchin_gate, positive_form_gate, simply_connected_deduction, window_gate,
    TopologyDescriptor, Verdict,
};

use Provenance::{Derived, Published, Trivial};

/// Integer soldering coordinates and real symmetric coefficients `(re, im)` of `U`.
pub(crate) const EXACT_SPINOR_CASES: [([i64; 4], [(i64, i64); 5]); 10] = [
    ([1, 0, 0, 0], [(1, 0), (0, 0), (0, 0), (0, 0), (0, 0)]),
    ([0, 1, 0, 0], [(0, 0), (0, 0), (1, 0), (0, 0), (0, 0)]),
    ([0, 0, 1, 0], [(0, 0), (0, 0), (0, 0), (0, 0), (0, 1)]),
    ([0, 0, 0, 1], [(1, 1), (0, 0), (0, 0), (0, 0), (1, -1)]),
    ([1, 2, -1, 3], [(2, 0), (-1, 0), (0, 0), (5, 0), (1, 0)]),
    ([0, 0, 4, -1], [(0, 0), (0, 0), (1, 0), (0, 0), (0, 0)]),
    ([3, -2, 5, 1], [(1, 2), (3, -1), (0, 4), (-2, 0), (1, 1)]),
    ([-1, -1, -1, -1], [(0, 1), (1, 0), (0, -1), (-1, 0), (2, 2)]),
    ([7, 0, -3, 2], [(5, -3), (0, 0), (0, 0), (4, 0), (0, 0)]),
    ([2, 9, 4, -6], [(-3, 1), (2, 7), (1, -1), (0, 3), (6, 0)]),
];

fn rng(options: &ReportOptions, suite: Suite) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(options.seed ^ (suite as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn run_suite(suite: Suite, options: &ReportOptions) -> Result<SuiteReport> {
    let records = match suite {
        Suite::Decomposition => decomposition(options)?,
        Suite::Pointwise => pointwise(options)?,
        Suite::Spinor => spinor(options)?,
        Suite::Conformal => conformal(options)?,
        Suite::Chern => chern(options)?,
        Suite::Inequalities => inequalities(options)?,
        Suite::Functional => functional(options),
        Suite::Topology => topology()?,
    };
    Ok(SuiteReport { suite, records })
}

fn decomposition(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut rng = rng(o, Suite::Decomposition);
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..o.samples.operators {
        let r = random_operator(&mut rng);
        let back = reconstruct(&decompose(&r));
        worst = worst.max((back.matrix() - r.matrix()).amax() / r.matrix().amax());
    }
    out.push(CheckRecord::at_most(
        "decomposition.round_trip",
        &format!("reconstruct(decompose(R)) = R over {} random operators (relative max error)", o.samples.operators),
        worst,
        o.tol(1e-12),
        Trivial,
    ));

    let basis = crate::curvature::adapted_basis();
    let mut gram: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (i, b) in basis.iter().enumerate() {
        for (j, c) in basis.iter().enumerate() {
            gram = gram.max((b.dot(c) - if i == j { 1.0 } else { 0.0 }).abs());
        }
        let sign = if i < 3 { 1.0 } else { -1.0 };
        star = star.max((b.to_two_form().hodge_star().0 - b.to_two_form().0 * sign).amax());
    }
    out.push(CheckRecord::at_most("decomposition.basis_orthonormal", "adapted basis is orthonormal", gram, 1e-15, Trivial));
    out.push(CheckRecord::at_most("decomposition.basis_eigenforms", "adapted basis diagonalises the Hodge star", star, 1e-15, Trivial));

    for kind in ModelKind::ALL {
        let model = kind.standard();
        let d = decompose(&curvature_operator_at(&model.chart, &model.base_point(), &o.fd)?);
        let reference = &model.reference;
        let id = |q: &str| format!("decomposition.{}.{q}", model.kind.name());
        out.push(CheckRecord::close(&id("scalar"), "scalar curvature at the base point", d.scalar, reference.scalar, o.tol(1e-6), Published));
        out.push(CheckRecord::at_most(&id("einstein"), "trace-free Ricci block norm", d.mixed.norm(), o.tol(1e-6), Published));
        let spectrum_error = |w: &TraceFree3, e: &[f64; 3]| {
            w.eigenvalues().iter().zip(e).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        out.push(CheckRecord::at_most(
            &id("w_plus_spectrum"),
            &format!("W+ eigenvalues match {:?}", reference.w_plus_spectrum),
            spectrum_error(&d.w_plus, &reference.w_plus_spectrum),
            o.tol(1e-6),
            Derived,
        ));
        out.push(CheckRecord::at_most(
            &id("w_minus_spectrum"),
            &format!("W- eigenvalues match {:?}", reference.w_minus_spectrum),
            spectrum_error(&d.w_minus, &reference.w_minus_spectrum),
            o.tol(1e-6),
            Derived,
        ));
    }
    Ok(out)
}

fn pointwise(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut rng = rng(o, Suite::Pointwise);
    let mut out = Vec::new();

    let mut min_ratio = f64::INFINITY;
    let mut identity_error: f64 = 0.0;
    for _ in 0..o.samples.trace_free {
        let r = eigen_lower_bound_report(&random_trace_free(&mut rng));
        min_ratio = min_ratio.min(r.ratio);
        identity_error = identity_error.max((r.two_lambda_sq_minus_mu_nu - r.frobenius * r.frobenius).abs() / (r.frobenius * r.frobenius));
    }
    out.push(CheckRecord::at_least(
        "pointwise.eigen_bound",
        &format!("min over {} trace-free blocks of sqrt6|lambda_min|/|M|", o.samples.trace_free),
        min_ratio,
        1.0 - 1e-12,
        Published,
    ));
    out.push(CheckRecord::at_most("pointwise.eigen_identity", "2(lambda^2 - mu nu) = |M|^2 (relative error)", identity_error, o.tol(1e-12), Derived));

    let saturating = [1.0 / 3.0, 1.0, 2.5].map(|a| TraceFree3::diagonal(-a, -a, 2.0 * a));
    let mut all_saturated = true;
    for m in &saturating {
        let m = m.as_ref().map_err(|e| crate::error::Error::InvalidParameter(e.to_string()))?;
        let e = eigen_lower_bound_report(m);
        let d = det_bound_check(m);
        all_saturated &= e.saturated && d.saturated && (e.ratio - 1.0).abs() < 1e-12 && (d.lhs - d.rhs).abs() < 1e-12 * d.rhs;
    }
    out.push(CheckRecord::equals("pointwise.saturation", "diag(-a,-a,2a) saturates both eigenvalue bounds", all_saturated, true, Published));
    let fs_w = TraceFree3::diagonal(-2.0, -2.0, 4.0)?;
    let det = det_bound_check(&fs_w);
    out.push(CheckRecord::relative("pointwise.det_bound_fs", "3sqrt6 det W+ = |W+|^3 = 48sqrt6 at Fubini-Study", det.lhs, 48.0 * 6f64.sqrt(), o.tol(1e-12), Derived));

    let mut violations = 0usize;
    let mut closed_form_gap: f64 = 0.0;
    let mut oracle_gap = f64::NEG_INFINITY;
    let opts = MinSectionalOptions::default();
    for k in 0..o.samples.einstein {
        let r = random_nonnegative_einstein(&mut rng);
        let d = decompose(&r);
        let w = weyl_norm_bound_check(&d)?;
        if !w.ok {
            violations += 1;
        }
        let numeric = min_sectional(&r, &opts);
        let closed = min_sectional_einstein(&d)?;
        closed_form_gap = closed_form_gap.max((numeric.value - closed).abs() / d.scalar.abs().max(1.0));
        if k < o.samples.oracle_instances {
            let sampled = sampled_min_sectional(&r, &mut rng, o.samples.oracle_points);
            oracle_gap = oracle_gap.max(numeric.value - sampled);
        }
    }
    out.push(CheckRecord::equals(
        "pointwise.weyl_bound",
        &format!("violations of s/sqrt6 >= |W+|+|W-| over {} non-negatively curved Einstein operators", o.samples.einstein),
        violations,
        0,
        Published,
    ));
    out.push(CheckRecord::at_most("pointwise.min_sectional_closed_form", "optimiser vs s/12 + (lambda+ + lambda-)/2", closed_form_gap, o.tol(1e-9), Derived));
    out.push(CheckRecord::at_most(
        "pointwise.min_sectional_oracle",
        &format!("optimiser minus sampled minimum over {} instances x {} planes", o.samples.oracle_instances, o.samples.oracle_points),
        oracle_gap.max(0.0),
        o.tol(1e-9),
        Derived,
    ));

    let product = decompose(&curvature_operator_at(&product_spheres(1.0, 1.0)?.chart, &product_spheres(1.0, 1.0)?.base_point(), &o.fd)?);
    let w = weyl_norm_bound_check(&product)?;
    out.push(CheckRecord::close("pointwise.weyl_equality_product", "s/sqrt6 - |W+| - |W-| on S2xS2", w.margin, 0.0, o.tol(1e-8), Published));
    let algebraic = decompose(&product_operator());
    out.push(CheckRecord::close(
        "pointwise.weyl_equality_algebraic",
        "s/sqrt6 - |W+| - |W-| for the S2xS2 operator",
        weyl_norm_bound_check(&algebraic)?.margin,
        0.0,
        o.tol(1e-10),
        Published,
    ));

    // (s/2)|W+|² = 18 det W+ at Fubini-Study, in exact arithmetic
    let diag = [Ratio::from_integer(-2i64), Ratio::from_integer(-2), Ratio::from_integer(4)];
    let lhs = Ratio::from_integer(12i64) * diag.iter().map(|x| x * x).sum::<Ratio<i64>>();
    let rhs = Ratio::from_integer(18i64) * diag.iter().product::<Ratio<i64>>();
    out.push(CheckRecord::equals("pointwise.weitzenbock_exact", "(s/2)|W+|^2 = 18 det W+ for diag(-2,-2,4), s = 24", lhs.to_string(), rhs.to_string(), Published));
    let fs = ModelKind::Cp2.standard();
    let mut residual: f64 = 0.0;
    for t in [[0.0; 4], [0.3, 0.6, 0.2, 0.7], [0.7, 0.1, 0.9, 0.4]] {
        let x = if t == [0.0; 4] { fs.base_point() } else { fs.sample_point(&t) };
        let d = decompose(&curvature_operator_at(&fs.chart, &x, &o.fd)?);
        residual = residual.max(weitzenbock_parallel_check(&d).residual);
    }
    out.push(CheckRecord::at_most("pointwise.weitzenbock_chart", "relative residual of (s/2)|W+|^2 = 18 det W+ from the Fubini-Study chart", residual, o.tol(1e-6), Derived));
    Ok(out)
}

fn product_operator() -> CurvatureOperator {
    let mut d = CurvatureDecomposition {
        w_plus: TraceFree3::zero(),
        w_minus: TraceFree3::zero(),
        mixed: Matrix3::zeros(),
        scalar: 4.0,
    };
    let w = TraceFree3::diagonal(-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0).expect("trace-free");
    d.w_plus = w;
    d.w_minus = w;
    reconstruct(&d)
}

fn exact_case(x: [i64; 4], coeffs: [(i64, i64); 5]) -> Result<ExactComplex> {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let v = exact_soldering(x);
    let u = SpinorTensor::<ExactComplex>::symmetric(0, 4, |_, w| Complex::new(q(coeffs[w].0), q(coeffs[w].1)));
    projection_ratio(&v, &u)
}

fn spinor(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut rng = rng(o, Suite::Spinor);
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for _ in 0..o.samples.spinor {
        let v = random_vector(&mut rng).spinor();
        let u = random_symmetric(&mut rng, 4);
        let r = projection_ratio(&v, &u)?;
        worst = worst.max((r.re - 0.6).abs().max(r.im.abs()));
    }
    out.push(CheckRecord::at_most(
        "spinor.projection_ratio",
        &format!("max |ratio - 3/5| over {} random (v, U)", o.samples.spinor),
        worst,
        o.tol(1e-12),
        Published,
    ));

    let three_fifths = Complex::new(BigRational::new(BigInt::from(3), BigInt::from(5)), BigRational::zero());
    let mut exact = 0usize;
    for (x, coeffs) in EXACT_SPINOR_CASES {
        if exact_case(x, coeffs)? == three_fifths {
            exact += 1;
        }
    }
    out.push(CheckRecord::equals("spinor.exact_ratio", "rational cases with ratio exactly 3/5", exact, EXACT_SPINOR_CASES.len(), Published));

    let k = kato_constants_estimate(&mut rng, o.samples.kato)?;
    let bound = 0.6f64.sqrt();
    out.push(CheckRecord::at_most("spinor.kato_upper", "sampled pairing supremum <= sqrt(3/5)", k.cauchy_schwarz_sup, bound + 1e-10, Published));
    out.push(CheckRecord::at_least(
        "spinor.kato_lower",
        &format!("sampled pairing supremum over {} samples approaches sqrt(3/5)", o.samples.kato),
        k.cauchy_schwarz_sup,
        bound - o.tol(1e-4),
        Published,
    ));
    out.push(CheckRecord::close("spinor.kato_constant", "Kato constant sqrt(5/3)", k.kato_inf, (5.0f64 / 3.0).sqrt(), o.tol(2e-4), Published));
    Ok(out)
}

fn bump(x: &[f64; 4]) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    1.0 + 0.5 * (-r2).exp()
}

fn conformal(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let s4 = ModelKind::S4.standard();
    let fs = ModelKind::Cp2.standard();
    let x = [0.3, -0.2, 0.1, 0.25];

    let frak = frak_s_at(&fs.chart, &fs.base_point(), &o.fd)?;
    out.push(CheckRecord::close("conformal.fs_saturation", "s - 2sqrt6|W+| at Fubini-Study", frak, 0.0, o.tol(1e-5), Published));
    let round = frak_s_at(&s4.chart, &x, &o.fd)?;
    out.push(CheckRecord::close("conformal.round_sphere_value", "s - 2sqrt6|W+| on the unit sphere", round, 12.0, o.tol(1e-6), Trivial));

    let mut constant: f64 = 0.0;
    for c in [1.0, 0.7, 3.0] {
        // both sides equal 12c on the unit sphere
        constant = constant.max(conformal_law_residual(&s4.chart, move |_| c, &x, &o.fd)?.abs() / (12.0 * c));
    }
    out.push(CheckRecord::at_most("conformal.constant_factor", "relative transformation-law residual for constant u", constant, o.tol(1e-8), Trivial));

    let study = conformal_law_convergence(&s4.chart, bump, &x, 0.02)?;
    out.push(CheckRecord::close("conformal.order", "observed order log2(r(h)/r(h/2)) for a Gaussian bump", study.ratio.abs().log2(), 2.0, 0.3, Derived));
    out.push(CheckRecord::at_most("conformal.extrapolated", "Richardson-extrapolated residual", study.extrapolated.abs(), o.tol(1e-5), Derived));
    let fs_study = conformal_law_convergence(&fs.chart, bump, &[0.2, 0.1, -0.3, 0.15], 0.02)?;
    out.push(CheckRecord::at_most("conformal.extrapolated_fs", "extrapolated residual on Fubini-Study", fs_study.extrapolated.abs(), o.tol(1e-5), Derived));
    Ok(out)
}

struct ModelRun {
    /// Short identifier used in check ids.
    label: String,
    model: ModelManifold,
    integrals: CurvatureIntegrals,
}

fn integrate_models(o: &ReportOptions) -> Result<Vec<ModelRun>> {
    let mut models: Vec<(String, ModelManifold)> = ModelKind::ALL.iter().map(|k| (k.name().to_owned(), k.standard())).collect();
    models.push(("s2xs2_1_2".to_owned(), product_spheres(1.0, 2.0)?));
    models
        .into_iter()
        .map(|(label, model)| {
            let integrals = curvature_integrals(&model, &o.quadrature)?;
            Ok(ModelRun { label, model, integrals })
        })
        .collect()
}

fn chern(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for run in integrate_models(o)? {
        let (m, i) = (&run.model, &run.integrals);
        let id = |q: &str| format!("chern.{}.{q}", run.label);
        let flat = m.kind == ModelKind::T4;
        let tol = o.tol(if flat { 1e-9 } else { 1e-3 });
        out.push(CheckRecord::close(&id("euler_characteristic"), "Gauss-Bonnet integral", i.euler_characteristic(), m.reference.euler_characteristic as f64, tol, Published));
        out.push(CheckRecord::close(&id("signature"), "signature integral", i.signature(), m.reference.signature as f64, tol, Published));
        out.push(CheckRecord::relative(&id("volume"), "volume", i.volume, m.reference.volume, o.tol(1e-4), if m.kind == ModelKind::Cp2 { Published } else { Trivial }));
        if let Some(l) = m.reference.einstein_constant.filter(|l| *l > 0.0) {
            let expected = 4.0 * l * m.reference.volume.sqrt();
            let provenance = if matches!(m.kind, ModelKind::S4 | ModelKind::Cp2) { Published } else { Derived };
            out.push(CheckRecord::relative(&id("total_scalar"), "normalised total scalar curvature V^(-1/2) int s", i.total_scalar_functional(), expected, o.tol(1e-4), provenance));
        }
    }
    Ok(out)
}

fn inequalities(o: &ReportOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let runs = integrate_models(o)?;
    for run in &runs {
        let (m, i) = (&run.model, &run.integrals);
        let einstein = m.reference.einstein_constant.is_some();
        let id = |q: &str| format!("inequalities.{}.{q}", run.label);
        out.push(CheckRecord::at_most(&id("chi_at_most_9"), "chi <= 9", i.euler_characteristic(), 9.0, Published));
        let e = euler_bound_check(i, einstein);
        match m.kind {
            ModelKind::S4 => out.push(CheckRecord::close(&id("euler_bound_value"), "(5/8pi^2) int s^2/24", e.bound, 10.0, o.tol(0.01), Published)),
            ModelKind::Cp2 => out.push(CheckRecord::close(&id("euler_bound_value"), "(5/8pi^2) int s^2/24", e.bound, 7.5, o.tol(1e-3), Derived)),
            _ => {}
        }
        if e.status == CheckStatus::Inapplicable {
            out.push(CheckRecord::equals(&id("euler_bound"), e.reason.as_deref().unwrap_or("inapplicable"), "inapplicable", "inapplicable", Trivial));
        } else {
            out.push(CheckRecord::below(&id("euler_bound"), "chi < (5/8pi^2) int s^2/24", e.chi, e.bound, Published));
        }
    }

    let cp2 = runs.iter().find(|r| r.model.kind == ModelKind::Cp2).expect("catalog has CP2");
    let s4 = runs.iter().find(|r| r.model.kind == ModelKind::S4).expect("catalog has S4");
    let twelve_pi2 = 12.0 * PI * PI;
    let g = gap_theorem_check(&cp2.integrals, true);
    out.push(CheckRecord::relative("inequalities.cp2.w_plus_sq", "int |W+|^2 on Fubini-Study", g.self_dual.lhs, twelve_pi2, o.tol(1e-4), Published));
    out.push(CheckRecord::relative("inequalities.cp2.scalar_sq", "int s^2/24 on Fubini-Study", g.self_dual.rhs, twelve_pi2, o.tol(1e-4), Published));
    out.push(CheckRecord::equals("inequalities.cp2.gap_equality", "gap inequality for W+ is an equality (W+ parallel)", g.self_dual.status, CheckStatus::Equality, Published));
    let r = gap_theorem_check(&cp2.integrals.oriented(Orientation::Reversed), true);
    out.push(CheckRecord::close("inequalities.cp2_reversed.lhs", "(2chi - 3tau)/3 with reversed orientation", r.euler_signature.lhs, 3.0, o.tol(1e-4), Published));
    out.push(CheckRecord::close("inequalities.cp2_reversed.rhs", "(1/4pi^2) int s^2/24 with reversed orientation", r.euler_signature.rhs, 3.0, o.tol(1e-4), Published));
    out.push(CheckRecord::equals("inequalities.cp2_reversed.signature", "reversing orientation negates tau", cp2.integrals.oriented(Orientation::Reversed).signature().round(), -1.0, Trivial));
    let s4_gap = gap_theorem_check(&s4.integrals, true);
    out.push(CheckRecord::equals("inequalities.s4.gap", "gap branch inapplicable when W+ vanishes", s4_gap.self_dual.status, CheckStatus::Inapplicable, Trivial));

    let bishop = bishop_volume_check(cp2.integrals.volume, cp2.model.reference.einstein_constant);
    out.push(CheckRecord::relative("inequalities.cp2.bishop_volume", "Fubini-Study volume rescaled to r = 3g", bishop.rescaled_volume, 2.0 * PI * PI, o.tol(1e-4), Published));
    out.push(CheckRecord::at_most("inequalities.cp2.bishop", "rescaled volume <= 8pi^2/3", bishop.rescaled_volume, bishop.sphere_volume, Published));
    let bishop_s4 = bishop_volume_check(s4.integrals.volume, s4.model.reference.einstein_constant);
    out.push(CheckRecord::equals("inequalities.s4.bishop", "round sphere attains the volume bound", bishop_s4.status, CheckStatus::Equality, Trivial));
    Ok(out)
}

fn functional(o: &ReportOptions) -> Vec<CheckRecord> {
    let f = functional_bounds_report();
    vec![
        CheckRecord::relative("functional.cp2_reference", "12pi sqrt2", f.cp2_reference, 12.0 * PI * 2f64.sqrt(), 1e-15, Published),
        CheckRecord::close("functional.cp2_upper_bound", "4pi sqrt6", f.cp2_upper_bound, 30.7812, 1e-4, Published),
        CheckRecord::at_most("functional.cp2_consistency", "|12pi sqrt2 / sqrt3 - 4pi sqrt6|", f.cp2_consistency, o.tol(1e-12), Derived),
        CheckRecord::at_most("functional.s4_consistency", "window equals (S1/sqrt5, S1/sqrt3)", f.s4_consistency, o.tol(1e-12), Derived),
        CheckRecord::close("functional.s4_window_low", "8pi sqrt(6/5)", f.s4_window[0], 27.53, 0.01, Published),
        CheckRecord::close("functional.s4_window_high", "8pi sqrt2", f.s4_window[1], 35.54, 0.01, Published),
        CheckRecord::equals("functional.s4_reference_excluded", "round-sphere value lies outside the window", f.s4_reference_excluded, true, Derived),
    ]
}

fn topology() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (chi, tau, expected) in [(3, 1, false), (4, 2, false), (8, -4, false), (8, 2, true), (4, 0, true), (2, 0, true)] {
        out.push(CheckRecord::equals(
            &format!("topology.window.{chi}_{tau}"),
            &format!("9 >= chi > 15|tau|/4 at (chi, tau) = ({chi}, {tau})"),
            window_gate(chi, tau)?.ok,
            expected,
            if (chi, tau) == (4, 0) || (chi, tau) == (2, 0) { Trivial } else { Published },
        ));
    }
    for (chi, tau, expected) in [(4, 2, true), (3, 1, true), (8, 6, false)] {
        out.push(CheckRecord::equals(
            &format!("topology.hitchin.{chi}_{tau}"),
            &format!("8chi^2 >= 27tau^2 at ({chi}, {tau})"),
            hitchin_gate(chi, tau)?.ok,
            expected,
            Derived,
        ));
    }
    let d = simply_connected_deduction(1)?;
    out.push(CheckRecord::equals("topology.deduction.min_chi", "tau = 1 forces chi >= 5", d.min_chi, Some(5), Published));
    out.push(CheckRecord::equals("topology.deduction.cover", "no cover of degree 2 fits, so pi1 = 1", d.max_cover_degree, Some(1), Published));
    out.push(CheckRecord::equals("topology.deduction.tau3", "tau = 3 admits no chi <= 9", simply_connected_deduction(3)?.min_chi, None::<i64>, Derived));
    let h = enumerate_homeotypes();
    out.push(CheckRecord::equals("topology.homeotypes", "admissible simply connected homeotypes up to orientation", h.len(), 12, Published));
    let cp2 = positive_form_gate(&TopologyDescriptor::simply_connected(1, 0))?;
    out.push(CheckRecord::equals("topology.positive_form.cp2", "b+ = 1, b- = 0 forces Fubini-Study", cp2.verdict, Verdict::FubiniStudy, Published));
    let two = positive_form_gate(&TopologyDescriptor::simply_connected(2, 0))?;
    out.push(CheckRecord::equals("topology.positive_form.2cp2", "b+ = 2, b- = 0 admits no metric", two.verdict, Verdict::NoMetric, Published));
    let mut symmetric = true;
    for chi in 0..20i64 {
        for tau in -12..=12i64 {
            if (chi - tau).rem_euclid(2) == 0 {
                symmetric &= window_gate(chi, tau)?.ok == window_gate(chi, -tau)?.ok;
            }
        }
    }
    out.push(CheckRecord::equals("topology.orientation_symmetry", "window gate invariant under tau -> -tau", symmetric, true, Trivial));
    Ok(out)
}
