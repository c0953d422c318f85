//! Acceptance criteria, one PASS/FAIL line each. Runs without the test harness.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Matrix3;
use num::rational::Ratio;
use num::{BigInt, BigRational, Complex, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use einstein4::curvature::random::{random_nonnegative_einstein, random_operator, random_trace_free};
use einstein4::curvature::{
    decompose, eigen_lower_bound_report, min_sectional, reconstruct, sampled_min_sectional,
    weitzenbock_parallel_check, weyl_norm_bound_check, CurvatureDecomposition, MinSectionalOptions, TraceFree3,
};
use einstein4::geometry::{
    conformal_law_convergence, curvature_operator_at, flat_torus, fubini_study, product_spheres, round_sphere,
    FiniteDifference, ModelManifold,
};
use einstein4::quadrature::{
    curvature_integrals, functional_bounds_report, gap_theorem_check, CheckStatus, CurvatureIntegrals, Orientation,
    QuadratureSpec,
};
use einstein4::spinor::{
    exact_soldering, kato_constants_estimate, projection_ratio, random_symmetric, random_vector, ExactComplex,
    SpinorTensor,
};
use einstein4::topology::{enumerate_homeotypes, hitchin_gate, simply_connected_deduction, window_gate};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn integrals(model: &ModelManifold) -> CurvatureIntegrals {
    curvature_integrals(model, &QuadratureSpec::default()).expect("catalog model integrates")
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let r = random_operator(&mut rng);
        let back = reconstruct(&decompose(&r));
        worst = worst.max((back.matrix() - r.matrix()).amax() / r.matrix().amax());
    }
    ensure(worst <= 1e-12, format!("max relative error {worst:.2e} over 10^4 operators"))
}

fn eigenvalue_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    let mut false_saturation = 0;
    for _ in 0..100_000 {
        let r = eigen_lower_bound_report(&random_trace_free(&mut rng));
        violations += usize::from(!r.ok);
        false_saturation += usize::from(r.saturated);
    }
    let mut missed = 0;
    for a in [1e-3, 0.25, 1.0, 7.5, 1e3] {
        let m = TraceFree3::diagonal(-a, -a, 2.0 * a).map_err(|e| e.to_string())?;
        let r = eigen_lower_bound_report(&m);
        missed += usize::from(!(r.saturated && (r.ratio - 1.0).abs() < 1e-12));
        // the opposite sign has one low eigenvalue and is not extremal
        missed += usize::from(eigen_lower_bound_report(&m.scaled(-1.0)).saturated);
    }
    ensure(
        violations == 0 && missed == 0 && false_saturation == 0,
        format!("{violations} violations in 10^5, {missed} saturation misclassifications, {false_saturation} random blocks flagged saturated"),
    )
}

fn random_einstein(rng: &mut ChaCha8Rng) -> einstein4::curvature::CurvatureOperator {
    if rng.random::<bool>() {
        random_nonnegative_einstein(rng)
    } else {
        reconstruct(&CurvatureDecomposition {
            w_plus: random_trace_free(rng),
            w_minus: random_trace_free(rng),
            mixed: Matrix3::zeros(),
            scalar: rng.random_range(-5.0..25.0),
        })
    }
}

fn weyl_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let opts = MinSectionalOptions::default();
    let (mut certified, mut violations, mut oracle_failures) = (0, 0, 0);
    let mut spot_checked = 0;
    let mut worst_gap: f64 = 0.0;
    while certified < 10_000 {
        let r = random_einstein(&mut rng);
        let d = decompose(&r);
        let m = min_sectional(&r, &opts);
        let scale = d.scalar.abs().max(1.0);
        if !(m.certified && m.value >= -1e-12 * scale) {
            continue;
        }
        certified += 1;
        violations += usize::from(!weyl_norm_bound_check(&d).map_err(|e| e.to_string())?.ok);
        if spot_checked < 100 {
            spot_checked += 1;
            let sampled = sampled_min_sectional(&r, &mut rng, 100_000);
            // the optimiser must not sit above any sampled plane, and sampling must come close to it
            let gap = sampled - m.value;
            worst_gap = worst_gap.max(gap);
            oracle_failures += usize::from(gap < -1e-9 * scale || gap > 0.05 * scale);
        }
    }
    let product = product_spheres(1.0, 1.0).map_err(|e| e.to_string())?;
    let d = decompose(&curvature_operator_at(&product.chart, &product.base_point(), &FiniteDifference::default()).map_err(|e| e.to_string())?);
    // the chart value carries finite-difference error; the exact operator is checked too
    let exact = {
        let w = TraceFree3::diagonal(-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0).map_err(|e| e.to_string())?;
        decompose(&reconstruct(&CurvatureDecomposition { w_plus: w, w_minus: w, mixed: Matrix3::zeros(), scalar: 4.0 }))
    };
    let chart_margin = weyl_norm_bound_check(&d).map_err(|e| e.to_string())?.margin;
    let exact_margin = weyl_norm_bound_check(&exact).map_err(|e| e.to_string())?.margin;
    ensure(
        violations == 0 && oracle_failures == 0 && exact_margin.abs() <= 1e-10 && chart_margin.abs() <= 1e-8,
        format!(
            "{violations} violations in {certified} certified; oracle {oracle_failures} failures on {spot_checked} (max sampled - optimised {worst_gap:.1e}); S2xS2 margin {exact_margin:.1e} exact, {chart_margin:.1e} from chart"
        ),
    )
}

fn chern_gauss_bonnet() -> Outcome {
    let cases: [(&str, ModelManifold, f64, f64, f64); 5] = [
        ("S4", round_sphere(1.0).unwrap(), 2.0, 0.0, 1e-3),
        ("CP2", fubini_study().unwrap(), 3.0, 1.0, 1e-3),
        ("S2xS2", product_spheres(1.0, 1.0).unwrap(), 4.0, 0.0, 1e-3),
        ("T4", flat_torus(1.0).unwrap(), 0.0, 0.0, 1e-9),
        ("S2(1)xS2(2)", product_spheres(1.0, 2.0).unwrap(), 4.0, 0.0, 1e-3),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, model, chi, tau, tol) in cases {
        let i = integrals(&model);
        let (c, t) = (i.euler_characteristic(), i.signature());
        ok &= (c - chi).abs() <= tol && (t - tau).abs() <= tol;
        detail.push(format!("{name} ({c:.6}, {t:.6})"));
    }
    ensure(ok, detail.join(", "))
}

fn volumes_and_functionals() -> Outcome {
    let fs = integrals(&fubini_study().unwrap());
    let s4 = integrals(&round_sphere(1.0).unwrap());
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let (v, s0, s1) = (
        rel(fs.volume, PI * PI / 2.0),
        rel(fs.total_scalar_functional(), 12.0 * PI * 2f64.sqrt()),
        rel(s4.total_scalar_functional(), 8.0 * PI * 6f64.sqrt()),
    );
    ensure(
        v <= 1e-4 && s0 <= 1e-4 && s1 <= 1e-4,
        format!("relative errors: Vol(FS) {v:.1e}, S(FS) {s0:.1e}, S(round) {s1:.1e}"),
    )
}

fn euler_bound_chain() -> Outcome {
    let s4 = integrals(&round_sphere(1.0).unwrap());
    let bound = 5.0 * s4.scalar_sq_24 / (8.0 * PI * PI);
    let fs = integrals(&fubini_study().unwrap());
    // r = 6g, so r = 3g after scaling the metric by 2 and the volume by 4
    let rescaled = fs.volume * 4.0;
    let bishop_ok = (rescaled - 2.0 * PI * PI).abs() <= 1e-4 * 2.0 * PI * PI && rescaled <= 8.0 * PI * PI / 3.0;
    let mut max_chi = f64::NEG_INFINITY;
    for model in [round_sphere(1.0), fubini_study(), product_spheres(1.0, 1.0), flat_torus(1.0), product_spheres(1.0, 2.0)] {
        max_chi = max_chi.max(integrals(&model.unwrap()).euler_characteristic());
    }
    ensure(
        (bound - 10.0).abs() <= 0.01 && bishop_ok && max_chi <= 9.0,
        format!("S4 bound {bound:.6}; CP2 rescaled volume {rescaled:.6} vs 2pi^2 = {:.6} <= 8pi^2/3; max chi {max_chi:.4}", 2.0 * PI * PI),
    )
}

fn gap_theorem() -> Outcome {
    let fs = integrals(&fubini_study().unwrap());
    let target = 12.0 * PI * PI;
    let rel = |a: f64| (a - target).abs() / target;
    let g = gap_theorem_check(&fs, true);
    let rev = fs.oriented(Orientation::Reversed);
    let lhs = (2.0 * rev.euler_characteristic() - 3.0 * rev.signature()) / 3.0;
    let rhs = rev.scalar_sq_24 / (4.0 * PI * PI);
    ensure(
        rel(fs.w_plus_sq) <= 1e-4
            && rel(fs.scalar_sq_24) <= 1e-4
            && g.self_dual.status == CheckStatus::Equality
            && g.parallel_w_plus
            && (lhs - 3.0).abs() <= 1e-4
            && (rhs - 3.0).abs() <= 1e-4,
        format!(
            "int|W+|^2 rel err {:.1e}, int s^2/24 rel err {:.1e}, equality branch {:?}; reversed {lhs:.6} = {rhs:.6}",
            rel(fs.w_plus_sq),
            rel(fs.scalar_sq_24),
            g.self_dual.status
        ),
    )
}

fn spinor_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let r = projection_ratio(&random_vector(&mut rng).spinor(), &random_symmetric(&mut rng, 4)).map_err(|e| e.to_string())?;
        worst = worst.max((r - Complex::new(0.6, 0.0)).norm());
    }
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let three_fifths = Complex::new(BigRational::new(BigInt::from(3), BigInt::from(5)), BigRational::zero());
    let mut exact = 0;
    for k in 0..10i64 {
        let x = [1 + k % 3, k - 4, 2 * k % 5, 3 - k];
        let u = SpinorTensor::<ExactComplex>::symmetric(0, 4, |_, w| {
            let w = w as i64;
            Complex::new(q((k + w) % 4 - 1), q((k * w) % 3))
        });
        if u.is_zero() {
            return Err(format!("rational case {k} has U = 0"));
        }
        exact += usize::from(projection_ratio(&exact_soldering(x), &u).map_err(|e| e.to_string())? == three_fifths);
    }
    let kato = kato_constants_estimate(&mut rng, 100_000).map_err(|e| e.to_string())?;
    let bound = 0.6f64.sqrt();
    let sup = kato.cauchy_schwarz_sup;
    ensure(
        worst <= 1e-12 && exact == 10 && sup >= bound - 1e-4 && sup <= bound + 1e-10,
        format!("max |ratio - 3/5| {worst:.1e}; {exact}/10 exact; sup {sup:.10} vs sqrt(3/5) = {bound:.10}"),
    )
}

fn conformal_law() -> Outcome {
    let s4 = round_sphere(1.0).unwrap();
    let bump = |x: &[f64; 4]| 1.0 + 0.5 * (-x.iter().map(|v| v * v).sum::<f64>()).exp();
    let study = conformal_law_convergence(&s4.chart, bump, &[0.3, -0.2, 0.1, 0.25], 0.02).map_err(|e| e.to_string())?;
    let order = (study.coarse / study.fine).abs().log2();
    ensure(
        (order - 2.0).abs() <= 0.3 && study.extrapolated.abs() <= 1e-5,
        format!("residuals {:.3e} -> {:.3e}, order {order:.3}, extrapolated {:.1e}", study.coarse, study.fine, study.extrapolated),
    )
}

fn weitzenbock() -> Outcome {
    let spectrum = [-2i64, -2, 4].map(Ratio::from_integer);
    let s = Ratio::from_integer(24i64);
    let lhs = s / 2 * spectrum.iter().map(|x| x * x).sum::<Ratio<i64>>();
    let rhs = Ratio::from_integer(18) * spectrum.iter().product::<Ratio<i64>>();
    let fs = fubini_study().unwrap();
    let mut worst: f64 = 0.0;
    for x in [[0.0; 4], [0.3, -0.2, 0.5, 0.1], [1.1, 0.4, -0.7, 0.9]] {
        let d = decompose(&curvature_operator_at(&fs.chart, &x, &FiniteDifference::default()).map_err(|e| e.to_string())?);
        worst = worst.max(weitzenbock_parallel_check(&d).residual);
    }
    ensure(
        lhs == rhs && lhs == Ratio::from_integer(288) && worst <= 1e-6,
        format!("exact {lhs} = {rhs}; chart relative residual {worst:.1e}"),
    )
}

fn obstruction_gates() -> Outcome {
    let window = |c, t| window_gate(c, t).map(|g| g.ok).map_err(|e| e.to_string());
    let table = [window(3, 1)?, window(4, 2)?, window(8, 2)?, window(8, -4)?];
    let hitchin = hitchin_gate(4, 2).map_err(|e| e.to_string())?.ok;
    let deduction = simply_connected_deduction(1).map_err(|e| e.to_string())?.min_chi;
    let count = enumerate_homeotypes().len();
    ensure(
        table == [false, false, true, false] && hitchin && deduction == Some(5) && count == 12,
        format!("window (3,1) (4,2) (8,2) (8,-4) = {table:?}; Hitchin (4,2) {hitchin}; deduction(1) {deduction:?}; {count} homeotypes"),
    )
}

fn functional_bounds() -> Outcome {
    let f = functional_bounds_report();
    let four_pi_root6 = 4.0 * PI * 6f64.sqrt();
    let consistency = (12.0 * PI * 2f64.sqrt() / 3f64.sqrt() - four_pi_root6).abs();
    let window = [8.0 * PI * (6.0f64 / 5.0).sqrt(), 8.0 * PI * 2f64.sqrt()];
    ensure(
        f.cp2_upper_bound == four_pi_root6 && consistency <= 1e-12 && f.cp2_consistency <= 1e-12 && f.s4_window == window,
        format!("CP2 bound {:.10}; |12pi sqrt2/sqrt3 - 4pi sqrt6| = {consistency:.1e}; S4 window ({:.6}, {:.6})", f.cp2_upper_bound, f.s4_window[0], f.s4_window[1]),
    )
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "decomposition round-trip", budget: secs(5), run: round_trip },
        Criterion { id: 2, name: "eigenvalue lower bound", budget: secs(10), run: eigenvalue_bound },
        Criterion { id: 3, name: "Weyl norm bound under non-negative sectional curvature", budget: None, run: weyl_bound },
        Criterion { id: 4, name: "Gauss-Bonnet and signature quadrature", budget: secs(60), run: chern_gauss_bonnet },
        Criterion { id: 5, name: "volumes and total scalar functionals", budget: None, run: volumes_and_functionals },
        Criterion { id: 6, name: "Euler bound, volume comparison, chi <= 9", budget: None, run: euler_bound_chain },
        Criterion { id: 7, name: "gap theorem equality on CP2", budget: None, run: gap_theorem },
        Criterion { id: 8, name: "spinor projection identity and Kato constant", budget: None, run: spinor_identity },
        Criterion { id: 9, name: "conformal transformation law", budget: None, run: conformal_law },
        Criterion { id: 10, name: "Weitzenbock parallel case", budget: None, run: weitzenbock },
        Criterion { id: 11, name: "obstruction gates", budget: secs(1), run: obstruction_gates },
        Criterion { id: 12, name: "total scalar functional bounds", budget: None, run: functional_bounds },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over_budget = c.budget.is_some_and(|b| elapsed > b);
        let (passed, detail) = match outcome {
            Ok(d) if !over_budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} budget", c.budget.unwrap())),
            Err(d) => (false, d),
        };
        failed += usize::from(!passed);
        println!(
            "{} [{:>2}] {} ({:.2} s): {detail}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
