use serde::Serialize;
use std::io::Read;
use std::path::Path;

use einstein4::curvature::{
    decompose, det_bound_check, eigen_lower_bound_report, min_sectional, min_sectional_einstein,
    weyl_norm_bound_check, CurvatureDecomposition, CurvatureOperator, DetBoundReport, EigenBoundReport,
    MinSectionalOptions, Tolerances, WeylNormBound,
};
use einstein4::geometry::{
    conformal_law_convergence, curvature_operator_at, flat_torus, product_spheres, round_sphere, ConvergenceStudy,
    ModelKind, ModelManifold,
};
use einstein4::io::{read_operator, DecompositionDocument};
use einstein4::quadrature::{invariant_report, InvariantReport, Orientation};
use einstein4::report::{self, render, CheckRecord, Provenance, ReproductionReport, SampleSizes, Suite, Table};
use einstein4::topology::{
    enumerate_homeotypes, hitchin_gate, positive_form_gate, simply_connected_deduction, window_gate, Deduction,
    HitchinGate, Homeotype, PositiveFormGate, TopologyDescriptor, WindowGate,
};

use crate::args::{self, CertifyArgs, ChernArgs, ConformalArgs, ModelArgs, ObstructArgs, ReportArgs, Settings, SpinorArgs};

/// Rendered document plus whether every check in it passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

type CmdResult = Result<Outcome, String>;

fn render<T: Serialize>(value: &T, tables: &[Table], s: &Settings, passed: bool) -> CmdResult {
    let body = render::emit(value, tables, s.format).map_err(|e| e.to_string())?;
    Ok(Outcome { body, passed })
}

fn read_input(path: Option<&Path>) -> Result<String, String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn load_operator(path: Option<&Path>) -> Result<CurvatureOperator, String> {
    read_operator(&read_input(path)?, &Tolerances::default()).map_err(|e| e.to_string())
}

fn quantity_table(title: &str, rows: &[(&str, String)]) -> Table {
    let mut t = Table::new(title, &["quantity", "value"]);
    for (k, v) in rows {
        t.push(vec![(*k).to_owned(), v.clone()]);
    }
    t
}

fn num(v: f64) -> String {
    render::number(v)
}

fn spectrum(v: [f64; 3]) -> String {
    v.map(num).join(" ")
}

fn checks_table(title: &str, checks: &[CheckRecord]) -> Table {
    let mut t = report::suite_table(&report::SuiteReport {
        suite: Suite::Pointwise,
        records: checks.to_vec(),
    });
    t.title = title.to_owned();
    t
}

/// Serde name of a unit enum variant.
fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

#[derive(Serialize)]
struct DecompositionSummary {
    #[serde(flatten)]
    blocks: DecompositionDocument,
    w_plus_eigenvalues: [f64; 3],
    w_minus_eigenvalues: [f64; 3],
    w_plus_norm: f64,
    w_minus_norm: f64,
    traceless_ricci_norm: f64,
    einstein: bool,
}

impl From<&CurvatureDecomposition> for DecompositionSummary {
    fn from(d: &CurvatureDecomposition) -> Self {
        DecompositionSummary {
            blocks: DecompositionDocument::from(d),
            w_plus_eigenvalues: d.w_plus.eigenvalues(),
            w_minus_eigenvalues: d.w_minus.eigenvalues(),
            w_plus_norm: d.w_plus.norm(),
            w_minus_norm: d.w_minus.norm(),
            traceless_ricci_norm: d.traceless_ricci_norm_squared().sqrt(),
            einstein: d.is_einstein(Tolerances::default().einstein),
        }
    }
}

impl DecompositionSummary {
    fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("scalar", num(self.blocks.scalar)),
            ("w_plus_eigenvalues", spectrum(self.w_plus_eigenvalues)),
            ("w_minus_eigenvalues", spectrum(self.w_minus_eigenvalues)),
            ("w_plus_norm", num(self.w_plus_norm)),
            ("w_minus_norm", num(self.w_minus_norm)),
            ("traceless_ricci_norm", num(self.traceless_ricci_norm)),
            ("einstein", self.einstein.to_string()),
        ]
    }
}

pub fn decompose_cmd(input: Option<&Path>, s: &Settings) -> CmdResult {
    let d = decompose(&load_operator(input)?);
    let summary = DecompositionSummary::from(&d);
    let table = quantity_table("decomposition", &summary.rows());
    render(&summary, &[table], s, true)
}

fn build_model(m: &ModelArgs, model_name: Option<&str>, default: ModelKind) -> Result<ModelManifold, String> {
    let kind = args::model_kind(model_name, default)?;
    let built = match kind {
        ModelKind::S4 => round_sphere(m.radius.unwrap_or(1.0)),
        ModelKind::S2xS2 => {
            let [a, b] = m.radii.unwrap_or([1.0, 1.0]);
            product_spheres(a, b)
        }
        ModelKind::T4 => flat_torus(m.side.unwrap_or(1.0)),
        ModelKind::Cp2 => return Ok(kind.standard()),
    };
    built.map_err(|e| e.to_string())
}

fn point(p: Option<[f64; 4]>, model: &ModelManifold) -> [f64; 4] {
    p.unwrap_or_else(|| model.base_point())
}

#[derive(Serialize)]
struct CertifyOutput {
    source: String,
    decomposition: DecompositionSummary,
    min_sectional: f64,
    min_sectional_certified: bool,
    min_sectional_closed_form: Option<f64>,
    nonnegative_sectional: bool,
    eigen_bound_plus: EigenBoundReport,
    eigen_bound_minus: EigenBoundReport,
    det_bound_plus: DetBoundReport,
    det_bound_minus: DetBoundReport,
    weyl_norm_bound: Option<WeylNormBound>,
    checks: Vec<CheckRecord>,
}

pub fn certify_cmd(a: &CertifyArgs, s: &Settings) -> CmdResult {
    let (source, r) = match s.model.as_deref() {
        Some(name) => {
            let model = build_model(&a.model, Some(name), ModelKind::S4)?;
            let x = point(a.point, &model);
            let r = curvature_operator_at(&model.chart, &x, &s.options.fd).map_err(|e| e.to_string())?;
            (format!("{} at {:?}", model.name, x), r)
        }
        None => ("operator".to_owned(), load_operator(a.input.as_deref())?),
    };
    let d = decompose(&r);
    let scale = d.scalar.abs().max(d.w_plus.norm()).max(d.w_minus.norm()).max(1.0);
    let numeric = min_sectional(&r, &MinSectionalOptions::default());
    let einstein = d.is_einstein(Tolerances::default().einstein);
    let closed = if einstein { min_sectional_einstein(&d).ok() } else { None };
    let nonnegative = numeric.value >= -1e-10 * scale;
    let weyl = if einstein && nonnegative { weyl_norm_bound_check(&d).ok() } else { None };

    let mut checks = Vec::new();
    let (ep, em) = (eigen_lower_bound_report(&d.w_plus), eigen_lower_bound_report(&d.w_minus));
    let (dp, dm) = (det_bound_check(&d.w_plus), det_bound_check(&d.w_minus));
    // a Weyl half at finite-difference noise level carries no eigenvalue information
    let negligible = 1e-8 * scale;
    for (name, w, e, det) in [("w_plus", &d.w_plus, &ep, &dp), ("w_minus", &d.w_minus, &em, &dm)] {
        if w.norm() <= negligible {
            continue;
        }
        let label = if name == "w_plus" { "W+" } else { "W-" };
        checks.push(CheckRecord::at_least(&format!("eigen_bound.{name}"), &format!("sqrt6|lambda_min({label})| / |{label}|"), e.ratio, 1.0 - 1e-12, Provenance::Published));
        checks.push(CheckRecord::at_most(&format!("det_bound.{name}"), &format!("3sqrt6 det {label} <= |{label}|^3"), det.lhs, det.rhs + 1e-10 * det.rhs, Provenance::Published));
    }
    if let Some(w) = &weyl {
        checks.push(CheckRecord::at_least("weyl_norm_bound", "s/sqrt6 >= |W+| + |W-|", w.lhs, w.rhs - 1e-10 * w.lhs.abs().max(w.rhs), Provenance::Published));
    }
    if let Some(c) = closed {
        checks.push(CheckRecord::close("min_sectional.closed_form", "optimiser vs s/12 + (lambda+ + lambda-)/2", numeric.value, c, s.options.tol.unwrap_or(1e-9) * scale, Provenance::Derived));
    }
    let passed = checks.iter().all(|c| c.passed);
    let out = CertifyOutput {
        source,
        decomposition: DecompositionSummary::from(&d),
        min_sectional: numeric.value,
        min_sectional_certified: numeric.certified,
        min_sectional_closed_form: closed,
        nonnegative_sectional: nonnegative,
        eigen_bound_plus: ep,
        eigen_bound_minus: em,
        det_bound_plus: dp,
        det_bound_minus: dm,
        weyl_norm_bound: weyl,
        checks,
    };
    let mut rows = out.decomposition.rows();
    rows.push(("min_sectional", num(out.min_sectional)));
    rows.push(("nonnegative_sectional", out.nonnegative_sectional.to_string()));
    let tables = [quantity_table("curvature", &rows), checks_table("certify", &out.checks)];
    render(&out, &tables, s, passed)
}

#[derive(Serialize)]
struct ChernOutput {
    #[serde(flatten)]
    report: InvariantReport,
    checks: Vec<CheckRecord>,
}

pub fn chern_cmd(a: &ChernArgs, s: &Settings) -> CmdResult {
    let model = build_model(&a.model, s.model.as_deref(), ModelKind::Cp2)?;
    let mut spec = s.options.quadrature;
    if let Some(n) = a.order {
        spec = spec.with_order(n);
    }
    let orientation = if a.reversed { Orientation::Reversed } else { Orientation::Standard };
    let r = invariant_report(&model, &spec, orientation).map_err(|e| e.to_string())?;
    let sign = if a.reversed { -1.0 } else { 1.0 };
    let tol = s.options.tol.unwrap_or(1e-3);
    let checks = vec![
        CheckRecord::close("euler_characteristic", "Gauss-Bonnet integral", r.euler_characteristic, model.reference.euler_characteristic as f64, tol, Provenance::Published),
        CheckRecord::close("signature", "signature integral", r.signature, sign * model.reference.signature as f64, tol, Provenance::Published),
        CheckRecord::relative("volume", "volume", r.volume, model.reference.volume, s.options.tol.unwrap_or(1e-4), Provenance::Derived),
    ];
    let passed = checks.iter().all(|c| c.passed);
    let rows = [
        ("model", r.model.clone()),
        ("orientation", format!("{:?}", r.orientation).to_lowercase()),
        ("volume", num(r.volume)),
        ("euler_characteristic", num(r.euler_characteristic)),
        ("signature", num(r.signature)),
        ("total_scalar_functional", num(r.total_scalar_functional)),
        ("int_w_plus_sq", num(r.integrals.w_plus_sq)),
        ("int_w_minus_sq", num(r.integrals.w_minus_sq)),
        ("int_s_sq_24", num(r.integrals.scalar_sq_24)),
        ("euler_bound", num(r.euler_bound.bound)),
        ("euler_bound_status", format!("{:?}", r.euler_bound.status).to_lowercase()),
    ];
    let tables = [quantity_table("invariants", &rows), checks_table("chern", &checks)];
    render(&ChernOutput { report: r, checks }, &tables, s, passed)
}

#[derive(Serialize)]
struct ConformalOutput {
    model: String,
    point: [f64; 4],
    amplitude: f64,
    study: ConvergenceStudy,
    observed_order: f64,
    checks: Vec<CheckRecord>,
}

pub fn conformal_cmd(a: &ConformalArgs, s: &Settings) -> CmdResult {
    let model = build_model(&a.model, s.model.as_deref(), ModelKind::S4)?;
    let x = a.point.unwrap_or([0.3, -0.2, 0.1, 0.25]);
    if !(a.amplitude > -1.0) {
        return Err(format!("--amplitude must exceed -1 so that u stays positive, got {}", a.amplitude));
    }
    let amp = a.amplitude;
    let u = move |p: &[f64; 4]| 1.0 + amp * (-p.iter().map(|v| v * v).sum::<f64>()).exp();
    let study = conformal_law_convergence(&model.chart, u, &x, a.step).map_err(|e| e.to_string())?;
    let order = (study.coarse / study.fine).abs().log2();
    let mut checks = vec![CheckRecord::at_most("extrapolated", "Richardson-extrapolated residual", study.extrapolated.abs(), s.options.tol.unwrap_or(1e-5), Provenance::Derived)];
    // an exact residual on both levels leaves no error to measure an order from
    if study.coarse.abs() > 1e-11 {
        checks.push(CheckRecord::close("order", "observed convergence order", order, 2.0, 0.3, Provenance::Derived));
    }
    let passed = checks.iter().all(|c| c.passed);
    let rows = [
        ("model", model.name.clone()),
        ("step", num(study.step)),
        ("residual_coarse", num(study.coarse)),
        ("residual_fine", num(study.fine)),
        ("observed_order", num(order)),
        ("extrapolated", num(study.extrapolated)),
    ];
    let tables = [quantity_table("conformal", &rows), checks_table("conformal-check", &checks)];
    let out = ConformalOutput { model: model.name, point: x, amplitude: a.amplitude, study, observed_order: order, checks };
    render(&out, &tables, s, passed)
}

pub fn spinor_cmd(a: &SpinorArgs, s: &Settings) -> CmdResult {
    if a.samples == 0 || a.kato_samples == 0 {
        return Err("sample counts must be positive".into());
    }
    let mut options = s.options;
    options.samples = SampleSizes { spinor: a.samples, kato: a.kato_samples, ..SampleSizes::default() };
    let r = report::run_suite(Suite::Spinor, &options).map_err(|e| e.to_string())?;
    let tables = [report::suite_table(&r)];
    render(&r, &tables, s, r.passed())
}

#[derive(Serialize)]
struct ObstructOutput {
    chi: i64,
    tau: i64,
    window: WindowGate,
    hitchin: HitchinGate,
    deduction: Option<Deduction>,
    /// Present when `(χ, τ)` is realised by a simply connected `b±`.
    positive_form: Option<PositiveFormGate>,
    notes: Vec<String>,
}

pub fn obstruct_cmd(a: &ObstructArgs, s: &Settings) -> CmdResult {
    let (chi, tau, descriptor) = match (a.chi, a.tau, a.bplus, a.bminus) {
        (Some(chi), Some(tau), None, None) => {
            let (bp, bm) = (chi - 2 + tau, chi - 2 - tau);
            let d = (bp >= 0 && bm >= 0 && bp % 2 == 0).then(|| TopologyDescriptor::simply_connected((bp / 2) as u32, (bm / 2) as u32));
            (chi, tau, d)
        }
        (None, None, Some(bp), Some(bm)) => {
            let d = TopologyDescriptor::simply_connected(bp, bm);
            (d.chi(), d.tau(), Some(d))
        }
        _ => return Err("give either --chi and --tau, or --bplus and --bminus".into()),
    };
    let window = window_gate(chi, tau).map_err(|e| e.to_string())?;
    let hitchin = hitchin_gate(chi, tau).map_err(|e| e.to_string())?;
    let deduction = (tau != 0).then(|| simply_connected_deduction(tau)).transpose().map_err(|e| e.to_string())?;
    let positive_form = descriptor.as_ref().map(positive_form_gate).transpose().map_err(|e| e.to_string())?;

    let mut notes = Vec::new();
    notes.push(if window.ok {
        "window 9 >= chi > 15|tau|/4 is open".to_owned()
    } else {
        "window 9 >= chi > 15|tau|/4 fails: no metric unless self-dual or anti-self-dual".to_owned()
    });
    notes.push(format!("Hitchin bound chi >= (3/2)^(3/2)|tau| {}", if hitchin.ok { "holds" } else { "fails" }));
    if let Some(p) = &positive_form {
        if p.hypotheses_met {
            notes.push(format!("positive definite form: {}", p.conclusion));
        }
    }
    let mut rows = vec![
        ("chi", chi.to_string()),
        ("tau", tau.to_string()),
        ("window", window.ok.to_string()),
        ("window_lower_margin", window.lower_margin.to_string()),
        ("hitchin", hitchin.ok.to_string()),
        ("hitchin_margin", num(hitchin.margin)),
    ];
    if let Some(d) = &deduction {
        rows.push(("deduction_min_chi", d.min_chi.map_or("none".into(), |c| c.to_string())));
    }
    if let Some(p) = &positive_form {
        rows.push(("positive_form_verdict", tag(&p.verdict)));
    }
    let tables = [quantity_table("obstruct", &rows)];
    let out = ObstructOutput { chi, tau, window, hitchin, deduction, positive_form, notes };
    render(&out, &tables, s, true)
}

#[derive(Serialize)]
struct EnumerateOutput {
    count: usize,
    /// The enumeration rules are a reconstruction that reproduces the published count.
    provenance: Provenance,
    rules: &'static str,
    classes: Vec<Homeotype>,
}

pub fn enumerate_cmd(s: &Settings) -> CmdResult {
    let classes = enumerate_homeotypes();
    let mut t = Table::new("homeotypes", &["representative", "b_plus", "b_minus", "chi", "tau", "form", "branch"]);
    for h in &classes {
        t.push(vec![
            h.representative.clone(),
            h.b_plus.to_string(),
            h.b_minus.to_string(),
            h.chi.to_string(),
            h.tau.to_string(),
            tag(&h.form),
            tag(&h.branch),
        ]);
    }
    let out = EnumerateOutput {
        count: classes.len(),
        provenance: Provenance::Derived,
        rules: "unoriented; S4 and CP2 from the self-dual branch; window branch with b+ >= b-, odd forms, even forms when tau = 0 mod 8 and b- > 0",
        classes,
    };
    render(&out, &[t], s, true)
}

pub fn report_cmd(a: &ReportArgs, s: &Settings) -> CmdResult {
    let suites = args::suites(a)?;
    let mut options = s.options;
    if a.quick {
        options.samples = SampleSizes::quick();
    }
    let r: ReproductionReport = report::run(&options, &suites).map_err(|e| e.to_string())?;
    render(&r, &r.tables(), s, r.passed())
}
