use std::io::Write;
use std::process::{Command, Output, Stdio};

use einstein4::report::ReproductionReport;

fn einstein4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_einstein4"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_einstein4"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn zero_operator() -> String {
    serde_json::json!({ "basis": "f-plus-minus-v1", "matrix": vec![vec![0.0; 6]; 6] }).to_string()
}

const QUICK: [&str; 8] = ["report", "--quick", "--suite", "spinor", "--suite", "topology", "--suite", "functional"];

#[test]
fn quick_report_passes_and_is_deterministic() {
    let a = einstein4(&QUICK);
    let b = einstein4(&QUICK);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let other_seed = einstein4(&[&QUICK[..], &["--seed", "7"]].concat());
    assert_ne!(a.stdout, other_seed.stdout);
}

#[test]
fn report_json_round_trips() {
    let out = stdout(&einstein4(&QUICK));
    let report: ReproductionReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.schema_version, 1);
    assert_eq!(report.summary.failed, 0);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, out);
    let provenance: Vec<_> = report.suites.iter().flat_map(|s| &s.records).map(|r| r.provenance.to_string()).collect();
    assert!(provenance.iter().all(|p| ["published", "trivial", "derived"].contains(&p.as_str())));
}

#[test]
fn csv_has_one_row_per_check() {
    let json: ReproductionReport = serde_json::from_str(&stdout(&einstein4(&QUICK))).unwrap();
    let csv = stdout(&einstein4(&[&QUICK[..], &["--format", "csv"]].concat()));
    assert_eq!(csv.lines().count(), json.summary.total + 1);
}

#[test]
fn chern_markdown_lists_invariants_per_model() {
    let o = einstein4(&["report", "--suite", "chern", "--format", "markdown"]);
    assert_eq!(code(&o), 0);
    let md = stdout(&o);
    assert!(md.contains("### chern"));
    for model in ["s4", "cp2", "s2xs2", "t4", "s2xs2_1_2"] {
        for q in ["euler_characteristic", "signature", "volume"] {
            assert!(md.contains(&format!("chern.{model}.{q}")), "{model} {q}");
        }
    }
    for model in ["s4", "cp2", "s2xs2"] {
        assert!(md.contains(&format!("chern.{model}.total_scalar")), "{model}");
    }
}

#[test]
fn failing_check_exits_one() {
    let o = einstein4(&["chern", "--model", "s4", "--tol", "1e-30"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false && c["margin"].as_f64().unwrap() < 0.0));
}

#[test]
fn usage_and_io_errors_exit_two_with_one_line() {
    for args in [
        &["frobnicate"][..],
        &["report", "--no-such-flag"],
        &["chern", "--model", "k3"],
        &["enumerate", "--format", "yaml"],
        &["decompose", "/nonexistent/operator.json"],
        &["obstruct", "--chi", "4", "--tau", "1"],
        &["chern", "--tol", "-1"],
        &["report", "--suite", "nope"],
    ] {
        let o = einstein4(args);
        assert_eq!(code(&o), 2, "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn malformed_matrix_exits_two() {
    let o = with_stdin(&["decompose"], r#"{"basis":"f-plus-minus-v1","matrix":[[1,2],[3,4]]}"#);
    assert_eq!(code(&o), 2);
    let o = with_stdin(&["decompose"], "not json");
    assert_eq!(code(&o), 2);
}

#[test]
fn zero_matrix_decomposes_to_zero() {
    let o = with_stdin(&["decompose"], &zero_operator());
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["scalar"], 0.0);
    assert_eq!(v["w_plus"], serde_json::json!([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]));
    assert_eq!(v["mixed"], v["w_minus"]);
}

#[test]
fn obstruct_reports_window_and_hitchin() {
    let o = einstein4(&["obstruct", "--chi", "3", "--tau", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window"]["ok"], false);
    assert_eq!(v["hitchin"]["ok"], true);
    assert_eq!(v["positive_form"]["verdict"], "fubini_study");
    let o = einstein4(&["obstruct", "--bplus", "3", "--bminus", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["chi"].as_i64(), v["tau"].as_i64(), v["window"]["ok"].as_bool()), (Some(6), Some(2), Some(false)));
}

#[test]
fn enumerate_lists_twelve_classes() {
    let v: serde_json::Value = serde_json::from_slice(&einstein4(&["enumerate"]).stdout).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["provenance"], "derived");
    assert_eq!(stdout(&einstein4(&["enumerate", "--format", "csv"])).lines().count(), 13);
}

#[test]
fn certify_model_and_operator() {
    let o = einstein4(&["certify", "--model", "cp2", "--point", "0.2,-0.1,0.3,0.05"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["min_sectional"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v["nonnegative_sectional"], true);
    let o = with_stdin(&["certify", "-"], &zero_operator());
    assert_eq!(code(&o), 0);
}

#[test]
fn conformal_and_spinor_checks_pass() {
    assert_eq!(code(&einstein4(&["conformal-check", "--model", "s4"])), 0);
    assert_eq!(code(&einstein4(&["spinor-check", "--samples", "20", "--kato-samples", "20000"])), 0);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("out.txt");
    std::fs::write(&cfg, format!("# defaults\nformat = csv\noutput = {}\nseed = 7\n", out.display())).unwrap();
    let o = einstein4(&["enumerate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("representative,"));
    let o = einstein4(&["enumerate", "--config", cfg.to_str().unwrap(), "--format", "json", "--output", "-"]);
    assert_eq!(code(&o), 0);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&einstein4(&["enumerate", "--config", cfg.to_str().unwrap()])), 2);
}
