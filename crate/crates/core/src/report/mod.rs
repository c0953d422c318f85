//! Check records, the full reproduction report and its renderings.

pub mod render;
mod suites;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::FiniteDifference;
use crate::quadrature::QuadratureSpec;

pub use render::{emit, Format, Table};
pub use suites::run_suite;

pub const SCHEMA_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published source.
    Published,
    /// Immediate from definitions.
    Trivial,
    /// Obtained here from an independent computation.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// What is being checked, in words.
    pub anchor: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub tolerance: Option<f64>,
    /// Slack left before the check fails; negative on failure.
    pub margin: Option<f64>,
    pub passed: bool,
}

impl CheckRecord {
    /// `|computed - expected| ≤ tol`.
    pub fn close(id: &str, anchor: &str, computed: f64, expected: f64, tol: f64, provenance: Provenance) -> Self {
        let margin = tol - (computed - expected).abs();
        Self::numeric(id, anchor, computed, Value::from(expected), Some(tol), margin, provenance)
    }

    /// `|computed - expected| ≤ tol·|expected|`.
    pub fn relative(id: &str, anchor: &str, computed: f64, expected: f64, tol: f64, provenance: Provenance) -> Self {
        let abs_tol = tol * expected.abs();
        let margin = abs_tol - (computed - expected).abs();
        Self::numeric(id, anchor, computed, Value::from(expected), Some(tol), margin, provenance)
    }

    /// `computed ≤ bound`.
    pub fn at_most(id: &str, anchor: &str, computed: f64, bound: f64, provenance: Provenance) -> Self {
        Self::numeric(id, anchor, computed, Value::from(format!("<= {}", render::number(bound))), None, bound - computed, provenance)
    }

    /// `computed ≥ bound`.
    pub fn at_least(id: &str, anchor: &str, computed: f64, bound: f64, provenance: Provenance) -> Self {
        Self::numeric(id, anchor, computed, Value::from(format!(">= {}", render::number(bound))), None, computed - bound, provenance)
    }

    /// `computed < bound`.
    pub fn below(id: &str, anchor: &str, computed: f64, bound: f64, provenance: Provenance) -> Self {
        let mut r = Self::numeric(id, anchor, computed, Value::from(format!("< {}", render::number(bound))), None, bound - computed, provenance);
        r.passed = computed < bound;
        r
    }

    /// Exact equality of plain values.
    pub fn equals(id: &str, anchor: &str, computed: impl Serialize, expected: impl Serialize, provenance: Provenance) -> Self {
        let computed = serde_json::to_value(computed).unwrap_or(Value::Null);
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            passed: computed == expected,
            computed,
            expected,
            provenance,
            tolerance: None,
            margin: None,
        }
    }

    fn numeric(id: &str, anchor: &str, computed: f64, expected: Value, tolerance: Option<f64>, margin: f64, provenance: Provenance) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            computed: Value::from(computed),
            expected,
            provenance,
            tolerance,
            margin: Some(margin),
            passed: margin >= 0.0 && computed.is_finite(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Decomposition,
    Pointwise,
    Spinor,
    Conformal,
    Chern,
    Inequalities,
    Functional,
    Topology,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Decomposition,
        Suite::Pointwise,
        Suite::Spinor,
        Suite::Conformal,
        Suite::Chern,
        Suite::Inequalities,
        Suite::Functional,
        Suite::Topology,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Decomposition => "decomposition",
            Suite::Pointwise => "pointwise",
            Suite::Spinor => "spinor",
            Suite::Conformal => "conformal",
            Suite::Chern => "chern",
            Suite::Inequalities => "inequalities",
            Suite::Functional => "functional",
            Suite::Topology => "topology",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSizes {
    pub operators: usize,
    pub trace_free: usize,
    pub einstein: usize,
    pub oracle_instances: usize,
    pub oracle_points: usize,
    pub spinor: usize,
    pub kato: usize,
}

impl Default for SampleSizes {
    fn default() -> Self {
        Self {
            operators: 10_000,
            trace_free: 100_000,
            einstein: 10_000,
            oracle_instances: 100,
            oracle_points: 100_000,
            spinor: 1_000,
            kato: 100_000,
        }
    }
}

impl SampleSizes {
    /// A small configuration for smoke runs.
    pub fn quick() -> Self {
        Self {
            operators: 200,
            trace_free: 2_000,
            einstein: 200,
            oracle_instances: 5,
            oracle_points: 20_000,
            spinor: 50,
            kato: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub seed: u64,
    pub fd: FiniteDifference,
    pub quadrature: QuadratureSpec,
    /// Replaces every numeric tolerance when set.
    pub tol: Option<f64>,
    pub samples: SampleSizes,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            fd: FiniteDifference::default(),
            quadrature: QuadratureSpec::default(),
            tol: None,
            samples: SampleSizes::default(),
        }
    }
}

impl ReportOptions {
    pub(crate) fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub options: ReportOptions,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl ReproductionReport {
    pub fn new(options: ReportOptions, suites: Vec<SuiteReport>) -> Self {
        let total = suites.iter().map(|s| s.records.len()).sum();
        let passed = suites.iter().flat_map(|s| &s.records).filter(|r| r.passed).count();
        ReproductionReport {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            options,
            suites,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// One table per suite.
    pub fn tables(&self) -> Vec<Table> {
        self.suites.iter().map(suite_table).collect()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map(render::number).unwrap_or_else(|| n.to_string()),
        other => other.to_string(),
    }
}

pub fn suite_table(s: &SuiteReport) -> Table {
    let mut t = Table::new(s.suite.name(), &["id", "check", "computed", "expected", "provenance", "tolerance", "margin", "status"]);
    for r in &s.records {
        t.push(vec![
            r.id.clone(),
            r.anchor.clone(),
            cell(&r.computed),
            cell(&r.expected),
            r.provenance.to_string(),
            r.tolerance.map(render::number).unwrap_or_default(),
            r.margin.map(render::number).unwrap_or_default(),
            if r.passed { "pass" } else { "FAIL" }.into(),
        ]);
    }
    t
}

/// Runs the given suites in order.
pub fn run(options: &ReportOptions, suites: &[Suite]) -> Result<ReproductionReport> {
    let reports = suites.iter().map(|s| run_suite(*s, options)).collect::<Result<Vec<_>>>()?;
    Ok(ReproductionReport::new(*options, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_helpers() {
        assert!(CheckRecord::close("a", "x", 1.0005, 1.0, 1e-3, Provenance::Trivial).passed);
        assert!(!CheckRecord::close("a", "x", 1.002, 1.0, 1e-3, Provenance::Trivial).passed);
        assert!(CheckRecord::relative("a", "x", 100.005, 100.0, 1e-4, Provenance::Derived).passed);
        let b = CheckRecord::below("a", "x", 2.0, 2.0, Provenance::Derived);
        assert!(!b.passed && b.margin == Some(0.0));
        assert!(CheckRecord::at_most("a", "x", 2.0, 2.0, Provenance::Derived).passed);
        assert!(CheckRecord::equals("a", "x", 12, 12, Provenance::Published).passed);
        assert!(!CheckRecord::close("a", "x", f64::NAN, 1.0, 1.0, Provenance::Trivial).passed);
    }

    #[test]
    fn summary_counts() {
        let s = SuiteReport {
            suite: Suite::Topology,
            records: vec![
                CheckRecord::equals("a", "x", 1, 1, Provenance::Trivial),
                CheckRecord::equals("b", "x", 1, 2, Provenance::Trivial),
            ],
        };
        let r = ReproductionReport::new(ReportOptions::default(), vec![s]);
        assert_eq!((r.summary.total, r.summary.passed, r.summary.failed), (2, 1, 1));
        assert!(!r.passed());
        assert_eq!(r.tables()[0].rows.len(), 2);
        assert_eq!(Provenance::Published.to_string(), "published");
    }
}
