use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use einstein4::geometry::{FiniteDifference, ModelKind};
use einstein4::quadrature::QuadratureSpec;
use einstein4::report::{Format, ReportOptions, Suite};

#[derive(Debug, Parser)]
#[command(name = "einstein4", version, about = "Curvature, characteristic-number and topology checks for Einstein 4-manifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format: json, csv, markdown or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Finite-difference step.
    #[arg(long = "fd-step", global = true)]
    pub fd_step: Option<f64>,
    /// Gauss-Legendre order used in every direction.
    #[arg(long = "quad-order", global = true)]
    pub quad_order: Option<usize>,
    /// Replaces the default tolerance of every numeric check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a curvature operator (JSON) into W+, W-, trace-free Ricci and s.
    Decompose(InputArgs),
    /// Evaluate the pointwise curvature inequalities for an operator or a model point.
    Certify(CertifyArgs),
    /// Integrate the Euler characteristic, signature and related functionals over a model.
    Chern(ChernArgs),
    /// Measure the residual of the conformal transformation law of s - 2sqrt6|W+|.
    ConformalCheck(ConformalArgs),
    /// Check the 3/5 projection identity and the Kato constant.
    SpinorCheck(SpinorArgs),
    /// Apply the topological gates to (chi, tau) or (b+, b-).
    Obstruct(ObstructArgs),
    /// List the admissible simply connected homeotypes.
    Enumerate,
    /// Run the check suites and emit one verdict document.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Operator JSON file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// s4, cp2, s2xs2 or t4.
    #[arg(long)]
    pub model: Option<String>,
    /// Radius of the round sphere.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Radii of the two factors of S2xS2, as `a,b`.
    #[arg(long, value_parser = parse_list::<2>)]
    pub radii: Option<[f64; 2]>,
    /// Side length of the flat torus.
    #[arg(long)]
    pub side: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Operator JSON file; `-` for stdin. Ignored with --model.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Chart point as `x0,x1,x2,x3`; defaults to the model base point.
    #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true)]
    pub point: Option<[f64; 4]>,
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Alias of --quad-order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Use the opposite orientation.
    #[arg(long)]
    pub reversed: bool,
}

#[derive(Debug, Args)]
pub struct ConformalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true)]
    pub point: Option<[f64; 4]>,
    /// Coarse step of the convergence study; the fine step is half of it.
    #[arg(long, default_value_t = 0.02)]
    pub step: f64,
    /// Amplitude `a` of the factor `u = 1 + a exp(-|x|^2)`.
    #[arg(long, default_value_t = 0.5)]
    pub amplitude: f64,
}

#[derive(Debug, Args)]
pub struct SpinorArgs {
    /// Random (v, U) pairs for the projection ratio.
    #[arg(long, default_value_t = 1_000)]
    pub samples: usize,
    /// Samples for the Kato supremum.
    #[arg(long = "kato-samples", default_value_t = 100_000)]
    pub kato_samples: usize,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    /// Euler characteristic.
    #[arg(long, allow_negative_numbers = true, requires = "tau", conflicts_with_all = ["bplus", "bminus"])]
    pub chi: Option<i64>,
    /// Signature.
    #[arg(long, allow_negative_numbers = true, requires = "chi")]
    pub tau: Option<i64>,
    /// Rank of the self-dual part of H^2.
    #[arg(long, requires = "bminus")]
    pub bplus: Option<u32>,
    /// Rank of the anti-self-dual part of H^2.
    #[arg(long, requires = "bplus")]
    pub bminus: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Run every suite (the default when no --suite is given).
    #[arg(long)]
    pub all: bool,
    /// Suite to run; repeatable.
    #[arg(long = "suite", conflicts_with = "all")]
    pub suites: Vec<String>,
    /// Smaller sample sizes for a fast smoke run.
    #[arg(long)]
    pub quick: bool,
}

/// Comma-separated list of exactly `N` numbers.
fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
        .collect::<Result<Vec<_>, _>>()?;
    values.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated values, got {}", v.len()))
}

/// Flags merged over the optional config file.
#[derive(Debug, Clone)]
pub struct Settings {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub model: Option<String>,
    pub options: ReportOptions,
}

fn parse_config(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected `key = value`", n + 1))?;
        let key = key.trim().replace('-', "_");
        if !["format", "output", "seed", "fd_step", "quad_order", "tol", "model"].contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key `{key}`", n + 1));
        }
        map.insert(key, value.trim().trim_matches('"').to_owned());
    }
    Ok(map)
}

fn parsed<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|_| format!("config: invalid value `{v}` for `{key}`")))
        .transpose()
}

pub fn settings(g: &GlobalArgs, model_flag: Option<&str>) -> Result<Settings, String> {
    let file = match &g.config {
        Some(p) => parse_config(p)?,
        None => BTreeMap::new(),
    };
    let format = match g.format.clone().or_else(|| file.get("format").cloned()) {
        Some(f) => f.parse::<Format>().map_err(|e| e.to_string())?,
        None => Format::Json,
    };
    let seed = g.seed.or(parsed(&file, "seed")?);
    let fd_step = g.fd_step.or(parsed(&file, "fd_step")?);
    let quad_order = g.quad_order.or(parsed(&file, "quad_order")?);
    let tol = g.tol.or(parsed(&file, "tol")?);

    let mut options = ReportOptions::default();
    if let Some(s) = seed {
        options.seed = s;
    }
    if let Some(h) = fd_step {
        if !(h > 0.0 && h.is_finite()) {
            return Err(format!("--fd-step must be positive, got {h}"));
        }
        options.fd = FiniteDifference::default().with_step(h);
        options.quadrature.fd = options.fd;
    }
    if let Some(n) = quad_order {
        options.quadrature = QuadratureSpec { fd: options.quadrature.fd, ..QuadratureSpec::default() }.with_order(n);
        options.quadrature.validate().map_err(|e| e.to_string())?;
    }
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol must be positive, got {t}"));
        }
        options.tol = Some(t);
    }
    Ok(Settings {
        format,
        output: g.output.clone().or_else(|| file.get("output").map(PathBuf::from)),
        model: model_flag.map(str::to_owned).or_else(|| file.get("model").cloned()),
        options,
    })
}

pub fn model_kind(name: Option<&str>, default: ModelKind) -> Result<ModelKind, String> {
    name.map_or(Ok(default), |n| n.parse::<ModelKind>().map_err(|e| e.to_string()))
}

pub fn suites(args: &ReportArgs) -> Result<Vec<Suite>, String> {
    if args.suites.is_empty() {
        return Ok(Suite::ALL.to_vec());
    }
    args.suites
        .iter()
        .map(|s| s.parse::<Suite>().map_err(|e| e.to_string()))
        .collect()
}
