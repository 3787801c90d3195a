//! Command-line front end.
//!
//! Every command prints (or writes to `--out`) a JSON envelope
//! `{schema_version, command, config, result}` or a CSV table. Model options
//! come from an optional `--config` JSON file and are then overridden by
//! flags. Exit status: 0 on success, 1 when a verification check failed,
//! 2 when the computation itself errored.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::adaptive::converge;
use crate::ball::{theorem61_bounds, theorem61_holomorphic_bounds, write_bounds_grid, SqueezingBound};
use crate::curvature::CurvatureReport;
use crate::domain::{DomainSpec, ModelConfig, WeightSpec};
use crate::error::{Error, Result};
use crate::kernel::BergmanModel;
use crate::metric::MetricData;
use crate::min_integrals::MinIntegralReport;
use crate::moments::build_moment_table;
use crate::report::{envelope, flat_row, moments_csv, open_output, write_csv, write_json, OutputFormat};
use crate::suites::{jtilde_sequence, run_suite, SuiteOptions, SuiteReport, SUITES};

#[derive(Debug, Parser)]
#[command(name = "bergman-lab", version, about = "Weighted Bergman kernels, curvature and minimum integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ball,
    Polydisc,
    Ellipsoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrendQuantity {
    #[value(name = "Jtilde", alias = "jtilde")]
    Jtilde,
    #[value(name = "ricci")]
    Ricci,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// JSON run configuration; flags take precedence over its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelKind>,
    /// Complex dimension.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Weight level (Kähler–Einstein power on balls).
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Ball radius.
    #[arg(long, global = true)]
    pub r: Option<f64>,
    /// Polydisc or ellipsoid radii, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Ellipsoid exponents `p_j` in `Σ |z_j/a_j|^{2p_j} < 1`, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub exponents: Option<Vec<f64>>,
    /// Starting truncation degree.
    #[arg(long = "N", global = true)]
    pub degree: Option<u32>,
    /// Relative tolerance for adaptive truncation.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest truncation degree (also capped by `BERGMAN_LAB_MAX_N`).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Base point, comma separated complex numbers such as `0.1+0.2i,0.3`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<Complex64>>,
    /// First tangent direction (default `e1`)
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<Complex64>>,
    /// Second tangent direction (default `e2`, or `e1` when n = 1)
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Option<Vec<Complex64>>,
    /// Seed for the random cases of `verify` (default 7)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format (default json)
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moment table `‖z^α‖²`, `|α| ≤ N`.
    Moments,
    /// Kernel and metric at `--point`.
    Kernel,
    /// Bisectional, holomorphic sectional and Ricci curvature, `S`, `T`, `J`, `J̃`.
    Curvature,
    /// Minimum integrals at `--point` along `--x`, `--y`.
    Minints,
    /// Runs a verification suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        /// Number of random cases, overriding the suite default.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Squeezing-number interval for `B + (1+cos²)/(m(n+1))`.
    Bounds {
        /// Lower bound for the squeezing number.
        #[arg(long, required_unless_present = "grid")]
        s: Option<f64>,
        /// Metric `cos²` between the two directions.
        #[arg(long, default_value_t = 0.0)]
        cos2: f64,
        /// Measured bisectional curvature to test against the interval.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Measured holomorphic sectional curvature to test against its interval.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<f64>,
        /// Writes the interval endpoints over a fixed `(s, m, n)` grid as CSV.
        #[arg(long)]
        grid: bool,
    },
    /// Level trend on the unit ball as `m` grows.
    Trend {
        #[arg(long, value_enum)]
        quantity: TrendQuantity,
        #[arg(long = "m-max", default_value_t = 50)]
        m_max: u32,
    },
}

/// The optional JSON run configuration.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<ModelConfig>,
    pub point: Option<Vec<Complex64>>,
    pub x: Option<Vec<Complex64>>,
    pub y: Option<Vec<Complex64>>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// Fully resolved inputs of one run, echoed into the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Complex64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Complex64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Complex64>>,
    pub seed: u64,
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// How a run ended when it produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

/// A module error together with the inputs that triggered it.
#[derive(Debug)]
pub struct RunError {
    pub error: Error,
    pub context: String,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.context.is_empty() {
            write!(f, "{}", self.error)
        } else {
            write!(f, "{} [{}]", self.error, self.context)
        }
    }
}

impl From<Error> for RunError {
    fn from(error: Error) -> Self {
        Self { error, context: String::new() }
    }
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))
}

fn model_from_flags(kind: ModelKind, a: &CommonArgs) -> Result<ModelConfig> {
    let m = a.m.unwrap_or(1);
    let config = match kind {
        ModelKind::Ball => {
            let r = a.r.unwrap_or(1.0);
            ModelConfig::ball(a.n.unwrap_or(1), r, m)
        }
        ModelKind::Polydisc | ModelKind::Ellipsoid => {
            let n = a.n.or(a.radii.as_ref().map(Vec::len)).or(a.exponents.as_ref().map(Vec::len)).unwrap_or(1);
            let radii = a.radii.clone().unwrap_or_else(|| vec![1.0; n]);
            let domain = if kind == ModelKind::Polydisc {
                DomainSpec::Polydisc { radii }
            } else {
                let exponents = a.exponents.clone().unwrap_or_else(|| vec![1.0; n]);
                DomainSpec::DiagonalEllipsoid { exponents, radii }
            };
            if domain.dim() != n {
                return Err(Error::ConfigParse(format!("--n {n} disagrees with the given radii/exponents")));
            }
            // Levels above 1 restrict the Kähler–Einstein weight of the smallest
            // centred ball containing the domain.
            let weight = if m == 1 { WeightSpec::unweighted() } else { WeightSpec::ball_ke(m, domain.outer_radius()) };
            ModelConfig::new(domain, weight)
        }
    };
    Ok(config)
}

impl RunConfig {
    /// Merges the config file (if any) with the flags, flags winning.
    pub fn resolve(a: &CommonArgs) -> Result<Self> {
        let file = match &a.config {
            Some(p) => load_file(p)?,
            None => FileConfig::default(),
        };
        let shape_flags = a.n.is_some() || a.m.is_some() || a.r.is_some() || a.radii.is_some() || a.exponents.is_some();
        let mut model = match (a.model, file.model) {
            (Some(kind), _) => model_from_flags(kind, a)?,
            (None, Some(m)) if !shape_flags => m,
            (None, _) => model_from_flags(ModelKind::Ball, a)?,
        };
        if let Some(d) = a.degree {
            model.truncation_degree = d;
        }
        if let Some(t) = a.tol {
            model.tolerance = t;
        }
        if let Some(c) = a.max_degree {
            model.max_degree = c;
        }
        model.validate()?;
        Ok(Self {
            model,
            point: a.point.clone().or(file.point),
            x: a.x.clone().or(file.x),
            y: a.y.clone().or(file.y),
            seed: a.seed.or(file.seed).unwrap_or(7),
            format: a.format.or(file.format).unwrap_or_default(),
            out: a.out.clone().or(file.out),
        })
    }

    fn dim(&self) -> usize {
        self.model.dim()
    }

    fn point(&self) -> Vec<Complex64> {
        self.point.clone().unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); self.dim()])
    }

    fn unit(&self, j: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.dim()];
        v[j.min(self.dim() - 1)] = Complex64::new(1.0, 0.0);
        v
    }

    /// `X` defaults to `e₁`, `Y` to `e₂` (or `e₁` in dimension one).
    fn vectors(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        (self.x.clone().unwrap_or_else(|| self.unit(0)), self.y.clone().unwrap_or_else(|| self.unit(1)))
    }

    fn context(&self, with_vectors: bool) -> String {
        let fmt = |v: &[Complex64]| {
            let parts: Vec<String> = v.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
            format!("({})", parts.join(", "))
        };
        let mut s = format!("p={}", fmt(&self.point()));
        if with_vectors {
            let (x, y) = self.vectors();
            s.push_str(&format!(" X={} Y={}", fmt(&x), fmt(&y)));
        }
        s.push_str(&format!(" N={} cap={}", self.model.truncation_degree, self.model.degree_cap()));
        s
    }

    fn with_context<T>(&self, with_vectors: bool, r: Result<T>) -> std::result::Result<T, RunError> {
        r.map_err(|error| RunError { error, context: self.context(with_vectors) })
    }
}

#[derive(Debug, Serialize)]
struct KernelOutput {
    #[serde(rename = "K")]
    k: f64,
    /// Row-major `g_{jk̄}`.
    metric_re: Vec<f64>,
    metric_im: Vec<f64>,
    det_g: f64,
    #[serde(rename = "N_used")]
    n_used: u32,
}

#[derive(Debug, Serialize)]
struct BoundsOutput {
    s: f64,
    m: u32,
    n: usize,
    #[serde(rename = "D_m")]
    d_m: f64,
    cos2: f64,
    lower: f64,
    upper: f64,
    holomorphic_lower: f64,
    holomorphic_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holomorphic_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holomorphic_contained: Option<bool>,
}

#[derive(Debug, Serialize)]
struct TrendPoint {
    m: u32,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<f64>,
}

#[derive(Debug, Serialize)]
struct TrendOutput {
    quantity: &'static str,
    n: usize,
    values: Vec<TrendPoint>,
    /// Whether the values increase strictly from `m = 2` on.
    monotone_increasing_from_2: bool,
    decreases: Vec<u32>,
    last: f64,
}

fn emit(rc: &RunConfig, command: &str, result: &impl Serialize) -> Result<()> {
    let out = open_output(rc.out.as_deref())?;
    match rc.format {
        OutputFormat::Json => write_json(out, &envelope(command, rc, result)?),
        OutputFormat::Csv => {
            let (header, row) = flat_row(&serde_json::to_value(result)?);
            write_csv(out, &header, &[row])
        }
    }
}

fn run_kernel(rc: &RunConfig) -> std::result::Result<Outcome, RunError> {
    let p = rc.point();
    let model = rc.with_context(false, BergmanModel::build(&rc.model))?;
    let jet = rc.with_context(false, converge(&model, |m| m.kernel_jet(&p)))?;
    let metric = rc.with_context(false, MetricData::from_jet(&jet.value))?;
    let n = rc.dim();
    let entries: Vec<Complex64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|ij| metric.g[ij]).collect();
    let out = KernelOutput {
        k: jet.value.k(),
        metric_re: entries.iter().map(|z| z.re).collect(),
        metric_im: entries.iter().map(|z| z.im).collect(),
        det_g: metric.det,
        n_used: jet.degree,
    };
    emit(rc, "kernel", &out)?;
    Ok(Outcome::Success)
}

fn run_curvature(rc: &RunConfig) -> std::result::Result<Outcome, RunError> {
    let p = rc.point();
    let (x, y) = rc.vectors();
    let model = rc.with_context(true, BergmanModel::build(&rc.model))?;
    let res = rc.with_context(true, converge(&model, |m| m.curvature_bisectional(&p, &x, &y)))?;
    let report = CurvatureReport { n_used: Some(res.degree), ..res.value };
    emit(rc, "curvature", &report)?;
    Ok(Outcome::Success)
}

fn run_minints(rc: &RunConfig) -> std::result::Result<Outcome, RunError> {
    let p = rc.point();
    let (x, y) = rc.vectors();
    let model = rc.with_context(true, BergmanModel::build(&rc.model))?;
    let res = rc.with_context(true, converge(&model, |m| m.min_integrals(&p, &x, &y)))?;
    let report = MinIntegralReport { n_used: Some(res.degree), ..res.value };
    emit(rc, "minints", &report)?;
    Ok(Outcome::Success)
}

fn run_verify(rc: &RunConfig, suite: &str, cases: Option<usize>) -> std::result::Result<Outcome, RunError> {
    let opts = SuiteOptions { model: rc.model.clone(), seed: rc.seed, cases };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let reports: Vec<SuiteReport> = names.iter().map(|s| run_suite(s, &opts)).collect::<Result<_>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let out = open_output(rc.out.as_deref())?;
    match rc.format {
        OutputFormat::Json => {
            let result = if reports.len() == 1 {
                serde_json::to_value(&reports[0]).map_err(Error::from)?
            } else {
                json!(reports)
            };
            write_json(out, &envelope("verify", rc, &result)?)?;
        }
        OutputFormat::Csv => {
            let header: Vec<String> =
                ["suite", "cases", "max_residual", "pass", "failed_cases"].iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let failed: Vec<String> = r.failed_cases.iter().map(|i| i.to_string()).collect();
                    vec![
                        r.suite.clone(),
                        r.cases.to_string(),
                        crate::report::fmt_f64(r.max_residual),
                        r.pass.to_string(),
                        failed.join(" "),
                    ]
                })
                .collect();
            write_csv(out, &header, &rows)?;
        }
    }
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("suite {} failed: cases {:?}, max residual {:e}", r.suite, r.failed_cases, r.max_residual);
    }
    Ok(if pass { Outcome::Success } else { Outcome::VerificationFailed })
}

fn run_bounds(
    rc: &RunConfig,
    s: Option<f64>,
    cos2: f64,
    b: Option<f64>,
    h: Option<f64>,
    grid: bool,
) -> std::result::Result<Outcome, RunError> {
    if grid {
        let s_values: Vec<f64> = (0..=10).map(|k| 0.5 + 0.05 * f64::from(k)).collect();
        write_bounds_grid(open_output(rc.out.as_deref())?, &s_values, &[1, 2, 3, 4, 5], &[1, 2, 3])?;
        return Ok(Outcome::Success);
    }
    let s = s.ok_or_else(|| Error::ConfigParse("--s is required".into()))?;
    if !(0.0..=1.0).contains(&cos2) {
        return Err(Error::ConfigParse(format!("--cos2 must lie in [0,1], got {cos2}")).into());
    }
    let bound = SqueezingBound::user(s)?;
    let (m, n) = (rc.model.level(), rc.dim());
    let bi = theorem61_bounds(&bound, m, n, cos2, b.unwrap_or(0.0));
    let hi = theorem61_holomorphic_bounds(&bound, m, n, h.unwrap_or(0.0));
    let out = BoundsOutput {
        s,
        m,
        n,
        d_m: bi.d_m,
        cos2,
        lower: bi.lower,
        upper: bi.upper,
        holomorphic_lower: hi.lower,
        holomorphic_upper: hi.upper,
        value: b.map(|_| bi.value),
        contained: b.map(|_| bi.contained),
        holomorphic_value: h.map(|_| hi.value),
        holomorphic_contained: h.map(|_| hi.contained),
    };
    emit(rc, "bounds", &out)?;
    let ok = out.contained.unwrap_or(true) && out.holomorphic_contained.unwrap_or(true);
    Ok(if ok { Outcome::Success } else { Outcome::VerificationFailed })
}

fn run_trend(rc: &RunConfig, quantity: TrendQuantity, m_max: u32) -> std::result::Result<Outcome, RunError> {
    if m_max < 2 {
        return Err(Error::ConfigParse(format!("--m-max must be >= 2, got {m_max}")).into());
    }
    let n = rc.dim();
    let (name, values) = match quantity {
        TrendQuantity::Jtilde => {
            let v: Vec<TrendPoint> = jtilde_sequence(n, m_max)
                .into_iter()
                .map(|(m, value)| TrendPoint { m, value, expected: None })
                .collect();
            ("Jtilde", v)
        }
        TrendQuantity::Ricci => {
            let origin = vec![Complex64::new(0.0, 0.0); n];
            let mut e1 = origin.clone();
            e1[0] = Complex64::new(1.0, 0.0);
            let mut v = Vec::new();
            for m in 1..=m_max {
                // Degree-2 truncation already carries the exact 2-jet at the origin.
                let cfg = ModelConfig::ball(n, 1.0, m).with_degree(2);
                let ric =
                    rc.with_context(false, BergmanModel::build(&cfg).and_then(|model| model.ricci(&origin, &e1)))?;
                v.push(TrendPoint { m, value: ric, expected: Some(-1.0 / f64::from(m)) });
            }
            ("ricci", v)
        }
    };
    let decreases: Vec<u32> =
        values.windows(2).filter(|w| w[0].m >= 2 && w[1].value <= w[0].value).map(|w| w[1].m).collect();
    let out = TrendOutput {
        quantity: name,
        n,
        monotone_increasing_from_2: decreases.is_empty(),
        decreases,
        last: values.last().map(|p| p.value).unwrap_or(f64::NAN),
        values,
    };
    match rc.format {
        OutputFormat::Json => emit(rc, "trend", &out)?,
        OutputFormat::Csv => {
            let header: Vec<String> = ["m", "value", "expected"].iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = out
                .values
                .iter()
                .map(|p| {
                    vec![
                        p.m.to_string(),
                        crate::report::fmt_f64(p.value),
                        p.expected.map(crate::report::fmt_f64).unwrap_or_default(),
                    ]
                })
                .collect();
            write_csv(open_output(rc.out.as_deref())?, &header, &rows)?;
        }
    }
    Ok(Outcome::Success)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> std::result::Result<Outcome, RunError> {
    let rc = RunConfig::resolve(&cli.common)?;
    match &cli.command {
        Command::Moments => {
            let table = rc.with_context(false, build_moment_table(&rc.model))?;
            let out = open_output(rc.out.as_deref())?;
            match rc.format {
                OutputFormat::Json => write_json(out, &envelope("moments", &rc, &table.to_json())?)?,
                OutputFormat::Csv => moments_csv(out, &table)?,
            }
            Ok(Outcome::Success)
        }
        Command::Kernel => run_kernel(&rc),
        Command::Curvature => run_curvature(&rc),
        Command::Minints => run_minints(&rc),
        Command::Verify { suite, cases } => run_verify(&rc, suite, *cases),
        Command::Bounds { s, cos2, b, h, grid } => run_bounds(&rc, *s, *cos2, *b, *h, *grid),
        Command::Trend { quantity, m_max } => run_trend(&rc, *quantity, *m_max),
    }
}

/// Parses the process arguments, runs, and maps the outcome to an exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
