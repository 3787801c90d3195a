//! Verification suites.
//!
//! Each suite runs a list of independent cases (in parallel, one seeded
//! random stream per case) and reports every check with its residual and
//! tolerance. A suite passes when every check of every case passes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::adaptive::{converge, Converging};
use crate::ball::{
    ball_min_integrals_origin, caratheodory_origin, cm_constant, euclid_cos2, lemma55_sandwich, theorem61_bounds,
    theorem61_holomorphic_bounds, BallAutomorphism, BallClosedForms, SandwichInput, SqueezingBound,
};
use crate::curvature::{report_from_jet, CurvatureReport};
use crate::domain::{DomainSpec, ModelConfig};
use crate::error::{Error, Result};
use crate::kernel::{BergmanModel, Functional};
use crate::metric::MetricData;
use crate::min_integrals::{
    bergman_fuks_crosscheck, min_integral_oracle, Constraint, CrosscheckReport, MinIntegralReport,
};
use crate::sampling::{case_rng, point_in_domain, unit_sphere};

/// One pass/fail comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance, pass: residual <= tolerance }
    }

    /// A boolean condition, reported with residual 0 or 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, tolerance: 0.0, pass: ok }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub index: usize,
    pub label: String,
    pub checks: Vec<Check>,
    /// Set when the computation itself failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

impl CaseResult {
    fn new(index: usize, label: String, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { index, label, checks, error: None, pass }
    }

    fn failed(index: usize, label: String, err: Error) -> Self {
        Self { index, label, checks: Vec::new(), error: Some(err.to_string()), pass: false }
    }

    pub fn max_residual(&self) -> f64 {
        if self.error.is_some() {
            return f64::INFINITY;
        }
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// `{suite, cases, max_residual, pass}` plus the per-case detail.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_residual: f64,
    pub pass: bool,
    pub failed_cases: Vec<usize>,
    pub case_results: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn from_cases(suite: &str, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by_key(|c| c.index);
        let max_residual = cases.iter().map(CaseResult::max_residual).fold(0.0, f64::max);
        let failed_cases: Vec<usize> = cases.iter().filter(|c| !c.pass).map(|c| c.index).collect();
        Self {
            suite: suite.into(),
            cases: cases.len(),
            max_residual,
            pass: failed_cases.is_empty(),
            failed_cases,
            case_results: cases,
        }
    }

    /// Largest residual among checks whose name starts with `prefix`.
    pub fn max_residual_of(&self, prefix: &str) -> f64 {
        self.case_results
            .iter()
            .flat_map(|c| c.checks.iter())
            .filter(|c| c.name.starts_with(prefix))
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "closed-form",
    "bergman-fuks",
    "oracle",
    "golden-values",
    "monotonicity",
    "transformation",
    "squeezing",
    "sandwich",
    "trend",
    "hahn-lu",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Model for the suites that take one (`bergman-fuks`, `oracle`).
    pub model: ModelConfig,
    pub seed: u64,
    /// Overrides the default number of random cases.
    pub cases: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { model: ModelConfig::ball(2, 1.0, 1), seed: 7, cases: None }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "closed-form" => Ok(closed_form_suite(opts.seed, opts.cases.unwrap_or(20))),
        "bergman-fuks" => Ok(bergman_fuks_suite(&opts.model, opts.seed, opts.cases.unwrap_or(50), 0.4)),
        "oracle" => Ok(oracle_suite(&opts.model, opts.seed, opts.cases.unwrap_or(100))),
        "golden-values" => Ok(golden_values_suite()),
        "monotonicity" => Ok(monotonicity_suite(opts.seed, opts.cases.unwrap_or(10))),
        "transformation" => Ok(transformation_suite(opts.seed, opts.cases.unwrap_or(20))),
        "squeezing" => Ok(squeezing_suite(opts.seed, opts.cases.unwrap_or(20))),
        "sandwich" => Ok(sandwich_suite(opts.seed, opts.cases.unwrap_or(10))),
        "trend" => Ok(trend_suite()),
        "hahn-lu" => Ok(hahn_lu_suite()),
        other => Err(Error::InvalidConfig(format!("unknown suite {other:?}; expected one of {SUITES:?} or \"all\""))),
    }
}

fn fmt_vec(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
    format!("({})", parts.join(", "))
}

fn label(p: &[Complex64], x: &[Complex64], y: &[Complex64]) -> String {
    format!("p={} X={} Y={}", fmt_vec(p), fmt_vec(x), fmt_vec(y))
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(1e-300)
    }
}

fn zeros(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); n]
}

fn e(n: usize, j: usize) -> Vec<Complex64> {
    let mut v = zeros(n);
    v[j] = Complex64::new(1.0, 0.0);
    v
}

impl Converging for CrosscheckReport {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        vec![(self.b_tensor, 1.0), (self.b_minint, 1.0)]
    }
}

/// Series engine against the ball closed forms: `K`, `G`, `J`, `J̃` at seeded
/// points `|p| ≤ 0.5` (relative `1e-8`) and the origin tensors along seeded
/// directions (relative `1e-6`), for `n ∈ {1,2}`, `m ∈ {1,2,3}`, `N ≤ 80`.
pub fn closed_form_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut jobs = Vec::new();
    for n in [1usize, 2] {
        for m in [1u32, 2, 3] {
            for i in 0..cases {
                jobs.push((n, m, i));
            }
        }
    }
    let results: Vec<CaseResult> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(n, m, i))| {
            let mut rng = case_rng(seed, idx as u64);
            let p = point_in_domain(&mut rng, &DomainSpec::ball(n, 1.0), 0.5);
            let x = unit_sphere(&mut rng, n);
            let y = unit_sphere(&mut rng, n);
            let lab = format!("n={n} m={m} case={i} {}", label(&p, &x, &y));
            match closed_form_case(n, m, &p, &x, &y) {
                Ok(checks) => CaseResult::new(idx, lab, checks),
                Err(err) => CaseResult::failed(idx, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases("closed-form", results)
}

fn closed_form_case(n: usize, m: u32, p: &[Complex64], x: &[Complex64], y: &[Complex64]) -> Result<Vec<Check>> {
    let cfg = ModelConfig::ball(n, 1.0, m).with_degree(20).with_max_degree(80);
    let model = BergmanModel::build(&cfg)?;
    let ball = BallClosedForms::new(1.0, m, n)?;
    let jet = converge(&model, |md| md.kernel_jet(p))?;
    let metric = MetricData::from_jet(&jet.value)?;
    let (j, jt) = crate::curvature::canonical_from_jet(&jet.value, &metric, m);
    let g_exact = ball.metric(p)?;
    let g_res = (&metric.g - &g_exact).norm() / g_exact.norm();
    let mut checks = vec![
        Check::new("K", rel(jet.value.k(), ball.kernel(p)?), 1e-8),
        Check::new("G", g_res, 1e-8),
        Check::new("J", rel(j, ball.j(p)?), 1e-8),
        Check::new("J_tilde", rel(jt, ball.j_tilde()), 1e-8),
    ];
    let origin = zeros(n);
    let series = model.curvature_bisectional(&origin, x, y)?;
    let exact = ball.curvature_origin(x, y)?;
    checks.push(Check::new("curvature_B", rel(series.b, exact.b), 1e-6));
    checks.push(Check::new("curvature_H", rel(series.h, exact.h), 1e-6));
    checks.push(Check::new("curvature_S", rel(series.s, exact.s), 1e-6));
    checks.push(Check::new("curvature_T", rel(series.t, exact.t), 1e-6));
    checks.push(Check::new("curvature_ricci", rel(series.ricci, exact.ricci), 1e-6));
    Ok(checks)
}

/// Curvature tensor against the minimum-integral route at seeded `(p, X, Y)`
/// with gauge `≤ max_gauge`.
pub fn bergman_fuks_suite(config: &ModelConfig, seed: u64, cases: usize, max_gauge: f64) -> SuiteReport {
    let name = "bergman-fuks";
    let model = match BergmanModel::build(config) {
        Ok(m) => m,
        Err(err) => return SuiteReport::from_cases(name, vec![CaseResult::failed(0, "model".into(), err)]),
    };
    let n = model.dim();
    let results: Vec<CaseResult> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let p = point_in_domain(&mut rng, &config.domain, max_gauge);
            let x = unit_sphere(&mut rng, n);
            let y = unit_sphere(&mut rng, n);
            let lab = label(&p, &x, &y);
            match converge(&model, |md| bergman_fuks_crosscheck(md, &p, &x, &y)) {
                Ok(c) => {
                    let r = c.value;
                    CaseResult::new(
                        i,
                        format!("{lab} N={}", c.degree),
                        vec![
                            Check::new("B_tensor_vs_minint", r.b_residual, 1e-6),
                            Check::new("S_symmetry", r.s_symmetry_residual, 1e-8),
                            Check::new("S_vs_cos2", r.s_residual, 1e-8),
                            Check::new("J_relative", r.j_residual, 1e-8),
                        ],
                    )
                }
                Err(err) => CaseResult::failed(i, format!("{lab} N_start={}", model.degree()), err),
            }
        })
        .collect();
    SuiteReport::from_cases(name, results)
}

/// The constraint sets the projection solver handles, paired with the
/// report field each one produces.
pub fn constraint_set(kind: usize, n: usize, x: &[Complex64], y: &[Complex64]) -> (&'static str, Vec<Constraint>) {
    let ev = Functional::eval(n);
    match kind % 6 {
        0 => ("I0", vec![Constraint::one(ev)]),
        1 => ("I1_X", vec![Constraint::zero(ev), Constraint::one(Functional::directional(x))]),
        2 => (
            "I1_X_given_Y",
            vec![
                Constraint::zero(ev),
                Constraint::zero(Functional::directional(y)),
                Constraint::one(Functional::directional(x)),
            ],
        ),
        3 => {
            let mut cons = vec![Constraint::zero(ev)];
            cons.extend((0..n - 1).map(|k| Constraint::zero(Functional::partial(n, k))));
            cons.push(Constraint::one(Functional::partial(n, n - 1)));
            ("I1_flag_last", cons)
        }
        4 => {
            let mut cons = vec![Constraint::zero(ev)];
            cons.extend((0..n).map(|k| Constraint::zero(Functional::partial(n, k))));
            cons.push(Constraint::one(Functional::second(x, y)));
            ("I2_XY", cons)
        }
        _ => {
            // X ∥ Y: infeasible, both routes must give +∞.
            let x2: Vec<Complex64> = y.iter().map(|z| z * Complex64::new(2.0, -1.0)).collect();
            (
                "I1_parallel",
                vec![
                    Constraint::zero(ev),
                    Constraint::zero(Functional::directional(y)),
                    Constraint::one(Functional::directional(&x2)),
                ],
            )
        }
    }
}

fn projection_value(
    model: &BergmanModel,
    kind: usize,
    p: &[Complex64],
    x: &[Complex64],
    y: &[Complex64],
) -> Result<f64> {
    let report: MinIntegralReport = match kind % 6 {
        5 => {
            let x2: Vec<Complex64> = y.iter().map(|z| z * Complex64::new(2.0, -1.0)).collect();
            model.min_integrals(p, &x2, y)?
        }
        _ => model.min_integrals(p, x, y)?,
    };
    Ok(match kind % 6 {
        0 => report.i0,
        1 => report.i1_x,
        2 | 5 => report.i1_x_given_y,
        3 => *report.i1_flag.last().expect("n >= 1"),
        _ => report.i2_xy,
    })
}

/// Projection solver against the least-norm oracle on seeded constraint sets.
pub fn oracle_suite(config: &ModelConfig, seed: u64, cases: usize) -> SuiteReport {
    let name = "oracle";
    let model = match BergmanModel::build(config) {
        Ok(m) => m,
        Err(err) => return SuiteReport::from_cases(name, vec![CaseResult::failed(0, "model".into(), err)]),
    };
    let n = model.dim();
    let results: Vec<CaseResult> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let p = point_in_domain(&mut rng, &config.domain, 0.4);
            let x = unit_sphere(&mut rng, n);
            let y = unit_sphere(&mut rng, n);
            let (what, cons) = constraint_set(i, n, &x, &y);
            let lab = format!("{what} {}", label(&p, &x, &y));
            let run = || -> Result<Check> {
                let a = projection_value(&model, i, &p, &x, &y)?;
                let b = min_integral_oracle(&model, &p, &cons)?;
                let residual = if a.is_infinite() && b.is_infinite() {
                    0.0
                } else if a.is_infinite() || b.is_infinite() {
                    f64::INFINITY
                } else {
                    rel(a, b)
                };
                Ok(Check::new(what, residual, 1e-8))
            };
            match run() {
                Ok(c) => CaseResult::new(i, lab, vec![c]),
                Err(err) => CaseResult::failed(i, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases(name, results)
}

/// Minimum integrals of the unit disc at the origin and `H` recomputed from them.
pub fn golden_values_suite() -> SuiteReport {
    let one = [Complex64::new(1.0, 0.0)];
    let origin = [Complex64::new(0.0, 0.0)];
    let run = || -> Result<Vec<Check>> {
        let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, 1).with_degree(10))?;
        let r = model.min_integrals(&origin, &one, &one)?;
        let h = 2.0 - r.i1_x * r.i1_x / (r.i2_xy * r.i0);
        let closed = ball_min_integrals_origin(1.0, 1, 1, &one, &one)?;
        Ok(vec![
            Check::new("I0", (r.i0 - PI).abs(), 1e-9),
            Check::new("I1", (r.i1_x - PI / 2.0).abs(), 1e-9),
            Check::new("I2", (r.i2_xy - PI / 12.0).abs(), 1e-9),
            Check::new("H_from_I", (h + 1.0).abs(), 1e-12),
            Check::new("closed_form_I0", (closed.i0 - PI).abs(), 1e-12),
            Check::new("closed_form_I1", (closed.i1_x - PI / 2.0).abs(), 1e-12),
            Check::new("closed_form_I2", (closed.i2_xy - PI / 12.0).abs(), 1e-12),
        ])
    };
    let case = match run() {
        Ok(c) => CaseResult::new(0, "ball r=1 m=1 n=1 at 0".into(), c),
        Err(err) => CaseResult::failed(0, "ball r=1 m=1 n=1 at 0".into(), err),
    };
    SuiteReport::from_cases("golden-values", vec![case])
}

/// Every minimum integral at 0 is non-decreasing from `𝔹_r` to `𝔹_1`,
/// `r ∈ {0.5, 0.8, 0.9}`, with Kähler–Einstein weights of levels 1 and 2.
pub fn monotonicity_suite(seed: u64, directions: usize) -> SuiteReport {
    let mut jobs = Vec::new();
    for n in [1usize, 2] {
        for m in [1u32, 2] {
            for r in [0.5, 0.8, 0.9] {
                for d in 0..directions {
                    jobs.push((n, m, r, d));
                }
            }
        }
    }
    let results: Vec<CaseResult> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(n, m, r, d))| {
            let mut rng = case_rng(seed, idx as u64);
            let x = unit_sphere(&mut rng, n);
            let y = if n == 1 { x.clone() } else { unit_sphere(&mut rng, n) };
            let lab = format!("n={n} m={m} r={r} dir={d} X={} Y={}", fmt_vec(&x), fmt_vec(&y));
            let run = || -> Result<Vec<Check>> {
                let origin = zeros(n);
                let small =
                    BergmanModel::build(&ModelConfig::ball(n, r, m).with_degree(4))?.min_integrals(&origin, &x, &y)?;
                let big = BergmanModel::build(&ModelConfig::ball(n, 1.0, m).with_degree(4))?
                    .min_integrals(&origin, &x, &y)?;
                let mut pairs = vec![
                    ("I0", small.i0, big.i0),
                    ("I1_X", small.i1_x, big.i1_x),
                    ("I1_Y", small.i1_y, big.i1_y),
                    ("I2_XY", small.i2_xy, big.i2_xy),
                ];
                if small.i1_x_given_y.is_finite() {
                    pairs.push(("I1_X_given_Y", small.i1_x_given_y, big.i1_x_given_y));
                }
                for (k, (&a, &b)) in small.i1_flag.iter().zip(&big.i1_flag).enumerate() {
                    pairs.push((["I1_flag_1", "I1_flag_2"][k.min(1)], a, b));
                }
                Ok(pairs.into_iter().map(|(name, a, b)| Check::holds(name, a <= b * (1.0 + 1e-14))).collect())
            };
            match run() {
                Ok(c) => CaseResult::new(idx, lab, c),
                Err(err) => CaseResult::failed(idx, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases("monotonicity", results)
}

/// Kernel transformation formula and invariance of `B` under automorphisms
/// `F_a` of the unit ball, `|a| ≤ 0.3`, `|z| ≤ 0.4`.
pub fn transformation_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut jobs = Vec::new();
    for n in [1usize, 2] {
        for m in [1u32, 2] {
            for i in 0..cases {
                jobs.push((n, m, i));
            }
        }
    }
    let results: Vec<CaseResult> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(n, m, i))| {
            let mut rng = case_rng(seed, idx as u64);
            let ball = DomainSpec::ball(n, 1.0);
            let a = point_in_domain(&mut rng, &ball, 0.3);
            let z = point_in_domain(&mut rng, &ball, 0.4);
            let x = unit_sphere(&mut rng, n);
            let y = unit_sphere(&mut rng, n);
            let lab = format!("n={n} m={m} case={i} a={} {}", fmt_vec(&a), label(&z, &x, &y));
            match transformation_case(n, m, &a, &z, &x, &y) {
                Ok(c) => CaseResult::new(idx, lab, c),
                Err(err) => CaseResult::failed(idx, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases("transformation", results)
}

fn transformation_case(
    n: usize,
    m: u32,
    a: &[Complex64],
    z: &[Complex64],
    x: &[Complex64],
    y: &[Complex64],
) -> Result<Vec<Check>> {
    let f = BallAutomorphism::new(a)?;
    let fz = f.apply(z)?;
    let det2m = f.det_jacobian(z)?.norm_sqr().powi(m as i32);
    let closed = BallClosedForms::new(1.0, m, n)?;
    let closed_res = rel(closed.kernel(&fz)? * det2m, closed.kernel(z)?);

    let model = BergmanModel::build(&ModelConfig::ball(n, 1.0, m).with_degree(60))?;
    let kz = converge(&model, |md| Ok(md.kernel_jet(z)?.k()))?;
    let kfz = converge(&model, |md| Ok(md.kernel_jet(&fz)?.k()))?;
    let series_res = rel(kfz.value * det2m, kz.value);

    let fx = f.push_forward(z, x)?;
    let fy = f.push_forward(z, y)?;
    let b_here = converge(&model, |md| report_from_jet(&md.kernel_jet(z)?, m, x, y))?;
    let b_there = converge(&model, |md| report_from_jet(&md.kernel_jet(&fz)?, m, &fx, &fy))?;

    let back = f.inverse(&fz)?;
    let inv_res = back.iter().zip(z).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
    let phi = f.involution(&f.involution(z)?)?;
    let invol_res = phi.iter().zip(z).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);

    Ok(vec![
        Check::new("kernel_closed_form", closed_res, 1e-10),
        Check::new("kernel_series", series_res, 1e-6),
        Check::new("B_invariance", (b_here.value.b - b_there.value.b).abs(), 1e-6),
        Check::new("inverse", inv_res, 1e-12),
        Check::new("involution", invol_res, 1e-12),
    ])
}

fn unit_ball_value(r: &CurvatureReport, m: u32, n: usize) -> f64 {
    r.b + (1.0 + r.cos2) / (f64::from(m) * (n as f64 + 1.0))
}

/// The ellipsoid `|z₁/ρ|⁴ + |z₂/ρ|² < 1` with `ρ² = 0.8`.
///
/// It contains `𝔹_ρ` and is contained in `𝔹_1`, so its squeezing number at
/// the centre is at least `ρ ≈ 0.894`, and it is not biholomorphic to a ball.
pub fn pinched_ellipsoid() -> ModelConfig {
    let rho = 0.8f64.sqrt();
    ModelConfig::ellipsoid(vec![2.0, 1.0], vec![rho, rho])
}

/// Squeezing-number intervals: on the unit ball (`s = 1`) the combination
/// vanishes at seeded points and directions; at the centre of
/// [`pinched_ellipsoid`] (`s ≥ 0.8`) it lies in the interval.
pub fn squeezing_suite(seed: u64, cases: usize) -> SuiteReport {
    let ell_cfg = pinched_ellipsoid().with_degree(12);
    let ell = BergmanModel::build(&ell_cfg);
    let mut jobs = Vec::new();
    for n in [1usize, 2] {
        for m in [1u32, 2] {
            for i in 0..cases {
                jobs.push((Some((n, m)), i));
            }
        }
    }
    for i in 0..cases {
        jobs.push((None, i));
    }
    let results: Vec<CaseResult> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(ball, i))| {
            let mut rng = case_rng(seed, idx as u64);
            match ball {
                Some((n, m)) => {
                    let p = point_in_domain(&mut rng, &DomainSpec::ball(n, 1.0), 0.5);
                    let x = unit_sphere(&mut rng, n);
                    let y = unit_sphere(&mut rng, n);
                    let lab = format!("ball n={n} m={m} case={i} {}", label(&p, &x, &y));
                    let run = || -> Result<Vec<Check>> {
                        let model = BergmanModel::build(&ModelConfig::ball(n, 1.0, m).with_degree(20))?;
                        let rep = converge(&model, |md| md.curvature_bisectional(&p, &x, &y))?.value;
                        let s = SqueezingBound::exact_ball();
                        let b = theorem61_bounds(&s, m, n, rep.cos2, rep.b);
                        let h = theorem61_holomorphic_bounds(&s, m, n, rep.h);
                        Ok(vec![
                            Check::new("ball_value_zero", unit_ball_value(&rep, m, n).abs(), 1e-6),
                            Check::holds("ball_interval_degenerate", b.lower == 0.0 && b.upper == 0.0),
                            Check::holds("ball_B_contained", b.contained),
                            Check::holds("ball_H_contained", h.contained),
                        ])
                    };
                    match run() {
                        Ok(c) => CaseResult::new(idx, lab, c),
                        Err(err) => CaseResult::failed(idx, lab, err),
                    }
                }
                None => {
                    let x = unit_sphere(&mut rng, 2);
                    let y = unit_sphere(&mut rng, 2);
                    let origin = zeros(2);
                    let lab = format!("ellipsoid case={i} {}", label(&origin, &x, &y));
                    let run = || -> Result<Vec<Check>> {
                        let model = ell.as_ref().map_err(|e| Error::InvalidConfig(e.to_string()))?;
                        let rep = model.curvature_bisectional(&origin, &x, &y)?;
                        let s = SqueezingBound::inclusion(0.8, 1.0)?;
                        let b = theorem61_bounds(&s, 1, 2, rep.cos2, rep.b);
                        let h = theorem61_holomorphic_bounds(&s, 1, 2, rep.h);
                        Ok(vec![
                            Check::holds("ellipsoid_B_contained", b.contained),
                            Check::holds("ellipsoid_H_contained", h.contained),
                        ])
                    };
                    match run() {
                        Ok(c) => CaseResult::new(idx, lab, c),
                        Err(err) => CaseResult::failed(idx, lab, err),
                    }
                }
            }
        })
        .collect();
    SuiteReport::from_cases("squeezing", results)
}

/// Measured inputs of the inclusion sandwiches at the centre of a model.
pub fn sandwich_input(model: &BergmanModel, x: &[Complex64], y: &[Complex64]) -> Result<SandwichInput> {
    let origin = zeros(model.dim());
    let mi = model.min_integrals(&origin, x, y)?;
    Ok(SandwichInput {
        x_norm2_g: mi.x_norm2_g,
        x_norm2: x.iter().map(|z| z.norm_sqr()).sum(),
        s: mi.s,
        t: mi.t,
        cos2_euclid: euclid_cos2(x, y),
        j: mi.j,
        j_tilde: mi.j_tilde,
    })
}

/// The five inclusion sandwiches for [`pinched_ellipsoid`] between `𝔹_0.8` and `𝔹_1`.
pub fn sandwich_suite(seed: u64, directions: usize) -> SuiteReport {
    let cfg = pinched_ellipsoid().with_degree(4);
    let model = match BergmanModel::build(&cfg) {
        Ok(m) => m,
        Err(err) => return SuiteReport::from_cases("sandwich", vec![CaseResult::failed(0, "model".into(), err)]),
    };
    let results: Vec<CaseResult> = (0..directions)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let x = unit_sphere(&mut rng, 2);
            let y = unit_sphere(&mut rng, 2);
            let lab = format!("X={} Y={}", fmt_vec(&x), fmt_vec(&y));
            let run = || -> Result<Vec<Check>> {
                let input = sandwich_input(&model, &x, &y)?;
                let rep = lemma55_sandwich(0.8, 1.0, 1, 2, &input)?;
                Ok(rep.entries.iter().map(|e| Check::holds(e.quantity.clone(), e.contained)).collect())
            };
            match run() {
                Ok(c) => CaseResult::new(i, lab, c),
                Err(err) => CaseResult::failed(i, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases("sandwich", results)
}

/// `J̃(m) = C_m^{1/m} (n+1)ⁿ` for `n = 1`, `m = 1..=m_max`.
pub fn jtilde_sequence(n: usize, m_max: u32) -> Vec<(u32, f64)> {
    (1..=m_max).map(|m| (m, BallClosedForms { r: 1.0, m, n }.j_tilde())).collect()
}

/// Level trend on the ball: `J̃(m)` for `n = 1` must increase monotonically
/// on `m = 2..50` with `|J̃(50) − 1| < 0.06`, and the series Ricci curvature
/// at the origin equals `−1/m` for `m ≤ 5`.
pub fn trend_suite() -> SuiteReport {
    let seq = jtilde_sequence(1, 50);
    let tail: Vec<f64> = seq.iter().filter(|(m, _)| *m >= 2).map(|(_, v)| *v).collect();
    let violations: Vec<String> = seq
        .windows(2)
        .filter(|w| w[0].0 >= 2 && w[1].1 <= w[0].1)
        .map(|w| format!("J~({})={:.6} <= J~({})={:.6}", w[1].0, w[1].1, w[0].0, w[0].1))
        .collect();
    let last = *tail.last().expect("non-empty");
    let closed_vs_formula: f64 = seq
        .iter()
        .map(|&(m, v)| rel(v, (2.0 * PI / (2.0 * f64::from(m) - 1.0)).powf(1.0 / f64::from(m))))
        .fold(0.0, f64::max);
    let mut cases = vec![CaseResult::new(
        0,
        format!("J~(m), n=1, m=2..50; first={:.6} last={last:.6}; decreases: {}", tail[0], violations.len()),
        vec![
            Check::new("Jtilde_monotone_violations", violations.len() as f64, 0.0),
            Check::new("Jtilde_50_distance_to_1", (last - 1.0).abs(), 0.06),
            Check::new("Jtilde_matches_2pi_formula", closed_vs_formula, 1e-12),
        ],
    )];
    for m in 1..=5u32 {
        let lab = format!("ricci at 0, ball n=1 m={m}");
        let run = || -> Result<Vec<Check>> {
            let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, m).with_degree(4))?;
            let ric = model.ricci(&[Complex64::new(0.0, 0.0)], &[Complex64::new(1.0, 0.0)])?;
            Ok(vec![
                Check::new("ricci", (ric + 1.0 / f64::from(m)).abs(), 1e-8),
                Check::new("normalized_ricci", (f64::from(m) * ric + 1.0).abs(), 1e-8),
            ])
        };
        cases.push(match run() {
            Ok(c) => CaseResult::new(m as usize, lab, c),
            Err(err) => CaseResult::failed(m as usize, lab, err),
        });
    }
    SuiteReport::from_cases("trend", cases)
}

/// `C(0;X)² ≤ |X|²_{g(0)}` on balls, with ratio exactly `1/(m(n+1))`.
pub fn hahn_lu_suite() -> SuiteReport {
    let mut jobs = Vec::new();
    for n in [1usize, 2, 3] {
        for m in [1u32, 2, 3] {
            for r in [0.5, 1.0, 2.0] {
                jobs.push((n, m, r));
            }
        }
    }
    let results: Vec<CaseResult> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(n, m, r))| {
            let lab = format!("n={n} m={m} r={r}");
            let run = || -> Result<Vec<Check>> {
                let model = BergmanModel::build(&ModelConfig::ball(n, r, m).with_degree(4))?;
                let g = model.metric(&zeros(n))?;
                let mut checks = Vec::new();
                for j in 0..n {
                    let x = e(n, j);
                    let car = caratheodory_origin(r, &x)?;
                    let g2 = g.norm2(&x);
                    let ratio = car * car / g2;
                    checks.push(Check::holds("inequality", car * car <= g2));
                    checks.push(Check::new("ratio", (ratio - 1.0 / (f64::from(m) * (n as f64 + 1.0))).abs(), 1e-10));
                }
                Ok(checks)
            };
            match run() {
                Ok(c) => CaseResult::new(idx, lab, c),
                Err(err) => CaseResult::failed(idx, lab, err),
            }
        })
        .collect();
    SuiteReport::from_cases("hahn-lu", results)
}

/// `C_m^{1/m}` for the given `n`, `m = 1..=m_max`.
pub fn cm_root_sequence(n: usize, m_max: u32) -> Vec<(u32, f64)> {
    (1..=m_max).map(|m| (m, cm_constant(m, n).powf(1.0 / f64::from(m)))).collect()
}
