//! Adaptive choice of the truncation degree.
//!
//! A quantity is evaluated at degree `N` and `N + 10`; it is accepted once
//! every scalar it reports moves by less than `tol · max(|v|, floor)`.
//! Otherwise `N` is raised by 10 until the cap of [`ModelConfig::degree_cap`]
//! is reached.
//!
//! [`ModelConfig::degree_cap`]: crate::ModelConfig::degree_cap

use serde::Serialize;

use crate::curvature::CurvatureReport;
use crate::error::{Error, Result};
use crate::kernel::{BergmanModel, KernelJet};
use crate::min_integrals::MinIntegralReport;

pub const DEGREE_STEP: u32 = 10;

/// Something whose convergence in the truncation degree can be judged.
pub trait Converging {
    /// Scalars to compare, each with an absolute floor for the relative test.
    fn fingerprint(&self) -> Vec<(f64, f64)>;
}

/// A value accepted at truncation degree `degree`.
#[derive(Clone, Debug, Serialize)]
pub struct Converged<T> {
    pub value: T,
    pub degree: u32,
}

fn max_change(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&(x, floor), &(y, _))| {
            if x.is_infinite() && y.is_infinite() && x.signum() == y.signum() {
                0.0
            } else {
                (x - y).abs() / y.abs().max(floor)
            }
        })
        .fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) })
}

/// Runs `eval` at increasing degrees starting from the model's own until two
/// consecutive results agree to the model's tolerance.
pub fn converge<T, F>(model: &BergmanModel, eval: F) -> Result<Converged<T>>
where
    T: Converging,
    F: Fn(&BergmanModel) -> Result<T>,
{
    let tol = model.config().tolerance;
    let cap = model.config().degree_cap();
    let mut degree = model.degree();
    let mut current = model.clone();
    let mut value = eval(&current)?;
    let mut last_change = f64::INFINITY;
    while degree + DEGREE_STEP <= cap {
        let next_model = current.with_degree(degree + DEGREE_STEP)?;
        let next = eval(&next_model)?;
        last_change = max_change(&value.fingerprint(), &next.fingerprint());
        degree += DEGREE_STEP;
        current = next_model;
        value = next;
        if last_change < tol {
            return Ok(Converged { value, degree });
        }
    }
    Err(Error::TruncationInsufficient { cap, change: last_change })
}

impl Converging for f64 {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        vec![(*self, f64::MIN_POSITIVE)]
    }
}

impl Converging for (f64, f64) {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        vec![(self.0, f64::MIN_POSITIVE), (self.1, f64::MIN_POSITIVE)]
    }
}

impl Converging for KernelJet {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        // Jets at a Reinhardt centre vanish off the diagonal; compare on the scale of K.
        let floor = self.k() * 1e-12;
        let idx = self.indices();
        let mut out = Vec::with_capacity(2 * idx.len() * idx.len());
        for a in idx {
            for b in idx {
                let v = self.get(a, b);
                let scale = floor.max(v.norm());
                out.push((v.re, scale));
                out.push((v.im, scale));
            }
        }
        out
    }
}

impl Converging for CurvatureReport {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        vec![
            (self.b, 1.0),
            (self.h, 1.0),
            (self.s, 1.0),
            (self.t, 1.0),
            (self.ricci, 1.0),
            (self.j, f64::MIN_POSITIVE),
            (self.j_tilde, f64::MIN_POSITIVE),
            (self.cos2, 1.0),
        ]
    }
}

impl Converging for MinIntegralReport {
    fn fingerprint(&self) -> Vec<(f64, f64)> {
        let tiny = f64::MIN_POSITIVE;
        let mut v = vec![
            (self.i0, tiny),
            (self.i1_x, tiny),
            (self.i1_y, tiny),
            (self.i1_x_given_y, tiny),
            (self.i1_y_given_x, tiny),
            (self.i2_xy, tiny),
            (self.s, 1.0),
            (self.t, 1.0),
            (self.b, 1.0),
        ];
        v.extend(self.i1_flag.iter().map(|&x| (x, tiny)));
        v
    }
}
