//! Bisectional, holomorphic sectional and Ricci curvature, and the canonical
//! functions `J = det G / K`, `J̃ = det(G/m) / K^{1/m}`.
//!
//! The curvature tensor comes straight from the kernel jets:
//!
//! ```text
//! R(X,X̄,Y,Ȳ) = |X|²|Y|² + |⟨X,Y⟩|²
//!              − (K K_{XX̄YȲ} − K_{XY} K_{X̄Ȳ}) / K²
//!              + K⁻⁴ Σ_{r,s} g^{r̄s} a_r conj(a_s),   a_r = K K_{XYr̄} − K_{XY} K_r̄
//! ```
//!
//! and `B(X,Y) = R(X,X̄,Y,Ȳ) / (|X|²_g |Y|²_g)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::is_zero;
use crate::error::{Error, Result};
use crate::kernel::{BergmanModel, Functional, KernelJet};
use crate::metric::MetricData;

/// Below this `1 − cos²` the two directions are treated as parallel.
pub const PARALLEL_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub ricci: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "J_tilde")]
    pub j_tilde: f64,
    pub cos2: f64,
    #[serde(rename = "N_used")]
    pub n_used: Option<u32>,
}

/// `cos²` of the metric angle between `x` and `y`, and `S = 1 − cos²`
/// (exactly `(1, 0)` for parallel directions).
pub fn angle(metric: &MetricData, x: &[Complex64], y: &[Complex64]) -> (f64, f64) {
    let xy = metric.inner(x, y).norm_sqr();
    let cos2 = (xy / (metric.norm2(x) * metric.norm2(y))).min(1.0);
    if 1.0 - cos2 < PARALLEL_THRESHOLD {
        (1.0, 0.0)
    } else {
        (cos2, 1.0 - cos2)
    }
}

/// `R(X,X̄,Y,Ȳ)`; the imaginary part is round-off.
pub fn curvature_tensor(jet: &KernelJet, metric: &MetricData, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let n = jet.dim();
    let k = jet.k();
    let eval = Functional::eval(n);
    let fxy = Functional::second(x, y);

    let gx = metric.norm2(x);
    let gy = metric.norm2(y);
    let gxy = metric.inner(x, y).norm_sqr();

    let k_xxyy = jet.pair(&fxy, &fxy);
    let k_xy = jet.pair(&fxy, &eval);
    let fourth = (k_xxyy * k - k_xy * k_xy.conj()) / (k * k);

    let a: Vec<Complex64> = (0..n)
        .map(|r| {
            let dr = Functional::partial(n, r);
            jet.pair(&fxy, &dr) * k - k_xy * jet.pair(&eval, &dr)
        })
        .collect();
    let mut third = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for s in 0..n {
            third += metric.g_inv[(r, s)] * a[r] * a[s].conj();
        }
    }
    let k2 = k * k;
    Complex64::new(gx * gy + gxy, 0.0) - fourth + third / (k2 * k2)
}

fn check_vector(v: &[Complex64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if is_zero(v) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `B(X,Y)` from a jet and its metric.
pub fn bisectional(jet: &KernelJet, metric: &MetricData, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
    check_vector(x, jet.dim())?;
    check_vector(y, jet.dim())?;
    let r = curvature_tensor(jet, metric, x, y);
    Ok(r.re / (metric.norm2(x) * metric.norm2(y)))
}

/// `Ric(X) = Σ_i B(X, e_i)` over a `g`-orthonormal frame whose first vector is `X/|X|_g`.
pub fn ricci_from_jet(jet: &KernelJet, metric: &MetricData, x: &[Complex64]) -> Result<f64> {
    let n = jet.dim();
    check_vector(x, n)?;
    let frame = orthonormal_frame(metric, x);
    frame.iter().map(|e| bisectional(jet, metric, x, e)).sum()
}

/// Gram–Schmidt in `g` on `x, e_1, …, e_n`, dropping dependent vectors.
pub fn orthonormal_frame(metric: &MetricData, x: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = metric.dim();
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let candidates = std::iter::once(x.to_vec()).chain((0..n).map(|j| {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        e
    }));
    for mut v in candidates {
        if frame.len() == n {
            break;
        }
        let scale = metric.norm2(&v).sqrt();
        for _ in 0..2 {
            for e in &frame {
                let c = metric.inner(&v, e);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= c * ei;
                }
            }
        }
        let len = metric.norm2(&v).sqrt();
        if len > 1e-8 * scale {
            frame.push(v.into_iter().map(|z| z / len).collect());
        }
    }
    frame
}

/// `(J, J̃)` from a jet and its metric.
pub fn canonical_from_jet(jet: &KernelJet, metric: &MetricData, level: u32) -> (f64, f64) {
    let k = jet.k();
    let m = f64::from(level);
    let n = jet.dim() as i32;
    let j = metric.det / k;
    let j_tilde = metric.det / (m.powi(n) * k.powf(1.0 / m));
    (j, j_tilde)
}

/// Full report from one jet.
pub fn report_from_jet(jet: &KernelJet, level: u32, x: &[Complex64], y: &[Complex64]) -> Result<CurvatureReport> {
    let metric = MetricData::from_jet(jet)?;
    let b = bisectional(jet, &metric, x, y)?;
    let h = bisectional(jet, &metric, x, x)?;
    let (cos2, s) = angle(&metric, x, y);
    let ricci = ricci_from_jet(jet, &metric, x)?;
    let (j, j_tilde) = canonical_from_jet(jet, &metric, level);
    Ok(CurvatureReport { b, h, s, t: 2.0 - s - b, ricci, j, j_tilde, cos2, n_used: Some(jet.degree()) })
}

impl BergmanModel {
    pub fn curvature_bisectional(&self, p: &[Complex64], x: &[Complex64], y: &[Complex64]) -> Result<CurvatureReport> {
        report_from_jet(&self.kernel_jet(p)?, self.level(), x, y)
    }

    pub fn ricci(&self, p: &[Complex64], x: &[Complex64]) -> Result<f64> {
        let jet = self.kernel_jet(p)?;
        let metric = MetricData::from_jet(&jet)?;
        ricci_from_jet(&jet, &metric, x)
    }

    /// `(J, J̃)` at `p`.
    pub fn canonical_functions(&self, p: &[Complex64]) -> Result<(f64, f64)> {
        let jet = self.kernel_jet(p)?;
        let metric = MetricData::from_jet(&jet)?;
        Ok(canonical_from_jet(&jet, &metric, self.level()))
    }
}
