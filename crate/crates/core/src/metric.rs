//! The Kähler metric `g_{jk̄} = ∂_j ∂_k̄ log K` of a weighted Bergman kernel.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::domain::is_zero;
use crate::error::{Error, Result};
use crate::kernel::{BergmanModel, Functional, KernelJet};

/// Metric matrix at a point with its inverse and determinant.
#[derive(Clone, Debug)]
pub struct MetricData {
    /// `g[(j,k)] = g_{jk̄}`.
    pub g: DMatrix<Complex64>,
    pub g_inv: DMatrix<Complex64>,
    pub det: f64,
}

impl MetricData {
    /// `g_{jk̄} = (K K_{jk̄} − K_j K_k̄) / K²`, factored by Cholesky.
    pub fn from_jet(jet: &KernelJet) -> Result<Self> {
        let n = jet.dim();
        let k = jet.k();
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        let eval = Functional::eval(n);
        let partials: Vec<Functional> = (0..n).map(|j| Functional::partial(n, j)).collect();
        let first: Vec<Complex64> = partials.iter().map(|d| jet.pair(d, &eval)).collect();
        let g = DMatrix::from_fn(n, n, |i, j| {
            let kij = jet.pair(&partials[i], &partials[j]);
            (kij * k - first[i] * first[j].conj()) / (k * k)
        });
        Self::from_matrix(g)
    }

    /// Wraps a Hermitian matrix, failing if it is not positive definite.
    pub fn from_matrix(g: DMatrix<Complex64>) -> Result<Self> {
        let chol = g.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
        // The complex factorisation takes square roots of whatever pivots it
        // meets, so positivity has to be checked on the diagonal of L.
        let diag = chol.l_dirty().diagonal();
        if !diag.iter().all(|d| d.re > 0.0 && d.im.abs() <= 1e-12 * d.re) {
            return Err(Error::NotPositiveDefinite);
        }
        let det: f64 = diag.iter().map(|d| d.re * d.re).product();
        if !(det > 0.0 && det.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        let g_inv = chol.inverse();
        Ok(Self { g, g_inv, det })
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `⟨X,Y⟩_g = Σ g_{jk̄} X_j conj(Y_k)`.
    pub fn inner(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, xj) in x.iter().enumerate() {
            for (k, yk) in y.iter().enumerate() {
                s += self.g[(j, k)] * xj * yk.conj();
            }
        }
        s
    }

    /// `|X|²_g`.
    pub fn norm2(&self, x: &[Complex64]) -> f64 {
        self.inner(x, x).re
    }
}

/// `⟨X,Y⟩_g` together with `|X|_g` and `|Y|_g`.
pub fn inner_product(metric: &MetricData, x: &[Complex64], y: &[Complex64]) -> Result<(Complex64, f64, f64)> {
    for v in [x, y] {
        if v.len() != metric.dim() {
            return Err(Error::DimensionMismatch { expected: metric.dim(), got: v.len() });
        }
        if is_zero(v) {
            return Err(Error::ZeroVector);
        }
    }
    Ok((metric.inner(x, y), metric.norm2(x).sqrt(), metric.norm2(y).sqrt()))
}

impl BergmanModel {
    /// Metric of the truncated kernel at `p`.
    pub fn metric(&self, p: &[Complex64]) -> Result<MetricData> {
        MetricData::from_jet(&self.kernel_jet(p)?)
    }
}
