//! The truncated weighted Bergman kernel and its derivative jets.
//!
//! With the orthonormal basis `u^α = z^α / √c_α`, `c_α = ‖z^α‖²`, the
//! diagonal kernel is `K(z,z) = Σ_α |z^α|² / c_α` and every mixed derivative
//! is obtained by differentiating term by term:
//!
//! `∂^a ∂̄^b K(p,p) = Σ_α ∂^a z^α(p) · conj(∂^b z^α(p)) / c_α`.
//!
//! All jets with `|a|, |b| ≤ 2` are accumulated at once into a Hermitian
//! matrix indexed by the derivative multi-indices.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::domain::{ModelConfig, SERIES_GUARD};
use crate::error::{Error, Result};
use crate::moments::{build_moment_table, MomentTable};
use crate::multiindex::{multiindex_enumerate, MultiIndex, PowerTable};

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn two_sum(s: f64, c: f64, x: f64) -> (f64, f64) {
    let t = s + x;
    let c = if s.abs() >= x.abs() { c + ((s - t) + x) } else { c + ((x - t) + s) };
    (t, c)
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, self.comp.re, x.re);
        let (im, cim) = two_sum(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// A truncated weighted Bergman space with its monomial orthonormal basis.
#[derive(Clone, Debug)]
pub struct BergmanModel {
    table: MomentTable,
    inv_norm: Vec<f64>,
    derivs: Vec<MultiIndex>,
}

impl BergmanModel {
    pub fn build(config: &ModelConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self::from_table(build_moment_table(config)?))
    }

    fn from_table(table: MomentTable) -> Self {
        let inv_norm = table.entries().iter().map(|e| 1.0 / e.value.sqrt()).collect();
        let derivs = multiindex_enumerate(table.config().dim(), 2);
        Self { table, inv_norm, derivs }
    }

    /// Same space truncated at a different degree; moments already computed are reused.
    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidConfig(format!("truncation degree must be >= 2, got {degree}")));
        }
        Ok(Self::from_table(self.table.extended(degree)?))
    }

    pub fn config(&self) -> &ModelConfig {
        self.table.config()
    }

    pub fn dim(&self) -> usize {
        self.config().dim()
    }

    pub fn level(&self) -> u32 {
        self.config().level()
    }

    pub fn degree(&self) -> u32 {
        self.table.degree()
    }

    pub fn basis(&self) -> impl ExactSizeIterator<Item = &MultiIndex> {
        self.table.entries().iter().map(|e| &e.alpha)
    }

    pub fn basis_len(&self) -> usize {
        self.inv_norm.len()
    }

    pub fn moments(&self) -> &MomentTable {
        &self.table
    }

    /// Derivative multi-indices `|a| ≤ 2` that index a [`KernelJet`].
    pub fn jet_indices(&self) -> &[MultiIndex] {
        &self.derivs
    }

    /// Interior check plus the series guard; returns the gauge of `p`.
    pub fn check_point(&self, p: &[Complex64]) -> Result<f64> {
        let gauge = self.config().domain.check_interior(p)?;
        if gauge > SERIES_GUARD && !self.config().allow_near_boundary {
            return Err(Error::NearBoundary { gauge, limit: SERIES_GUARD });
        }
        Ok(gauge)
    }

    /// All jets `∂^a ∂̄^b K(p,p)` with `|a|, |b| ≤ 2`.
    pub fn kernel_jet(&self, p: &[Complex64]) -> Result<KernelJet> {
        self.check_point(p)?;
        let d = self.derivs.len();
        let powers = PowerTable::new(p, self.degree());
        let mut acc = vec![CompensatedSum::default(); d * (d + 1) / 2];
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        // Highest degree first: the small tail terms are added before the large head.
        for (entry, &w) in self.table.entries().iter().zip(&self.inv_norm).rev() {
            for (slot, a) in v.iter_mut().zip(&self.derivs) {
                *slot = powers.derivative(&entry.alpha, a) * w;
            }
            let mut k = 0;
            for i in 0..d {
                for j in i..d {
                    if v[i] != Complex64::new(0.0, 0.0) && v[j] != Complex64::new(0.0, 0.0) {
                        acc[k].add(v[i] * v[j].conj());
                    }
                    k += 1;
                }
            }
        }
        let mut values = vec![Complex64::new(0.0, 0.0); d * d];
        let mut k = 0;
        for i in 0..d {
            for j in i..d {
                let s = acc[k].value();
                values[i * d + j] = s;
                values[j * d + i] = s.conj();
                k += 1;
            }
        }
        for i in 0..d {
            values[i * d + i].im = 0.0;
        }
        Ok(KernelJet { n: self.dim(), d, derivs: self.derivs.clone(), values, degree: self.degree() })
    }

    /// `ℓ(u^α)` for every basis element, in basis order.
    pub fn functional_values(&self, p: &[Complex64], f: &Functional) -> Result<DVector<Complex64>> {
        self.check_point(p)?;
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: f.dim() });
        }
        let powers = PowerTable::new(p, self.degree());
        let terms: Vec<(&MultiIndex, Complex64)> = self
            .derivs
            .iter()
            .zip(&f.coeffs)
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(a, c)| (a, *c))
            .collect();
        Ok(DVector::from_iterator(
            self.basis_len(),
            self.table.entries().iter().zip(&self.inv_norm).map(|(e, &w)| {
                let s: Complex64 = terms.iter().map(|(a, c)| c * powers.derivative(&e.alpha, a)).sum();
                s * w
            }),
        ))
    }
}

/// A linear functional `u ↦ Σ_{|a|≤2} c_a ∂^a u(p)` on holomorphic functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl Functional {
    fn zero(n: usize) -> (Vec<MultiIndex>, Vec<Complex64>) {
        let derivs = multiindex_enumerate(n, 2);
        let coeffs = vec![Complex64::new(0.0, 0.0); derivs.len()];
        (derivs, coeffs)
    }

    fn position(derivs: &[MultiIndex], a: &MultiIndex) -> usize {
        derivs.iter().position(|d| d == a).expect("derivative index in range")
    }

    /// `u ↦ ∂^a u(p)` for `|a| ≤ 2`.
    pub fn derivative(a: &MultiIndex) -> Self {
        assert!(a.degree() <= 2, "functionals use derivatives of order at most 2");
        let n = a.dim();
        let (derivs, mut coeffs) = Self::zero(n);
        coeffs[Self::position(&derivs, a)] = Complex64::new(1.0, 0.0);
        Self { n, coeffs }
    }

    /// `u ↦ u(p)`.
    pub fn eval(n: usize) -> Self {
        Self::derivative(&MultiIndex::zero(n))
    }

    /// `u ↦ ∂u/∂z_k (p)`, `k` zero-based.
    pub fn partial(n: usize, k: usize) -> Self {
        Self::derivative(&MultiIndex::unit(n, k))
    }

    /// `u ↦ Σ_k X_k ∂_k u(p)`.
    pub fn directional(x: &[Complex64]) -> Self {
        let n = x.len();
        let (derivs, mut coeffs) = Self::zero(n);
        for (k, &xk) in x.iter().enumerate() {
            coeffs[Self::position(&derivs, &MultiIndex::unit(n, k))] += xk;
        }
        Self { n, coeffs }
    }

    /// `u ↦ Σ_{j,k} X_j Y_k ∂_j ∂_k u(p)`.
    pub fn second(x: &[Complex64], y: &[Complex64]) -> Self {
        assert_eq!(x.len(), y.len());
        let n = x.len();
        let (derivs, mut coeffs) = Self::zero(n);
        for (j, &xj) in x.iter().enumerate() {
            for (k, &yk) in y.iter().enumerate() {
                let a = MultiIndex::unit(n, j).plus(&MultiIndex::unit(n, k));
                coeffs[Self::position(&derivs, &a)] += xj * yk;
            }
        }
        Self { n, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficients over the derivative indices `|a| ≤ 2` in graded order.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }
}

/// Mixed derivatives `∂^a ∂̄^b K(p,p)`, `|a|, |b| ≤ 2`, of a truncated kernel.
#[derive(Clone, Debug)]
pub struct KernelJet {
    n: usize,
    d: usize,
    derivs: Vec<MultiIndex>,
    values: Vec<Complex64>,
    degree: u32,
}

impl KernelJet {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Truncation degree the jet was computed at.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.derivs
    }

    /// `∂^a ∂̄^b K(p,p)`.
    pub fn get(&self, a: &MultiIndex, b: &MultiIndex) -> Complex64 {
        let i = self.derivs.iter().position(|d| d == a).expect("holomorphic index |a| <= 2");
        let j = self.derivs.iter().position(|d| d == b).expect("antiholomorphic index |b| <= 2");
        self.values[i * self.d + j]
    }

    /// `K(p,p)`.
    pub fn k(&self) -> f64 {
        self.values[0].re
    }

    /// `Σ_α ℓ₁(u^α) conj(ℓ₂(u^α))`: the jet contracted with two functionals.
    ///
    /// With `ℓ₁ = ∂_X ∂_Y` and `ℓ₂ = ∂_r` this is `K_{XY r̄}`, and so on.
    pub fn pair(&self, l1: &Functional, l2: &Functional) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (i, c1) in l1.coeffs.iter().enumerate() {
            if *c1 == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, c2) in l2.coeffs.iter().enumerate() {
                if *c2 == Complex64::new(0.0, 0.0) {
                    continue;
                }
                s += c1 * c2.conj() * self.values[i * self.d + j];
            }
        }
        s
    }
}
