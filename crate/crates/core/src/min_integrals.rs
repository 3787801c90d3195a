//! Bergman's minimum integrals in the truncated space.
//!
//! Every constraint `ℓ(u) = value` with `ℓ` a point-evaluation or derivative
//! functional at `p` is represented by the vector `h_ℓ` with coordinates
//! `conj(ℓ(u^α))`, so that `ℓ(u) = ⟨u, h_ℓ⟩`. The least-norm `u` with
//! `ℓ_i(u) = 0` for `i < k` and `ℓ_k(u) = 1` is then a multiple of the
//! component of `h_k` orthogonal to `h_1, …, h_{k−1}`, and the minimum is
//! `1 / ‖P h_k‖²`. Projections are done by modified Gram–Schmidt.
//!
//! [`min_integral_oracle`] solves the same problems a second way, through the
//! Gram matrix of the constraint rows, and is used to cross-check.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::curvature::{report_from_jet, PARALLEL_THRESHOLD};
use crate::domain::is_zero;
use crate::error::{Error, Result};
use crate::kernel::{BergmanModel, Functional};

/// Representation vectors of the functionals used by the minimum integrals.
#[derive(Clone, Debug)]
pub struct RepresentationVectors {
    /// `u ↦ u(p)`.
    pub h0: DVector<Complex64>,
    /// `u ↦ ∂_k u(p)`, `k = 1..n`.
    pub h: Vec<DVector<Complex64>>,
    pub h_x: DVector<Complex64>,
    pub h_y: DVector<Complex64>,
    /// `u ↦ ∂_X ∂_Y u(p)`.
    pub h_xy: DVector<Complex64>,
}

fn check_direction(v: &[Complex64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if is_zero(v) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

impl BergmanModel {
    /// Coordinates of `h_ℓ`, i.e. `conj(ℓ(u^α))`.
    pub fn representation_vector(&self, p: &[Complex64], f: &Functional) -> Result<DVector<Complex64>> {
        Ok(self.functional_values(p, f)?.map(|z| z.conj()))
    }

    pub fn representation_vectors(
        &self,
        p: &[Complex64],
        x: &[Complex64],
        y: &[Complex64],
    ) -> Result<RepresentationVectors> {
        let n = self.dim();
        check_direction(x, n)?;
        check_direction(y, n)?;
        Ok(RepresentationVectors {
            h0: self.representation_vector(p, &Functional::eval(n))?,
            h: (0..n).map(|k| self.representation_vector(p, &Functional::partial(n, k))).collect::<Result<_>>()?,
            h_x: self.representation_vector(p, &Functional::directional(x))?,
            h_y: self.representation_vector(p, &Functional::directional(y))?,
            h_xy: self.representation_vector(p, &Functional::second(x, y))?,
        })
    }
}

/// Orthonormal basis of a span, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Projector {
    basis: Vec<DVector<Complex64>>,
}

impl Projector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Component of `v` orthogonal to the current span (two MGS passes).
    pub fn residual(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.basis {
                let c = q.dotc(&r);
                r.axpy(-c, q, Complex64::new(1.0, 0.0));
            }
        }
        r
    }

    /// Adds `v` to the span; returns `false` (and leaves the span alone) if
    /// `v` is numerically dependent on it.
    pub fn push(&mut self, v: &DVector<Complex64>) -> bool {
        let r = self.residual(v);
        let len = r.norm();
        if len <= 1e-13 * v.norm() || len == 0.0 {
            return false;
        }
        self.basis.push(r / Complex64::new(len, 0.0));
        true
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// `min ‖u‖²` subject to `⟨u, z⟩ = 0` for every `z` in `zero` and `⟨u, target⟩ = 1`.
pub fn projected_min_integral(zero: &[&DVector<Complex64>], target: &DVector<Complex64>) -> f64 {
    let mut proj = Projector::new();
    for v in zero {
        proj.push(v);
    }
    let r2 = proj.residual(target).norm_squared();
    if r2 <= 1e-26 * target.norm_squared() {
        f64::INFINITY
    } else {
        1.0 / r2
    }
}

fn ser_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() && *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

/// Minimum integrals at a point together with the quantities derived from them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinIntegralReport {
    #[serde(rename = "I0")]
    pub i0: f64,
    #[serde(rename = "I1_X")]
    pub i1_x: f64,
    #[serde(rename = "I1_Y")]
    pub i1_y: f64,
    #[serde(rename = "I1_X_given_Y", serialize_with = "ser_extended")]
    pub i1_x_given_y: f64,
    #[serde(rename = "I1_Y_given_X", serialize_with = "ser_extended")]
    pub i1_y_given_x: f64,
    /// `I¹(∂_k | <k)` for `k = 1..n`.
    #[serde(rename = "I1_flag")]
    pub i1_flag: Vec<f64>,
    #[serde(rename = "I2_XY")]
    pub i2_xy: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "B")]
    pub b: f64,
    /// `|X|²_g = I⁰ / I¹(X)`.
    pub x_norm2_g: f64,
    /// `K(p) = 1 / I⁰`.
    #[serde(rename = "K")]
    pub k: f64,
    /// `J = (I⁰)^{n+1} / Π_k I¹(∂_k|<k)`.
    #[serde(rename = "J")]
    pub j: f64,
    /// `J̃ = (I⁰)^{n+1/m} / (mⁿ Π_k I¹(∂_k|<k))`.
    #[serde(rename = "J_tilde")]
    pub j_tilde: f64,
    pub cos2: f64,
    #[serde(rename = "N_used")]
    pub n_used: Option<u32>,
}

impl MinIntegralReport {
    /// Fills in the derived fields from the raw minimum integrals.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        i0: f64,
        i1_x: f64,
        i1_y: f64,
        i1_x_given_y: f64,
        i1_y_given_x: f64,
        i1_flag: Vec<f64>,
        i2_xy: f64,
        cos2: f64,
        level: u32,
        n_used: Option<u32>,
    ) -> Self {
        let n = i1_flag.len() as f64;
        let m = f64::from(level);
        let s = if i1_x_given_y.is_infinite() { 0.0 } else { i1_x / i1_x_given_y };
        let t = i1_x * i1_y / (i2_xy * i0);
        let flag_ln: f64 = i1_flag.iter().map(|v| v.ln()).sum();
        let j = ((n + 1.0) * i0.ln() - flag_ln).exp();
        let j_tilde = ((n + 1.0 / m) * i0.ln() - n * m.ln() - flag_ln).exp();
        Self {
            i0,
            i1_x,
            i1_y,
            i1_x_given_y,
            i1_y_given_x,
            i1_flag,
            i2_xy,
            s,
            t,
            b: 2.0 - s - t,
            x_norm2_g: i0 / i1_x,
            k: 1.0 / i0,
            j,
            j_tilde,
            cos2,
            n_used,
        }
    }

    /// `H(X) = 2 − I¹(X)² / (I²(X,X) I⁰)` when the report was made with `Y = X`.
    pub fn holomorphic_sectional(&self) -> f64 {
        2.0 - self.i1_x * self.i1_x / (self.i2_xy * self.i0)
    }
}

/// All minimum integrals from a set of representation vectors.
pub fn min_integrals_from_vectors(rv: &RepresentationVectors, level: u32, n_used: Option<u32>) -> MinIntegralReport {
    let i0 = 1.0 / rv.h0.norm_squared();

    let mut p0 = Projector::new();
    p0.push(&rv.h0);
    let hx = p0.residual(&rv.h_x);
    let hy = p0.residual(&rv.h_y);
    let (nx, ny) = (hx.norm_squared(), hy.norm_squared());
    let i1_x = 1.0 / nx;
    let i1_y = 1.0 / ny;
    let cos2 = (hx.dotc(&hy).norm_sqr() / (nx * ny)).min(1.0);
    let parallel = 1.0 - cos2 < PARALLEL_THRESHOLD;
    let (cos2, i1_x_given_y, i1_y_given_x) = if parallel {
        (1.0, f64::INFINITY, f64::INFINITY)
    } else {
        (cos2, projected_min_integral(&[&rv.h0, &rv.h_y], &rv.h_x), projected_min_integral(&[&rv.h0, &rv.h_x], &rv.h_y))
    };

    let mut flag = Vec::with_capacity(rv.h.len());
    let mut proj = p0.clone();
    for hk in &rv.h {
        flag.push(1.0 / proj.residual(hk).norm_squared());
        proj.push(hk);
    }
    let i2_xy = 1.0 / proj.residual(&rv.h_xy).norm_squared();

    MinIntegralReport::assemble(i0, i1_x, i1_y, i1_x_given_y, i1_y_given_x, flag, i2_xy, cos2, level, n_used)
}

impl BergmanModel {
    pub fn min_integrals(&self, p: &[Complex64], x: &[Complex64], y: &[Complex64]) -> Result<MinIntegralReport> {
        let rv = self.representation_vectors(p, x, y)?;
        Ok(min_integrals_from_vectors(&rv, self.level(), Some(self.degree())))
    }
}

/// One interpolation condition `ℓ(u) = target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub functional: Functional,
    pub target: Complex64,
}

impl Constraint {
    pub fn new(functional: Functional, target: Complex64) -> Self {
        Self { functional, target }
    }

    pub fn zero(functional: Functional) -> Self {
        Self::new(functional, Complex64::new(0.0, 0.0))
    }

    pub fn one(functional: Functional) -> Self {
        Self::new(functional, Complex64::new(1.0, 0.0))
    }
}

/// Eigenvalues below this fraction of the largest count as zero.
pub const ORACLE_NULL_THRESHOLD: f64 = 1e-13;
/// A right-hand side with more than this (relative) weight on the null space is infeasible.
pub const ORACLE_FEASIBILITY_THRESHOLD: f64 = 1e-8;
pub const ORACLE_MAX_CONDITION: f64 = 1e12;

/// `min ‖c‖² subject to A c = b`, via `b^H (A A^H)^{-1} b` on the
/// (diagonally equilibrated) constraint Gram matrix.
///
/// Returns `+∞` for inconsistent constraints.
pub fn least_norm(rows: &[DVector<Complex64>], b: &[Complex64]) -> Result<f64> {
    let k = rows.len();
    assert_eq!(k, b.len());
    let gram = DMatrix::from_fn(k, k, |i, j| rows[i].dot(&rows[j].map(|z| z.conj())));
    let d: Vec<f64> = (0..k)
        .map(|i| {
            let g = gram[(i, i)].re;
            if g > 0.0 {
                1.0 / g.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(k, k, |i, j| gram[(i, j)] * (d[i] * d[j]));
    let rhs = DVector::from_iterator(k, b.iter().zip(&d).map(|(z, s)| z * *s));
    let rhs_norm = rhs.norm();
    if rhs_norm == 0.0 {
        return Ok(0.0);
    }
    let eig = scaled.symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    if lmax <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let mut value = 0.0;
    let mut lmin_kept = f64::INFINITY;
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        let proj = v.dotc(&rhs);
        if lam < ORACLE_NULL_THRESHOLD * lmax {
            if proj.norm() > ORACLE_FEASIBILITY_THRESHOLD * rhs_norm {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        lmin_kept = lmin_kept.min(lam);
        value += proj.norm_sqr() / lam;
    }
    let condition = lmax / lmin_kept;
    if condition > ORACLE_MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    Ok(value)
}

/// Independent solver for `inf { ‖u‖² : ℓ_i(u) = target_i }` in the truncated space.
pub fn min_integral_oracle(model: &BergmanModel, p: &[Complex64], constraints: &[Constraint]) -> Result<f64> {
    let rows: Vec<DVector<Complex64>> =
        constraints.iter().map(|c| model.functional_values(p, &c.functional)).collect::<Result<_>>()?;
    let b: Vec<Complex64> = constraints.iter().map(|c| c.target).collect();
    least_norm(&rows, &b)
}

/// Residuals between the curvature-tensor route and the minimum-integral route.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub b_tensor: f64,
    pub b_minint: f64,
    /// `|B_tensor − (2 − S − T)|`.
    pub b_residual: f64,
    /// `|S_minint − (1 − cos²_g)|`.
    pub s_residual: f64,
    /// `|I¹(X)/I¹(X|Y) − I¹(Y)/I¹(Y|X)|`.
    pub s_symmetry_residual: f64,
    /// `|J_minint − J_metric| / J_metric`.
    pub j_residual: f64,
    #[serde(rename = "N_used")]
    pub n_used: u32,
}

impl CrosscheckReport {
    pub fn max_residual(&self) -> f64 {
        self.b_residual.max(self.s_residual).max(self.s_symmetry_residual).max(self.j_residual)
    }
}

pub fn bergman_fuks_crosscheck(
    model: &BergmanModel,
    p: &[Complex64],
    x: &[Complex64],
    y: &[Complex64],
) -> Result<CrosscheckReport> {
    let jet = model.kernel_jet(p)?;
    let tensor = report_from_jet(&jet, model.level(), x, y)?;
    let mi = model.min_integrals(p, x, y)?;
    let s_other = if mi.i1_y_given_x.is_infinite() { 0.0 } else { mi.i1_y / mi.i1_y_given_x };
    Ok(CrosscheckReport {
        b_tensor: tensor.b,
        b_minint: mi.b,
        b_residual: (tensor.b - mi.b).abs(),
        s_residual: (mi.s - tensor.s).abs(),
        s_symmetry_residual: (mi.s - s_other).abs(),
        j_residual: (mi.j - tensor.j).abs() / tensor.j,
        n_used: model.degree(),
    })
}
