//! Closed forms on the ball `𝔹ⁿ_r` with its Kähler–Einstein weight of level `m`,
//! ball automorphisms, and the curvature bounds in terms of squeezing numbers.
//!
//! With `ρ = r² − |z|²` and
//! `C_m = πⁿ / (n+1)^{(m−1)n} · ((m−1)(n+1))! / (m(n+1)−1)!`:
//!
//! ```text
//! K     = r^{2m} / (C_m ρ^{m(n+1)})
//! g_ij̄  = m(n+1) [δ_ij/ρ + z̄_i z_j/ρ²]
//! det G = (m(n+1))ⁿ r² / ρ^{n+1}
//! J     = C_m (m(n+1))ⁿ ρ^{(m−1)(n+1)} / r^{2(m−1)}
//! J̃     = C_m^{1/m} (n+1)ⁿ
//! ```

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureReport;
use crate::domain::is_zero;
use crate::error::{Error, Result};
use crate::min_integrals::MinIntegralReport;

/// `ln C_m`, summing the logarithms of the `n` factors of the factorial ratio.
pub fn ln_cm(m: u32, n: usize) -> f64 {
    assert!(m >= 1 && n >= 1, "C_m needs m >= 1 and n >= 1");
    let (m, n1) = (u64::from(m), n as u64 + 1);
    let nf = n as f64;
    let lo = (m - 1) * n1 + 1;
    let hi = m * n1 - 1;
    let ratio: f64 = (lo..=hi).map(|k| (k as f64).ln()).sum();
    nf * PI.ln() - (m - 1) as f64 * nf * (n1 as f64).ln() - ratio
}

/// The normalising constant `C_m` of the ball kernel (`C_1 = πⁿ/n!`).
pub fn cm_constant(m: u32, n: usize) -> f64 {
    ln_cm(m, n).exp()
}

/// `D_m = (m(n+1)+1) / (m(n+1))`.
pub fn d_m(m: u32, n: usize) -> f64 {
    let q = f64::from(m) * (n as f64 + 1.0);
    (q + 1.0) / q
}

fn euclid2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn euclid_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Euclidean `cos²` of the angle between two vectors.
pub fn euclid_cos2(x: &[Complex64], y: &[Complex64]) -> f64 {
    (euclid_inner(x, y).norm_sqr() / (euclid2(x) * euclid2(y))).min(1.0)
}

fn check_vectors(n: usize, vs: &[&[Complex64]]) -> Result<()> {
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        if is_zero(v) {
            return Err(Error::ZeroVector);
        }
    }
    Ok(())
}

/// Closed-form evaluators for `(𝔹ⁿ_r, μ^m_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallClosedForms {
    pub r: f64,
    pub m: u32,
    pub n: usize,
}

impl BallClosedForms {
    pub fn new(r: f64, m: u32, n: usize) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) || m == 0 || n == 0 {
            return Err(Error::InvalidConfig(format!(
                "ball closed forms need r > 0, m >= 1, n >= 1 (got {r}, {m}, {n})"
            )));
        }
        Ok(Self { r, m, n })
    }

    fn q(&self) -> f64 {
        f64::from(self.m) * (self.n as f64 + 1.0)
    }

    pub fn cm(&self) -> f64 {
        cm_constant(self.m, self.n)
    }

    /// `ρ = r² − |z|²`, checking `z` is inside.
    fn rho(&self, z: &[Complex64]) -> Result<f64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: z.len() });
        }
        let z2 = euclid2(z);
        let rho = self.r * self.r - z2;
        if rho <= 0.0 {
            return Err(Error::OutsideDomain { gauge: z2.sqrt() / self.r });
        }
        Ok(rho)
    }

    pub fn kernel(&self, z: &[Complex64]) -> Result<f64> {
        let rho = self.rho(z)?;
        Ok((2.0 * f64::from(self.m) * self.r.ln() - ln_cm(self.m, self.n) - self.q() * rho.ln()).exp())
    }

    pub fn metric(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>> {
        let rho = self.rho(z)?;
        let q = self.q();
        Ok(DMatrix::from_fn(self.n, self.n, |i, j| {
            let delta = if i == j { 1.0 / rho } else { 0.0 };
            (z[i].conj() * z[j] / (rho * rho) + delta) * q
        }))
    }

    pub fn det_metric(&self, z: &[Complex64]) -> Result<f64> {
        let rho = self.rho(z)?;
        let n = self.n as f64;
        Ok((n * self.q().ln() + 2.0 * self.r.ln() - (n + 1.0) * rho.ln()).exp())
    }

    pub fn j(&self, z: &[Complex64]) -> Result<f64> {
        let rho = self.rho(z)?;
        let (n, m1) = (self.n as f64, f64::from(self.m - 1));
        Ok((ln_cm(self.m, self.n) + n * self.q().ln() + m1 * (n + 1.0) * rho.ln() - 2.0 * m1 * self.r.ln()).exp())
    }

    pub fn j_tilde(&self) -> f64 {
        let n = self.n as f64;
        (ln_cm(self.m, self.n) / f64::from(self.m) + n * (n + 1.0).ln()).exp()
    }

    /// `⟨X,Y⟩_{g(0)} = m(n+1)/r² ⟨X,Y⟩`.
    pub fn inner_origin(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        euclid_inner(x, y) * (self.q() / (self.r * self.r))
    }

    pub fn bisectional_origin(&self, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
        check_vectors(self.n, &[x, y])?;
        Ok(-(1.0 + euclid_cos2(x, y)) / self.q())
    }

    pub fn holomorphic_origin(&self) -> f64 {
        -2.0 / self.q()
    }

    pub fn s_origin(&self, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
        check_vectors(self.n, &[x, y])?;
        Ok(1.0 - euclid_cos2(x, y))
    }

    pub fn t_origin(&self, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
        check_vectors(self.n, &[x, y])?;
        Ok(d_m(self.m, self.n) * (1.0 + euclid_cos2(x, y)))
    }

    pub fn ricci_origin(&self) -> f64 {
        -1.0 / f64::from(self.m)
    }

    /// Everything a [`CurvatureReport`] holds, at the origin.
    pub fn curvature_origin(&self, x: &[Complex64], y: &[Complex64]) -> Result<CurvatureReport> {
        let zero = vec![Complex64::new(0.0, 0.0); self.n];
        let cos2 = euclid_cos2(x, y);
        let s = if 1.0 - cos2 < crate::curvature::PARALLEL_THRESHOLD { 0.0 } else { 1.0 - cos2 };
        Ok(CurvatureReport {
            b: self.bisectional_origin(x, y)?,
            h: self.holomorphic_origin(),
            s,
            t: self.t_origin(x, y)?,
            ricci: self.ricci_origin(),
            j: self.j(&zero)?,
            j_tilde: self.j_tilde(),
            cos2: if s == 0.0 { 1.0 } else { cos2 },
            n_used: None,
        })
    }
}

/// The five minimum integrals of the ball at the origin, in closed form.
pub fn ball_min_integrals_origin(
    r: f64,
    m: u32,
    n: usize,
    x: &[Complex64],
    y: &[Complex64],
) -> Result<MinIntegralReport> {
    let ball = BallClosedForms::new(r, m, n)?;
    check_vectors(n, &[x, y])?;
    let c = ball.cm();
    let q = ball.q();
    let mn = f64::from(m) * n as f64;
    let (x2, y2) = (euclid2(x), euclid2(y));
    let cos2 = euclid_cos2(x, y);
    let parallel = 1.0 - cos2 < crate::curvature::PARALLEL_THRESHOLD;
    let i0 = c * r.powf(2.0 * mn);
    let flag = c * r.powf(2.0 * (mn + 1.0)) / q;
    let i1_x = flag / x2;
    let i1_y = flag / y2;
    let (i1_xy, i1_yx) =
        if parallel { (f64::INFINITY, f64::INFINITY) } else { (i1_x / (1.0 - cos2), i1_y / (1.0 - cos2)) };
    let i2 = c * r.powf(2.0 * (mn + 2.0)) / (q * (q + 1.0) * x2 * y2 * (1.0 + cos2));
    Ok(MinIntegralReport::assemble(
        i0,
        i1_x,
        i1_y,
        i1_xy,
        i1_yx,
        vec![flag; n],
        i2,
        if parallel { 1.0 } else { cos2 },
        m,
        None,
    ))
}

/// Automorphism `F_a` of the unit ball with `F_a(a) = 0` and `F_0 = id`:
/// `F_a(z) = (A z − a) / (1 − ⟨z,a⟩)`, `A = s I + (1−s) a a^H/|a|²`, `s = √(1−|a|²)`.
///
/// `F_a = −φ_a` where `φ_a` is the involution of the ball exchanging `0` and `a`
/// (see [`BallAutomorphism::involution`]); the inverse is `w ↦ φ_a(−w)`.
#[derive(Clone, Debug)]
pub struct BallAutomorphism {
    a: Vec<Complex64>,
    mat: DMatrix<Complex64>,
}

impl BallAutomorphism {
    pub fn new(a: &[Complex64]) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidConfig("automorphism needs n >= 1".into()));
        }
        let a2 = euclid2(a);
        if a2 >= 1.0 {
            return Err(Error::OutsideDomain { gauge: a2.sqrt() });
        }
        let s = (1.0 - a2).sqrt();
        let mat = if a2 == 0.0 {
            DMatrix::identity(n, n)
        } else {
            let av = DVector::from_column_slice(a);
            DMatrix::identity(n, n) * Complex64::new(s, 0.0)
                + (&av * av.adjoint()) * Complex64::new((1.0 - s) / a2, 0.0)
        };
        Ok(Self { a: a.to_vec(), mat })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn center(&self) -> &[Complex64] {
        &self.a
    }

    fn denom(&self, z: &[Complex64]) -> Complex64 {
        Complex64::new(1.0, 0.0) - euclid_inner(z, &self.a)
    }

    fn az(&self, z: &[Complex64]) -> DVector<Complex64> {
        &self.mat * DVector::from_column_slice(z)
    }

    fn check(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: z.len() });
        }
        let z2 = euclid2(z);
        if z2 >= 1.0 {
            return Err(Error::OutsideDomain { gauge: z2.sqrt() });
        }
        Ok(())
    }

    /// `F_a(z)`.
    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(z)?;
        let d = self.denom(z);
        Ok(self.az(z).iter().zip(&self.a).map(|(w, a)| (w - a) / d).collect())
    }

    /// `φ_a(z) = (a − A z) / (1 − ⟨z,a⟩)`, an involution.
    pub fn involution(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(self.apply(z)?.into_iter().map(|w| -w).collect())
    }

    /// `F_a^{-1}(w) = φ_a(−w)`.
    pub fn inverse(&self, w: &[Complex64]) -> Result<Vec<Complex64>> {
        let neg: Vec<Complex64> = w.iter().map(|z| -z).collect();
        self.involution(&neg)
    }

    /// Holomorphic Jacobian `∂F_i/∂z_j = A_ij/D + (Az − a)_i ā_j / D²`.
    pub fn jacobian(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>> {
        self.check(z)?;
        let d = self.denom(z);
        let num: Vec<Complex64> = self.az(z).iter().zip(&self.a).map(|(w, a)| w - a).collect();
        Ok(DMatrix::from_fn(self.dim(), self.dim(), |i, j| self.mat[(i, j)] / d + num[i] * self.a[j].conj() / (d * d)))
    }

    pub fn det_jacobian(&self, z: &[Complex64]) -> Result<Complex64> {
        Ok(self.jacobian(z)?.determinant())
    }

    /// `dF_z(X)`.
    pub fn push_forward(&self, z: &[Complex64], x: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok((self.jacobian(z)? * DVector::from_column_slice(x)).iter().cloned().collect())
    }
}

/// Carathéodory length of `X` at the centre of `𝔹ⁿ_r`: `|X| / r`.
pub fn caratheodory_origin(r: f64, x: &[Complex64]) -> Result<f64> {
    if is_zero(x) {
        return Err(Error::ZeroVector);
    }
    Ok(euclid2(x).sqrt() / r)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SqueezingProvenance {
    ExactBall,
    /// From `𝔹_r ⊂ Ω ⊂ 𝔹_R` about the point: `s ≥ r/R`.
    Inclusion {
        r: f64,
        big_r: f64,
    },
    User,
}

/// A lower bound for the squeezing number at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingBound {
    pub s_lower: f64,
    pub provenance: SqueezingProvenance,
}

impl SqueezingBound {
    pub fn exact_ball() -> Self {
        Self { s_lower: 1.0, provenance: SqueezingProvenance::ExactBall }
    }

    pub fn inclusion(r: f64, big_r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= big_r) {
            return Err(Error::InvalidConfig(format!("inclusion needs 0 < r <= R, got r={r}, R={big_r}")));
        }
        Ok(Self { s_lower: r / big_r, provenance: SqueezingProvenance::Inclusion { r, big_r } })
    }

    pub fn user(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidConfig(format!("squeezing bound must lie in (0,1], got {s}")));
        }
        Ok(Self { s_lower: s, provenance: SqueezingProvenance::User })
    }
}

/// Containment of a measured curvature combination in its squeezing interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub s_lower: f64,
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    pub contained: bool,
    #[serde(rename = "D_m")]
    pub d_m: f64,
    pub note: String,
}

fn containment_slack(value: f64) -> f64 {
    1e-9 + 1e-6 * value.abs()
}

fn bounds_note(s: &SqueezingBound) -> String {
    match s.provenance {
        SqueezingProvenance::ExactBall => "exact squeezing number of the ball".into(),
        SqueezingProvenance::Inclusion { .. } => {
            "interval evaluated at an inclusion lower bound for s; the true interval is narrower".into()
        }
        SqueezingProvenance::User => "interval evaluated at a user supplied lower bound for s".into(),
    }
}

/// Interval for `B + (1 + cos²_g)/(m(n+1))`:
/// `[D_m(1 − s^{−2(mn+1)})(2 + s^{−2(mn+1)}), 2D_m(1 − s^{4(mn+1)})]`.
pub fn theorem61_bounds(s: &SqueezingBound, m: u32, n: usize, cos2: f64, measured_b: f64) -> BoundsReport {
    let e = f64::from(m) * n as f64 + 1.0;
    let d = d_m(m, n);
    let sv = s.s_lower;
    let inv = sv.powf(-2.0 * e);
    let lower = d * (1.0 - inv) * (2.0 + inv);
    let upper = 2.0 * d * (1.0 - sv.powf(4.0 * e));
    let value = measured_b + (1.0 + cos2) / (f64::from(m) * (n as f64 + 1.0));
    let eps = containment_slack(value);
    BoundsReport {
        s_lower: sv,
        lower,
        upper,
        value,
        contained: lower - eps <= value && value <= upper + eps,
        d_m: d,
        note: bounds_note(s),
    }
}

/// Interval for `H + 2/(m(n+1))`: `[2D_m(1 − s^{−4(mn+1)}), 2D_m(1 − s^{4(mn+1)})]`.
pub fn theorem61_holomorphic_bounds(s: &SqueezingBound, m: u32, n: usize, measured_h: f64) -> BoundsReport {
    let e = f64::from(m) * n as f64 + 1.0;
    let d = d_m(m, n);
    let sv = s.s_lower;
    let lower = 2.0 * d * (1.0 - sv.powf(-4.0 * e));
    let upper = 2.0 * d * (1.0 - sv.powf(4.0 * e));
    let value = measured_h + 2.0 / (f64::from(m) * (n as f64 + 1.0));
    let eps = containment_slack(value);
    BoundsReport {
        s_lower: sv,
        lower,
        upper,
        value,
        contained: lower - eps <= value && value <= upper + eps,
        d_m: d,
        note: bounds_note(s),
    }
}

/// Writes the interval endpoints for every `(s, m, n)` in the grid as CSV.
pub fn write_bounds_grid<W: Write>(out: W, s_values: &[f64], m_values: &[u32], n_values: &[usize]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["s", "m", "n", "D_m", "lower", "upper", "holomorphic_lower", "holomorphic_upper"])?;
    for &s in s_values {
        let bound = SqueezingBound::user(s)?;
        for &m in m_values {
            for &n in n_values {
                let b = theorem61_bounds(&bound, m, n, 0.0, 0.0);
                let h = theorem61_holomorphic_bounds(&bound, m, n, 0.0);
                w.write_record([
                    crate::report::fmt_f64(s),
                    m.to_string(),
                    n.to_string(),
                    crate::report::fmt_f64(b.d_m),
                    crate::report::fmt_f64(b.lower),
                    crate::report::fmt_f64(b.upper),
                    crate::report::fmt_f64(h.lower),
                    crate::report::fmt_f64(h.upper),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Quantities measured at the centre of a domain squeezed between two balls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichInput {
    /// `|X|²_g` at 0.
    pub x_norm2_g: f64,
    /// Euclidean `|X|²`.
    pub x_norm2: f64,
    /// Measured `S(0;X,Y)` and `T(0;X,Y)`.
    pub s: f64,
    pub t: f64,
    /// Euclidean `cos²` of `X, Y` (fixes the ball reference values).
    pub cos2_euclid: f64,
    pub j: f64,
    pub j_tilde: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichEntry {
    pub quantity: String,
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    /// `min(value − lower, upper − value)`; negative when violated.
    pub slack: f64,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub entries: Vec<SandwichEntry>,
    pub all_contained: bool,
}

fn entry(quantity: &str, lower: f64, upper: f64, value: f64) -> SandwichEntry {
    let eps = 1e-9 + 1e-8 * value.abs();
    let slack = (value - lower).min(upper - value);
    SandwichEntry { quantity: quantity.into(), lower, upper, value, slack, contained: slack >= -eps }
}

/// Checks the five inclusion sandwiches (metric length, `S` ratio, `T` ratio,
/// `J`, `J̃`) at the centre of a domain with `𝔹_r ⊂ Ω ⊂ 𝔹_R`.
///
/// The `S` ratio is skipped when `X ∥ Y`, where both sides vanish.
pub fn lemma55_sandwich(r: f64, big_r: f64, m: u32, n: usize, measured: &SandwichInput) -> Result<SandwichReport> {
    if !(r > 0.0 && r <= big_r) {
        return Err(Error::InvalidConfig(format!("sandwich needs 0 < r <= R, got r={r}, R={big_r}")));
    }
    let (mf, nf) = (f64::from(m), n as f64);
    let q = mf * (nf + 1.0);
    let mn = mf * nf;
    let ratio = r / big_r;
    let c = ln_cm(m, n);
    let mut entries = Vec::with_capacity(5);

    entries.push(entry(
        "metric_length",
        ratio.powf(2.0 * mn) * q * measured.x_norm2 / (big_r * big_r),
        ratio.powf(-2.0 * mn) * q * measured.x_norm2 / (r * r),
        measured.x_norm2_g,
    ));
    let s_ball = 1.0 - measured.cos2_euclid;
    if s_ball > crate::curvature::PARALLEL_THRESHOLD {
        entries.push(entry(
            "S_ratio",
            ratio.powf(2.0 * (mn + 1.0)),
            ratio.powf(-2.0 * (mn + 1.0)),
            measured.s / s_ball,
        ));
    }
    let t_ball = d_m(m, n) * (1.0 + measured.cos2_euclid);
    entries.push(entry("T_ratio", ratio.powf(4.0 * (mn + 1.0)), ratio.powf(-4.0 * (mn + 1.0)), measured.t / t_ball));

    let ln_base = c + nf * q.ln();
    let (lr, lbr) = (r.ln(), big_r.ln());
    entries.push(entry(
        "J",
        (ln_base + 2.0 * mn * (nf + 1.0) * lr - 2.0 * nf * (mn + 1.0) * lbr).exp(),
        (ln_base + 2.0 * mn * (nf + 1.0) * lbr - 2.0 * nf * (mn + 1.0) * lr).exp(),
        measured.j,
    ));
    let ln_base_t = c / mf + nf * (nf + 1.0).ln();
    let e = 2.0 * mn * (nf + 1.0 / mf);
    entries.push(entry(
        "J_tilde",
        (ln_base_t + e * lr - 2.0 * nf * (mn + 1.0) * lbr).exp(),
        (ln_base_t + e * lbr - 2.0 * nf * (mn + 1.0) * lr).exp(),
        measured.j_tilde,
    ));
    let all_contained = entries.iter().all(|e| e.contained);
    Ok(SandwichReport { r, big_r, entries, all_contained })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cm_values() {
        assert!((cm_constant(1, 1) - PI).abs() < 1e-15);
        assert!((cm_constant(1, 3) - PI.powi(3) / 6.0).abs() < 1e-13);
        assert!((cm_constant(2, 1) - PI / 6.0).abs() < 1e-15);
        // m(n+1) = 300 stays finite in log space
        assert!(ln_cm(150, 1).is_finite());
    }

    #[test]
    fn origin_values() {
        let b = BallClosedForms::new(1.0, 1, 1).unwrap();
        let z = [c(0.0, 0.0)];
        assert!((b.kernel(&z).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((b.metric(&z).unwrap()[(0, 0)].re - 2.0).abs() < 1e-15);
        assert!((b.j(&z).unwrap() - 2.0 * PI).abs() < 1e-14);

        let b2 = BallClosedForms::new(1.0, 1, 2).unwrap();
        let (e1, e2) = ([c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((b2.bisectional_origin(&e1, &e2).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b2.s_origin(&e1, &e2).unwrap(), 1.0);
        assert!((b2.t_origin(&e1, &e2).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        for (r, m, n) in [(0.5, 2, 1), (3.0, 1, 3)] {
            let b = BallClosedForms::new(r, m, n).unwrap();
            assert!((b.holomorphic_origin() + 2.0 / (f64::from(m) * (n as f64 + 1.0))).abs() < 1e-15);
        }
    }

    #[test]
    fn det_formula_matches_matrix() {
        let b = BallClosedForms::new(1.3, 3, 2).unwrap();
        let z = [c(0.4, -0.2), c(0.1, 0.6)];
        let det = b.metric(&z).unwrap().determinant();
        assert!((det.re / b.det_metric(&z).unwrap() - 1.0).abs() < 1e-12);
        assert!(det.im.abs() < 1e-9 * det.re);
    }

    #[test]
    fn disc_origin_values() {
        let one = [c(1.0, 0.0)];
        let rep = ball_min_integrals_origin(1.0, 1, 1, &one, &one).unwrap();
        assert!((rep.i0 - PI).abs() < 1e-14);
        assert!((rep.i1_x - PI / 2.0).abs() < 1e-14);
        assert!((rep.i2_xy - PI / 12.0).abs() < 1e-15);
        assert!(rep.i1_x_given_y.is_infinite());
        let rep = ball_min_integrals_origin(1.0, 2, 1, &one, &one).unwrap();
        assert!((rep.i1_x - PI / 24.0).abs() < 1e-15);
    }

    #[test]
    fn automorphism_basics() {
        let f = BallAutomorphism::new(&[c(0.5, 0.0)]).unwrap();
        assert!(f.apply(&[c(0.5, 0.0)]).unwrap()[0].norm() < 1e-16);
        let id = BallAutomorphism::new(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let z = [c(0.1, 0.2), c(-0.3, 0.1)];
        assert_eq!(id.apply(&z).unwrap(), z.to_vec());
        assert!((id.det_jacobian(&z).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(BallAutomorphism::new(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn bounds_examples() {
        let r = theorem61_bounds(&SqueezingBound::exact_ball(), 1, 1, 0.3, -1.3 / 2.0);
        assert_eq!((r.lower, r.upper), (0.0, 0.0));
        assert!(r.contained);
        let r = theorem61_bounds(&SqueezingBound::user(0.9).unwrap(), 1, 1, 0.0, 0.0);
        assert!((r.lower + 2.770_823).abs() < 1e-6, "{}", r.lower);
        assert!((r.upper - 3.0 * (1.0 - 0.9_f64.powi(8))).abs() < 1e-14);
    }

    #[test]
    fn degenerate_sandwich_is_tight() {
        let b = BallClosedForms::new(0.9, 1, 2).unwrap();
        let zero = [c(0.0, 0.0), c(0.0, 0.0)];
        let (x, y) = ([c(1.0, 0.0), c(0.5, 0.5)], [c(0.2, 0.0), c(1.0, -0.3)]);
        let input = SandwichInput {
            x_norm2_g: b.inner_origin(&x, &x).re,
            x_norm2: euclid2(&x),
            s: b.s_origin(&x, &y).unwrap(),
            t: b.t_origin(&x, &y).unwrap(),
            cos2_euclid: euclid_cos2(&x, &y),
            j: b.j(&zero).unwrap(),
            j_tilde: b.j_tilde(),
        };
        let rep = lemma55_sandwich(0.9, 0.9, 1, 2, &input).unwrap();
        assert!(rep.all_contained);
        for e in &rep.entries {
            assert!((e.upper - e.lower).abs() <= 1e-12 * e.upper.abs().max(1.0), "{e:?}");
        }
    }
}
