//! Squared weighted norms `‖z^α‖²_{Ω,μ}` of monomials.
//!
//! On a Reinhardt domain with a weight that depends only on the moduli the
//! monomials are mutually orthogonal, so these moments are all that is needed
//! to write down an orthonormal basis `z^α / ‖z^α‖`.
//!
//! Closed forms are used on the ball (Forelli–Rudin integrals
//! `∫_{𝔹ⁿ} |z^α|² (1−|z|²)^s dλ = πⁿ α! Γ(s+1) / Γ(n+s+|α|+1)`, rescaled to
//! radius `r`) and on the unweighted polydisc. Everything else goes through
//! polar reduction `∫_Ω |z^α|² w dλ = (2π)ⁿ ∫ Π t_j^{2α_j+1} w(t) dt` and
//! adaptive quadrature.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{DomainSpec, ModelConfig, WeightKind, WeightSpec};
use crate::error::{Error, Result};
use crate::multiindex::{multiindex_enumerate, MultiIndex};
use crate::quadrature::adaptive_radial;
use crate::special::{ln_factorial, ln_gamma_ratio};

/// Moments below this are rejected rather than allowed to go subnormal.
pub const UNDERFLOW_LIMIT: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Quadrature,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::Quadrature => "quadrature",
        }
    }
}

/// One exported row of a moment table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub alpha: MultiIndex,
    pub value: f64,
    pub provenance: Provenance,
}

/// `ln` of the ball moment with weight `(1 − |z|²/r²)^s`.
fn ln_ball_moment(alpha: &MultiIndex, n: usize, r: f64, s: f64) -> f64 {
    let nf = n as f64;
    let deg = f64::from(alpha.degree());
    let ln_alpha_fact: f64 = alpha.entries().iter().map(|&a| ln_factorial(a)).sum();
    nf * PI.ln() + ln_alpha_fact + ln_gamma_ratio(s + 1.0, nf + s + deg + 1.0) + (2.0 * deg + 2.0 * nf) * r.ln()
}

/// Closed-form moment, or `None` when this domain/weight pair has none.
///
/// Supported pairs: ball × {unweighted, KE weight of the same ball, radial
/// power}, and unweighted polydisc.
pub fn moment_closed_form(alpha: &MultiIndex, domain: &DomainSpec, weight: &WeightSpec) -> Option<f64> {
    if alpha.dim() != domain.dim() {
        return None;
    }
    match (domain, &weight.kind) {
        (DomainSpec::Ball { radius, dim }, WeightKind::Unweighted) => {
            Some(ln_ball_moment(alpha, *dim, *radius, 0.0).exp())
        }
        (DomainSpec::Ball { radius, dim }, WeightKind::BallKe { radius: wr }) => {
            if weight.level == 1 {
                return Some(ln_ball_moment(alpha, *dim, *radius, 0.0).exp());
            }
            if (wr - radius).abs() > 1e-15 * radius {
                return None;
            }
            let nf = *dim as f64;
            let m1 = f64::from(weight.level - 1);
            let prefactor = -m1 * nf * ((nf + 1.0) / (radius * radius)).ln();
            Some((prefactor + ln_ball_moment(alpha, *dim, *radius, m1 * (nf + 1.0))).exp())
        }
        (DomainSpec::Ball { radius, dim }, WeightKind::RadialPower { exponent }) => {
            Some(ln_ball_moment(alpha, *dim, *radius, *exponent).exp())
        }
        (DomainSpec::Polydisc { radii }, WeightKind::Unweighted) => {
            let ln: f64 = alpha
                .entries()
                .iter()
                .zip(radii)
                .map(|(&a, r)| {
                    let a = f64::from(a);
                    PI.ln() + (2.0 * a + 2.0) * r.ln() - (a + 1.0).ln()
                })
                .sum();
            Some(ln.exp())
        }
        _ => None,
    }
}

/// Moment by polar reduction and adaptive Gauss–Legendre quadrature.
pub fn moment_quadrature(
    alpha: &MultiIndex,
    domain: &DomainSpec,
    weight: &WeightSpec,
    config: &ModelConfig,
) -> Result<f64> {
    if config.quadrature_points < 8 {
        return Err(Error::InvalidConfig("quadrature_points must be >= 8".into()));
    }
    let exps: Vec<i32> = alpha.entries().iter().map(|&a| 2 * a as i32 + 1).collect();
    let integrand = |t: &[f64]| -> f64 {
        let mono: f64 = t.iter().zip(&exps).map(|(x, &e)| x.powi(e)).product();
        mono * weight.density(domain, t)
    };
    let est = adaptive_radial(domain, config.quadrature_points, config.tolerance, &integrand);
    if !est.converged {
        return Err(Error::NonConvergent { alpha: alpha.entries().to_vec(), nodes: est.nodes });
    }
    Ok((2.0 * PI).powi(domain.dim() as i32) * est.value)
}

fn check_moment(alpha: &MultiIndex, value: f64) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::BadMoment { alpha: alpha.entries().to_vec(), value });
    }
    if value < UNDERFLOW_LIMIT {
        return Err(Error::Underflow { alpha: alpha.entries().to_vec(), value });
    }
    Ok(value)
}

fn compute_entry(alpha: MultiIndex, config: &ModelConfig) -> Result<MomentEntry> {
    let (value, provenance) = match moment_closed_form(&alpha, &config.domain, &config.weight) {
        Some(v) => (v, Provenance::ClosedForm),
        None => (moment_quadrature(&alpha, &config.domain, &config.weight, config)?, Provenance::Quadrature),
    };
    let value = check_moment(&alpha, value)?;
    Ok(MomentEntry { alpha, value, provenance })
}

/// Moments for every `|α| ≤ N`, in graded-lex order.
#[derive(Clone, Debug)]
pub struct MomentTable {
    config: ModelConfig,
    degree: u32,
    entries: Vec<MomentEntry>,
    index: HashMap<MultiIndex, usize>,
}

impl MomentTable {
    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MomentEntry] {
        &self.entries
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<f64> {
        self.index.get(alpha).map(|&i| self.entries[i].value)
    }

    /// Table for a larger degree, recomputing only the new entries.
    pub fn extended(&self, degree: u32) -> Result<MomentTable> {
        if degree <= self.degree {
            return Ok(self.truncated(degree));
        }
        let n = self.config.dim();
        let new: Vec<MultiIndex> = multiindex_enumerate(n, degree).into_iter().skip(self.entries.len()).collect();
        let fresh = compute_entries(new, &self.config)?;
        let mut entries = self.entries.clone();
        entries.extend(fresh);
        Ok(Self::from_entries(self.config.clone(), degree, entries))
    }

    /// Prefix of the table up to `degree`.
    pub fn truncated(&self, degree: u32) -> MomentTable {
        let entries: Vec<MomentEntry> =
            self.entries.iter().take_while(|e| e.alpha.degree() <= degree).cloned().collect();
        Self::from_entries(self.config.clone(), degree.min(self.degree), entries)
    }

    fn from_entries(mut config: ModelConfig, degree: u32, entries: Vec<MomentEntry>) -> Self {
        config.truncation_degree = degree;
        let index = entries.iter().enumerate().map(|(i, e)| (e.alpha.clone(), i)).collect();
        Self { config, degree, entries, index }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.entries).expect("moment entries serialise")
    }
}

fn compute_entries(alphas: Vec<MultiIndex>, config: &ModelConfig) -> Result<Vec<MomentEntry>> {
    alphas.into_par_iter().map(|a| compute_entry(a, config)).collect()
}

/// Moments for all `|α| ≤ config.truncation_degree`; closed form preferred.
pub fn build_moment_table(config: &ModelConfig) -> Result<MomentTable> {
    config.domain.validate()?;
    config.weight.validate(&config.domain)?;
    let alphas = multiindex_enumerate(config.dim(), config.truncation_degree);
    let entries = compute_entries(alphas, config)?;
    Ok(MomentTable::from_entries(config.clone(), config.truncation_degree, entries))
}
