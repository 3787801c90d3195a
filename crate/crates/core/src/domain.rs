//! Domains, weights and model configuration.
//!
//! All supported domains are bounded complete Reinhardt domains and all
//! weights depend only on the moduli `|z_j|`, so every computation reduces to
//! the radial "shadow" of the domain in `[0, ∞)ⁿ`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strict-interior margin: points must have gauge at most `1 − INTERIOR_MARGIN`.
pub const INTERIOR_MARGIN: f64 = 1e-9;

/// Default refusal radius (as a fraction of the gauge) for series evaluation.
pub const SERIES_GUARD: f64 = 0.95;

pub const DEFAULT_DEGREE_CAP: u32 = 120;

/// Environment variable that caps the truncation degree of adaptive evaluation.
pub const MAX_N_ENV: &str = "BERGMAN_LAB_MAX_N";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    /// `|z| < radius` in `ℂ^dim`.
    Ball { radius: f64, dim: usize },
    /// `|z_j| < radii[j]`.
    Polydisc { radii: Vec<f64> },
    /// `Σ (|z_j| / radii[j])^(2·exponents[j]) < 1`; exponents `1` give the
    /// ordinary ellipsoid.
    DiagonalEllipsoid { exponents: Vec<f64>, radii: Vec<f64> },
}

impl DomainSpec {
    pub fn ball(dim: usize, radius: f64) -> Self {
        DomainSpec::Ball { radius, dim }
    }

    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Ball { dim, .. } => *dim,
            DomainSpec::Polydisc { radii } => radii.len(),
            DomainSpec::DiagonalEllipsoid { radii, .. } => radii.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        match self {
            DomainSpec::Ball { radius, dim } => {
                if *dim == 0 || !positive(*radius) {
                    return Err(Error::InvalidConfig(format!("ball needs n >= 1 and r > 0, got n={dim}, r={radius}")));
                }
            }
            DomainSpec::Polydisc { radii } => {
                if radii.is_empty() || !radii.iter().all(|&r| positive(r)) {
                    return Err(Error::InvalidConfig(format!("polydisc radii must be positive: {radii:?}")));
                }
            }
            DomainSpec::DiagonalEllipsoid { exponents, radii } => {
                if radii.is_empty() || exponents.len() != radii.len() {
                    return Err(Error::InvalidConfig("ellipsoid needs one exponent per radius".into()));
                }
                if !radii.iter().all(|&r| positive(r)) {
                    return Err(Error::InvalidConfig(format!("ellipsoid radii must be positive: {radii:?}")));
                }
                if !exponents.iter().all(|&p| p.is_finite() && p >= 1.0) {
                    return Err(Error::InvalidConfig(format!("ellipsoid exponents must be >= 1: {exponents:?}")));
                }
            }
        }
        Ok(())
    }

    /// Per-axis bound on `|z_j|`, used to normalise radial profiles.
    pub fn axis_bounds(&self) -> Vec<f64> {
        match self {
            DomainSpec::Ball { radius, dim } => vec![*radius; *dim],
            DomainSpec::Polydisc { radii } => radii.clone(),
            DomainSpec::DiagonalEllipsoid { radii, .. } => radii.clone(),
        }
    }

    /// Minkowski functional of the domain evaluated at the moduli `t`:
    /// the `λ ≥ 0` such that `t/λ` lies on the boundary. Interior ⇔ `λ < 1`.
    pub fn gauge(&self, t: &[f64]) -> f64 {
        match self {
            DomainSpec::Ball { radius, .. } => t.iter().map(|x| x * x).sum::<f64>().sqrt() / radius,
            DomainSpec::Polydisc { radii } => t.iter().zip(radii).map(|(x, r)| x / r).fold(0.0, f64::max),
            DomainSpec::DiagonalEllipsoid { exponents, radii } => {
                if exponents.iter().all(|&p| p == 1.0) {
                    return t.iter().zip(radii).map(|(x, a)| (x / a).powi(2)).sum::<f64>().sqrt();
                }
                if t.iter().all(|&x| x == 0.0) {
                    return 0.0;
                }
                // h(λ) = Σ (t_j / (λ a_j))^{2p_j} is decreasing in λ; bisect h(λ) = 1.
                let h = |lam: f64| -> f64 {
                    t.iter().zip(radii).zip(exponents).map(|((x, a), p)| (x / (lam * a)).powf(2.0 * p)).sum()
                };
                let (mut lo, mut hi) = (1e-300_f64, 1.0_f64);
                while h(hi) > 1.0 {
                    hi *= 2.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if h(mid) > 1.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-16 * hi {
                        break;
                    }
                }
                hi
            }
        }
    }

    pub fn gauge_complex(&self, p: &[Complex64]) -> f64 {
        let t: Vec<f64> = p.iter().map(|z| z.norm()).collect();
        self.gauge(&t)
    }

    /// Upper limit of `t_k` in the nested radial integral, given `t_0..t_{k-1}`.
    pub fn radial_upper_limit(&self, k: usize, prefix: &[f64]) -> f64 {
        match self {
            DomainSpec::Ball { radius, .. } => {
                let used: f64 = prefix.iter().map(|x| x * x).sum();
                (radius * radius - used).max(0.0).sqrt()
            }
            DomainSpec::Polydisc { radii } => radii[k],
            DomainSpec::DiagonalEllipsoid { exponents, radii } => {
                let used: f64 = prefix.iter().zip(radii).zip(exponents).map(|((x, a), p)| (x / a).powf(2.0 * p)).sum();
                let rest = (1.0 - used).max(0.0);
                radii[k] * rest.powf(1.0 / (2.0 * exponents[k]))
            }
        }
    }

    /// Radius of the largest centred ball contained in the domain.
    pub fn inner_radius(&self) -> f64 {
        match self {
            DomainSpec::Ball { radius, .. } => *radius,
            DomainSpec::Polydisc { radii } | DomainSpec::DiagonalEllipsoid { radii, .. } => {
                radii.iter().cloned().fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Radius of a centred ball containing the domain. Exact for balls,
    /// polydiscs and ordinary ellipsoids; for higher exponents it is the
    /// bound `sqrt(Σ a_j²)`.
    pub fn outer_radius(&self) -> f64 {
        match self {
            DomainSpec::Ball { radius, .. } => *radius,
            DomainSpec::Polydisc { radii } => radii.iter().map(|r| r * r).sum::<f64>().sqrt(),
            DomainSpec::DiagonalEllipsoid { exponents, radii } => {
                if exponents.iter().all(|&p| p == 1.0) {
                    radii.iter().cloned().fold(0.0, f64::max)
                } else {
                    radii.iter().map(|r| r * r).sum::<f64>().sqrt()
                }
            }
        }
    }

    /// Checks `p` is strictly inside with margin [`INTERIOR_MARGIN`].
    pub fn check_interior(&self, p: &[Complex64]) -> Result<f64> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.len() });
        }
        let gauge = self.gauge_complex(p);
        if gauge.is_nan() || gauge > 1.0 - INTERIOR_MARGIN {
            return Err(Error::OutsideDomain { gauge });
        }
        Ok(gauge)
    }
}

/// A user supplied radial weight profile `ω(t₁/b₁, …, tₙ/bₙ)`, where `b_j`
/// are the per-axis bounds of the domain and `t_j = |z_j|`.
#[derive(Clone)]
pub struct RadialProfile {
    name: String,
    f: Arc<ProfileFn>,
}

type ProfileFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

impl RadialProfile {
    pub fn new(name: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, normalized: &[f64]) -> f64 {
        (self.f)(normalized)
    }
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialProfile({})", self.name)
    }
}

impl PartialEq for RadialProfile {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.f, &other.f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind {
    Unweighted,
    /// Kähler–Einstein weight of the ball of the given radius at the
    /// model level `m`: `((n+1)/R²)^{−(m−1)n} (1 − |z|²/R²)^{(m−1)(n+1)}`.
    BallKe {
        radius: f64,
    },
    /// `(1 − ρ)^s` where `ρ` is the domain's defining function
    /// (`|z|²/r²` on balls, `Σ(|z_j|/a_j)^{2p_j}` on ellipsoids); on a polydisc
    /// the product `Π (1 − |z_j|²/r_j²)^s`.
    RadialPower {
        exponent: f64,
    },
    #[serde(skip)]
    CustomRadial(RadialProfile),
}

/// Weight kind together with the level `m ≥ 1` used by the normalised
/// quantities (`G̃ = G/m`, `J̃`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub level: u32,
}

impl WeightSpec {
    pub fn unweighted() -> Self {
        Self { kind: WeightKind::Unweighted, level: 1 }
    }

    pub fn ball_ke(level: u32, radius: f64) -> Self {
        Self { kind: WeightKind::BallKe { radius }, level }
    }

    pub fn radial_power(exponent: f64) -> Self {
        Self { kind: WeightKind::RadialPower { exponent }, level: 1 }
    }

    pub fn custom(profile: RadialProfile) -> Self {
        Self { kind: WeightKind::CustomRadial(profile), level: 1 }
    }

    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level;
        self
    }

    pub fn validate(&self, domain: &DomainSpec) -> Result<()> {
        if self.level == 0 {
            return Err(Error::InvalidConfig("weight level m must be >= 1".into()));
        }
        match &self.kind {
            WeightKind::BallKe { radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidConfig(format!("KE weight radius must be positive, got {radius}")));
                }
                if self.level > 1 && domain.outer_radius() > radius * (1.0 + 1e-12) {
                    return Err(Error::InvalidConfig(format!(
                        "KE weight of radius {radius} is not positive on a domain of outer radius {}",
                        domain.outer_radius()
                    )));
                }
            }
            WeightKind::RadialPower { exponent } => {
                if !(exponent.is_finite() && *exponent >= 0.0) {
                    return Err(Error::InvalidConfig(format!("radial power must be >= 0, got {exponent}")));
                }
            }
            WeightKind::Unweighted | WeightKind::CustomRadial(_) => {}
        }
        Ok(())
    }

    /// Weight density at moduli `t` inside `domain`.
    pub fn density(&self, domain: &DomainSpec, t: &[f64]) -> f64 {
        let n = domain.dim() as f64;
        match &self.kind {
            WeightKind::Unweighted => 1.0,
            WeightKind::BallKe { radius } => {
                if self.level == 1 {
                    return 1.0;
                }
                let m1 = f64::from(self.level - 1);
                let r2 = radius * radius;
                let rho: f64 = t.iter().map(|x| x * x).sum::<f64>() / r2;
                ((n + 1.0) / r2).powf(-m1 * n) * (1.0 - rho).max(0.0).powf(m1 * (n + 1.0))
            }
            WeightKind::RadialPower { exponent } => match domain {
                DomainSpec::Ball { radius, .. } => {
                    let rho: f64 = t.iter().map(|x| x * x).sum::<f64>() / (radius * radius);
                    (1.0 - rho).max(0.0).powf(*exponent)
                }
                DomainSpec::Polydisc { radii } => {
                    t.iter().zip(radii).map(|(x, r)| (1.0 - (x / r).powi(2)).max(0.0).powf(*exponent)).product()
                }
                DomainSpec::DiagonalEllipsoid { exponents, radii } => {
                    let rho: f64 = t.iter().zip(radii).zip(exponents).map(|((x, a), p)| (x / a).powf(2.0 * p)).sum();
                    (1.0 - rho).max(0.0).powf(*exponent)
                }
            },
            WeightKind::CustomRadial(profile) => {
                let normalized: Vec<f64> = t.iter().zip(domain.axis_bounds()).map(|(x, b)| x / b).collect();
                profile.eval(&normalized)
            }
        }
    }
}

fn default_quadrature_points() -> usize {
    16
}

fn default_tolerance() -> f64 {
    1e-10
}

fn default_cap() -> u32 {
    DEFAULT_DEGREE_CAP
}

/// Everything needed to build a [`crate::BergmanModel`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub domain: DomainSpec,
    pub weight: WeightSpec,
    /// Starting truncation degree `N` (basis `|α| ≤ N`).
    pub truncation_degree: u32,
    #[serde(default = "default_quadrature_points")]
    pub quadrature_points: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Largest degree adaptive evaluation may reach.
    #[serde(default = "default_cap")]
    pub max_degree: u32,
    /// Disables the [`SERIES_GUARD`] refusal near the boundary.
    #[serde(default)]
    pub allow_near_boundary: bool,
}

impl ModelConfig {
    pub fn new(domain: DomainSpec, weight: WeightSpec) -> Self {
        Self {
            domain,
            weight,
            truncation_degree: 20,
            quadrature_points: default_quadrature_points(),
            tolerance: default_tolerance(),
            max_degree: DEFAULT_DEGREE_CAP,
            allow_near_boundary: false,
        }
    }

    /// Ball of radius `r` in `ℂⁿ` with its Kähler–Einstein weight of level `m`
    /// (`m = 1` is the unweighted Bergman space).
    pub fn ball(n: usize, r: f64, m: u32) -> Self {
        Self::new(DomainSpec::ball(n, r), WeightSpec::ball_ke(m, r))
    }

    pub fn polydisc(radii: Vec<f64>) -> Self {
        Self::new(DomainSpec::Polydisc { radii }, WeightSpec::unweighted())
    }

    pub fn ellipsoid(exponents: Vec<f64>, radii: Vec<f64>) -> Self {
        Self::new(DomainSpec::DiagonalEllipsoid { exponents, radii }, WeightSpec::unweighted())
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.truncation_degree = degree;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_max_degree(mut self, cap: u32) -> Self {
        self.max_degree = cap;
        self
    }

    pub fn with_weight(mut self, weight: WeightSpec) -> Self {
        self.weight = weight;
        self
    }

    pub fn allowing_near_boundary(mut self) -> Self {
        self.allow_near_boundary = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn level(&self) -> u32 {
        self.weight.level
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        self.weight.validate(&self.domain)?;
        if self.truncation_degree < 2 {
            return Err(Error::InvalidConfig(format!(
                "truncation degree must be >= 2 for curvature jets, got {}",
                self.truncation_degree
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidConfig(format!("tolerance must lie in (0,1), got {}", self.tolerance)));
        }
        if self.quadrature_points < 8 {
            return Err(Error::InvalidConfig(format!(
                "quadrature_points must be >= 8, got {}",
                self.quadrature_points
            )));
        }
        Ok(())
    }

    /// Effective truncation cap: `max_degree`, further limited by `BERGMAN_LAB_MAX_N`.
    pub fn degree_cap(&self) -> u32 {
        let env_cap = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse::<u32>().ok());
        match env_cap {
            Some(c) => self.max_degree.min(c),
            None => self.max_degree,
        }
    }
}

/// A base point with two tangent directions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointVec {
    pub point: Vec<Complex64>,
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

impl PointVec {
    pub fn new(point: Vec<Complex64>, x: Vec<Complex64>, y: Vec<Complex64>) -> Self {
        Self { point, x, y }
    }

    pub fn validate(&self, domain: &DomainSpec) -> Result<()> {
        domain.check_interior(&self.point)?;
        for v in [&self.x, &self.y] {
            if v.len() != domain.dim() {
                return Err(Error::DimensionMismatch { expected: domain.dim(), got: v.len() });
            }
            if is_zero(v) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(())
    }
}

pub(crate) fn is_zero(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.norm_sqr() == 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauges_agree_with_definitions() {
        let ball = DomainSpec::ball(2, 2.0);
        assert!((ball.gauge(&[0.6, 0.8]) - 0.5).abs() < 1e-15);
        let poly = DomainSpec::Polydisc { radii: vec![1.0, 0.5] };
        assert!((poly.gauge(&[0.2, 0.4]) - 0.8).abs() < 1e-15);
        let ell = DomainSpec::DiagonalEllipsoid { exponents: vec![2.0, 2.0], radii: vec![1.0, 1.0] };
        let t = [0.5, 0.5];
        let lam = ell.gauge(&t);
        let h: f64 = t.iter().map(|x| (x / lam).powi(4)).sum();
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interior_margin_is_enforced() {
        let ball = DomainSpec::ball(1, 1.0);
        assert!(ball.check_interior(&[Complex64::new(0.5, 0.0)]).is_ok());
        assert!(matches!(ball.check_interior(&[Complex64::new(1.0, 0.0)]), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        assert!(ModelConfig::ball(2, 1.0, 2).validate().is_ok());
        assert!(ModelConfig::ball(2, 1.0, 2).with_degree(1).validate().is_err());
        assert!(ModelConfig::ball(2, 1.0, 2).with_tolerance(1.5).validate().is_err());
        assert!(ModelConfig::polydisc(vec![1.0, -1.0]).validate().is_err());
        // KE weight of a smaller ball is negative somewhere on the polydisc.
        let cfg = ModelConfig::polydisc(vec![1.0, 1.0]).with_weight(WeightSpec::ball_ke(2, 1.0));
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn ball_ke_density_matches_closed_form() {
        let domain = DomainSpec::ball(1, 1.0);
        let w = WeightSpec::ball_ke(2, 1.0);
        // ((n+1)/r²)^{-(m-1)n} (1-|z|²)^{(m-1)(n+1)} with n=1, m=2.
        let t = 0.3_f64;
        let expected = 0.5 * (1.0 - t * t).powi(2);
        assert!((w.density(&domain, &[t]) - expected).abs() < 1e-15);
    }
}
