//! Nested Gauss–Legendre quadrature over the radial shadow of a Reinhardt domain.
//!
//! Each axis `t_k ∈ [0, L_k(t_0..t_{k-1})]` is integrated with an `n`-point
//! Gauss–Legendre rule composed with the quintic smoothstep map
//! `x = s³(10 − 15s + 6s²)`. The map's derivative vanishes to second order at
//! both ends, which tames the square-root type singularities that curved
//! upper limits and fractional weight exponents put at the interval ends.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;

use crate::domain::DomainSpec;

/// Largest number of nodes per axis the refinement may use.
pub const MAX_NODES_PER_AXIS: usize = 1 << 14;

/// Largest total number of integrand evaluations for one estimate.
pub const MAX_EVALUATIONS: f64 = (1u64 << 28) as f64;

/// Nodes and weights on `[0, 1]`, smoothstep already applied.
#[derive(Debug)]
pub struct UnitRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl UnitRule {
    fn build(points: usize) -> Self {
        let gl = GaussLegendre::new(points.try_into().expect("points >= 2"));
        let (mut nodes, mut weights) = (Vec::with_capacity(points), Vec::with_capacity(points));
        for (x, w) in gl.iter() {
            let s = 0.5 * (x + 1.0);
            let phi = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
            let dphi = 30.0 * s * s * (1.0 - s) * (1.0 - s);
            nodes.push(phi);
            weights.push(0.5 * w * dphi);
        }
        Self { nodes, weights }
    }
}

/// Shared, lazily built rule for `points` nodes.
pub fn unit_rule(points: usize) -> Arc<UnitRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<UnitRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("rule cache poisoned");
    guard.entry(points).or_insert_with(|| Arc::new(UnitRule::build(points))).clone()
}

/// `∫ f(t) dt` over `{t ∈ [0,∞)ⁿ : t/|·| in domain}` with a fixed rule.
pub fn integrate_radial<F>(domain: &DomainSpec, rule: &UnitRule, f: &F) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    fn nest<F: Fn(&[f64]) -> f64>(domain: &DomainSpec, rule: &UnitRule, k: usize, t: &mut Vec<f64>, f: &F) -> f64 {
        let upper = domain.radial_upper_limit(k, &t[..k]);
        if upper <= 0.0 {
            return 0.0;
        }
        let last = k + 1 == domain.dim();
        let mut sum = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            t[k] = upper * x;
            let v = if last { f(t) } else { nest(domain, rule, k + 1, t, f) };
            sum += w * v;
        }
        sum * upper
    }
    let mut t = vec![0.0; domain.dim()];
    nest(domain, rule, 0, &mut t, f)
}

/// Outcome of [`adaptive_radial`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// Doubles the node count from `start` until successive estimates differ by
/// less than `tol·|value|`, or the per-axis / evaluation budget runs out.
pub fn adaptive_radial<F>(domain: &DomainSpec, start: usize, tol: f64, f: &F) -> QuadratureEstimate
where
    F: Fn(&[f64]) -> f64,
{
    let n = domain.dim() as i32;
    let mut points = start.max(2);
    let mut prev = integrate_radial(domain, &unit_rule(points), f);
    loop {
        let next_points = points * 2;
        if next_points > MAX_NODES_PER_AXIS || (next_points as f64).powi(n) > MAX_EVALUATIONS {
            return QuadratureEstimate { value: prev, nodes: points, converged: false };
        }
        let next = integrate_radial(domain, &unit_rule(next_points), f);
        if (next - prev).abs() <= tol * next.abs() {
            return QuadratureEstimate { value: next, nodes: next_points, converged: true };
        }
        prev = next;
        points = next_points;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_on_unit_interval() {
        let rule = unit_rule(32);
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(5)).sum();
        assert!((s - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn quarter_disc_area() {
        // ∫∫_{t1²+t2²<1} dt = π/4
        let ball = DomainSpec::ball(2, 1.0);
        let est = adaptive_radial(&ball, 8, 1e-12, &|_t: &[f64]| 1.0);
        assert!(est.converged);
        assert!((est.value - std::f64::consts::FRAC_PI_4).abs() < 1e-11);
    }

    #[test]
    fn fractional_endpoint_singularity_converges() {
        // ∫_0^1 t (1-t²)^{1/2} dt = 1/3
        let disc = DomainSpec::ball(1, 1.0);
        let est = adaptive_radial(&disc, 8, 1e-12, &|t: &[f64]| t[0] * (1.0 - t[0] * t[0]).sqrt());
        assert!(est.converged);
        assert!((est.value - 1.0 / 3.0).abs() < 1e-11);
    }
}
