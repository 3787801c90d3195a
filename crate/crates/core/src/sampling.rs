//! Seeded random points and directions.
//!
//! Every randomized case draws from its own ChaCha20 stream: the generator is
//! `ChaCha20Rng::seed_from_u64(seed)` with `set_stream(case_index)`, so case
//! `i` sees the same numbers regardless of how many other cases run or in
//! which order. Directions are uniform on the unit sphere of `ℂⁿ`, drawn as
//! `2n` standard normals (real parts first, interleaved with imaginary parts)
//! and normalised.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::domain::DomainSpec;

/// The generator for case `stream` of a run seeded with `seed`.
pub fn case_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on the unit sphere of `ℂⁿ`.
pub fn unit_sphere(rng: &mut ChaCha20Rng, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        let len = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if len > 1e-12 {
            return v.into_iter().map(|z| z / len).collect();
        }
    }
}

/// Point of the domain with gauge uniform in `[0, max_gauge)` along a uniform direction.
pub fn point_in_domain(rng: &mut ChaCha20Rng, domain: &DomainSpec, max_gauge: f64) -> Vec<Complex64> {
    let dir = unit_sphere(rng, domain.dim());
    let g = domain.gauge_complex(&dir);
    let target = max_gauge * rng.random::<f64>();
    dir.into_iter().map(|z| z * (target / g)).collect()
}

/// Point of the ball `|z| < radius` at Euclidean radius uniform in `[0, radius)`.
pub fn point_in_ball(rng: &mut ChaCha20Rng, n: usize, radius: f64) -> Vec<Complex64> {
    point_in_domain(rng, &DomainSpec::ball(n, 1.0), radius)
}
