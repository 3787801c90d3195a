//! Curvature intervals from a lower bound on the squeezing number.
//!
//! The ellipsoid `|z₁/ρ|⁴ + |z₂/ρ|² < 1`, `ρ² = 0.8`, sits between the balls
//! of radius 0.8 and 1 around its centre, so its squeezing number there is at
//! least 0.8.

use bergman_lab::ball::{theorem61_bounds, theorem61_holomorphic_bounds};
use bergman_lab::suites::pinched_ellipsoid;
use bergman_lab::{BergmanModel, Complex64, Result, SqueezingBound};

fn main() -> Result<()> {
    let c = Complex64::new;
    let model = BergmanModel::build(&pinched_ellipsoid().with_degree(12))?;
    let origin = [c(0.0, 0.0), c(0.0, 0.0)];
    let s = SqueezingBound::inclusion(0.8, 1.0)?;
    let dirs = [
        ([c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]),
        ([c(0.6, 0.0), c(0.0, 0.8)], [c(1.0, 0.0), c(0.0, 0.0)]),
        ([c(0.0, 1.0), c(1.0, 1.0)], [c(0.0, 1.0), c(1.0, 1.0)]),
    ];
    for (x, y) in dirs {
        let r = model.curvature_bisectional(&origin, &x, &y)?;
        let b = theorem61_bounds(&s, 1, 2, r.cos2, r.b);
        println!(
            "B={:+.6} cos2={:.4}: value {:+.6} in [{:+.6}, {:+.6}] -> {}",
            r.b, r.cos2, b.value, b.lower, b.upper, b.contained
        );
        let hx = model.curvature_bisectional(&origin, &x, &x)?.h;
        let h = theorem61_holomorphic_bounds(&s, 1, 2, hx);
        println!("  H(X)={:+.6}: value {:+.6} in [{:+.6}, {:+.6}] -> {}", hx, h.value, h.lower, h.upper, h.contained);
    }
    println!("ball, s = 1: {:?}", theorem61_bounds(&SqueezingBound::exact_ball(), 1, 2, 0.0, -1.0 / 3.0));
    Ok(())
}
