//! Ball automorphisms: kernel transformation and invariance of the curvature.

use bergman_lab::{BallAutomorphism, BallClosedForms, BergmanModel, Complex64, ModelConfig, Result};

fn main() -> Result<()> {
    let c = Complex64::new;
    let a = [c(0.2, -0.1), c(0.0, 0.15)];
    let z = [c(0.1, 0.3), c(-0.25, 0.0)];
    let x = [c(1.0, 0.0), c(0.0, 1.0)];
    let y = [c(0.5, 0.5), c(1.0, 0.0)];
    let f = BallAutomorphism::new(&a)?;
    let fz = f.apply(&z)?;
    let det = f.det_jacobian(&z)?;
    println!("F_a(z) = {fz:?}");
    println!("det F_a'(z) = {det}");

    for m in 1..=3u32 {
        let ball = BallClosedForms::new(1.0, m, 2)?;
        let lhs = ball.kernel(&z)?;
        let rhs = ball.kernel(&fz)? * det.norm_sqr().powi(m as i32);
        println!("m={m}: K(z) = {lhs:.15e}, K(F z)|det F'|^(2m) = {rhs:.15e}");
    }

    let model = BergmanModel::build(&ModelConfig::ball(2, 1.0, 2).with_degree(60))?;
    let before = model.curvature_bisectional(&z, &x, &y)?.b;
    let after = model.curvature_bisectional(&fz, &f.push_forward(&z, &x)?, &f.push_forward(&z, &y)?)?.b;
    println!("series B at z = {before:+.12}, B at F(z) along F'X, F'Y = {after:+.12}");
    Ok(())
}
