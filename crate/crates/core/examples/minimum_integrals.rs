//! Minimum integrals by projection, checked against the least-norm solver.

use bergman_lab::min_integrals::min_integral_oracle;
use bergman_lab::{BergmanModel, Complex64, Constraint, Functional, ModelConfig, Result};

fn main() -> Result<()> {
    let c = Complex64::new;
    let model = BergmanModel::build(&ModelConfig::ellipsoid(vec![2.0, 1.0], vec![1.0, 0.9]).with_degree(30))?;
    let p = [c(0.1, -0.2), c(0.2, 0.1)];
    let x = [c(1.0, 0.0), c(0.3, 0.4)];
    let y = [c(-0.2, 0.7), c(1.0, 0.0)];

    let r = model.min_integrals(&p, &x, &y)?;
    println!("I0        = {:.15e}", r.i0);
    println!("I1(X)     = {:.15e}", r.i1_x);
    println!("I1(X|Y)   = {:.15e}", r.i1_x_given_y);
    println!("I2(X,Y)   = {:.15e}", r.i2_xy);
    println!("flag I1   = {:?}", r.i1_flag);
    println!("S = {:.12}  T = {:.12}  B = 2 - S - T = {:+.12}", r.s, r.t, r.b);

    let ev = Functional::eval(2);
    let cons = [
        Constraint::zero(ev.clone()),
        Constraint::zero(Functional::directional(&y)),
        Constraint::one(Functional::directional(&x)),
    ];
    let oracle = min_integral_oracle(&model, &p, &cons)?;
    println!(
        "least-norm I1(X|Y) = {:.15e}, relative gap {:.2e}",
        oracle,
        (oracle - r.i1_x_given_y).abs() / r.i1_x_given_y
    );

    let i0 = min_integral_oracle(&model, &p, &[Constraint::one(ev)])?;
    println!("least-norm I0      = {:.15e}, relative gap {:.2e}", i0, (i0 - r.i0).abs() / r.i0);
    Ok(())
}
