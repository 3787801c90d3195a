//! Kernel, metric and canonical functions of a polydisc, with adaptive truncation.

use std::f64::consts::PI;

use bergman_lab::adaptive::converge;
use bergman_lab::{BergmanModel, Complex64, ModelConfig, Result};

fn main() -> Result<()> {
    let radii = [1.0, 0.6];
    let model = BergmanModel::build(&ModelConfig::polydisc(radii.to_vec()))?;
    let p = [Complex64::new(0.3, 0.2), Complex64::new(0.0, 0.25)];

    let k = converge(&model, |md| Ok(md.kernel_jet(&p)?.k()))?;
    let exact: f64 = radii.iter().zip(&p).map(|(r, z)| r * r / (PI * (r * r - z.norm_sqr()).powi(2))).product();
    println!("K(p) = {:.15e} at N = {} (product formula {:.15e})", k.value, k.degree, exact);

    let at = model.with_degree(k.degree)?;
    let g = at.metric(&p)?;
    println!("metric g_jk at p:");
    for i in 0..2 {
        println!(
            "  [{:+.10e} {:+.10e}i, {:+.10e} {:+.10e}i]",
            g.g[(i, 0)].re,
            g.g[(i, 0)].im,
            g.g[(i, 1)].re,
            g.g[(i, 1)].im
        );
    }
    let (j, jt) = at.canonical_functions(&p)?;
    println!("det g = {:.10e}, J = {:.10e}, J~ = {:.10e}", g.det, j, jt);
    Ok(())
}
