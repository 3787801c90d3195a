//! Bisectional curvature from the curvature tensor and from minimum integrals.
//!
//! On the unit ball with the unweighted measure `B(X,Y) = −(1 + cos²)/3` in
//! dimension 2, where `cos²` is the metric angle between the directions.

use bergman_lab::adaptive::converge;
use bergman_lab::min_integrals::bergman_fuks_crosscheck;
use bergman_lab::{BergmanModel, Complex64, ModelConfig, Result};

fn main() -> Result<()> {
    let c = Complex64::new;
    let p = [c(0.2, 0.1), c(-0.1, 0.3)];
    let x = [c(1.0, 0.0), c(0.5, -0.5)];
    let y = [c(0.0, 1.0), c(1.0, 0.0)];

    for cfg in [ModelConfig::ball(2, 1.0, 1), ModelConfig::ball(2, 1.0, 3), ModelConfig::polydisc(vec![1.0, 1.0])] {
        let model = BergmanModel::build(&cfg)?;
        let r = converge(&model, |md| md.curvature_bisectional(&p, &x, &y))?;
        let cross = bergman_fuks_crosscheck(&model.with_degree(r.degree)?, &p, &x, &y)?;
        let rep = r.value;
        println!(
            "{:?} m={} N={}: B={:+.12} H(X)={:+.12} ricci={:+.12} S={:.12} T={:.12}",
            cfg.domain,
            cfg.level(),
            r.degree,
            rep.b,
            rep.h,
            rep.ricci,
            rep.s,
            rep.t
        );
        println!("  tensor vs minimum integrals: {:.3e}", cross.max_residual());
        if cfg.level() == 1 && matches!(cfg.domain, bergman_lab::DomainSpec::Ball { .. }) {
            println!("  closed form -(1 + cos2)/3 = {:+.12}", -(1.0 + rep.cos2) / 3.0);
        }
    }
    Ok(())
}
