//! Moments `‖z^α‖²` for a ball, a polydisc and a diagonal ellipsoid.
//!
//! Balls and polydiscs have closed forms; the ellipsoid falls back to
//! Gauss–Legendre quadrature, which the provenance column records.

use bergman_lab::moments::build_moment_table;
use bergman_lab::{ModelConfig, Result};

fn main() -> Result<()> {
    let configs = [
        ("ball n=2 m=2", ModelConfig::ball(2, 1.0, 2).with_degree(3)),
        ("polydisc (1, 0.5)", ModelConfig::polydisc(vec![1.0, 0.5]).with_degree(3)),
        ("ellipsoid |z1|^4 + |z2|^2 < 1", ModelConfig::ellipsoid(vec![2.0, 1.0], vec![1.0, 1.0]).with_degree(3)),
    ];
    for (name, cfg) in configs {
        let table = build_moment_table(&cfg)?;
        println!("{name}: {} moments up to degree {}", table.len(), table.degree());
        for e in table.entries() {
            println!("  alpha={:?}  {:.12e}  {}", e.alpha.entries(), e.value, e.provenance.as_str());
        }
    }
    Ok(())
}
