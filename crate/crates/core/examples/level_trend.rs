//! `J̃` on the unit disc as the level `m` grows, and the Ricci curvature `−1/m`.
//!
//! The sequence `(2π/(2m − 1))^{1/m}` tends to 1 but is not monotone: it
//! falls below 1 around `m = 3` and only starts rising after `m = 10`.

use bergman_lab::suites::jtilde_sequence;
use bergman_lab::{BergmanModel, Complex64, ModelConfig, Result};

fn main() -> Result<()> {
    let seq = jtilde_sequence(1, 50);
    for w in seq.windows(2) {
        let ((_, prev), (m, v)) = (w[0], w[1]);
        let arrow = if v > prev { "up" } else { "down" };
        if m <= 12 || m % 10 == 0 {
            println!("m={m:>2}  J~={v:.9}  {arrow}");
        }
    }
    let origin = [Complex64::new(0.0, 0.0)];
    let e1 = [Complex64::new(1.0, 0.0)];
    for m in 1..=5u32 {
        let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, m).with_degree(4))?;
        println!("m={m}: ricci at 0 = {:+.15}, expected {:+.15}", model.ricci(&origin, &e1)?, -1.0 / f64::from(m));
    }
    Ok(())
}
