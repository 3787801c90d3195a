use std::f64::consts::PI;

use bergman_lab::adaptive::converge;
use bergman_lab::{BallClosedForms, BergmanModel, Complex64, Error, ModelConfig, MultiIndex};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn shifted(p: &[Complex64], j: usize, d: Complex64) -> Vec<Complex64> {
    let mut q = p.to_vec();
    q[j] += d;
    q
}

/// Central-difference Wirtinger derivative `∂_j` (or `∂̄_j` when `bar`).
fn wirtinger(f: &dyn Fn(&[Complex64]) -> Complex64, p: &[Complex64], j: usize, bar: bool, h: f64) -> Complex64 {
    let dx = (f(&shifted(p, j, c(h, 0.0))) - f(&shifted(p, j, c(-h, 0.0)))) / (2.0 * h);
    let dy = (f(&shifted(p, j, c(0.0, h))) - f(&shifted(p, j, c(0.0, -h)))) / (2.0 * h);
    let i = c(0.0, if bar { 1.0 } else { -1.0 });
    (dx + i * dy) * 0.5
}

/// Finite-difference `∂^{ops} K` at `p`, innermost operator last.
fn fd(model: &BergmanModel, p: &[Complex64], ops: &[(usize, bool)], h: f64) -> Complex64 {
    match ops.split_first() {
        None => c(model.kernel_jet(p).unwrap().k(), 0.0),
        Some((&(j, bar), rest)) => {
            let inner = |q: &[Complex64]| fd(model, q, rest, h);
            wirtinger(&inner, p, j, bar, h)
        }
    }
}

#[test]
fn jets_match_finite_differences_at_second_order() {
    let model = BergmanModel::build(&ModelConfig::ball(2, 1.0, 2).with_degree(30)).unwrap();
    let p = [c(0.2, 0.1), c(0.0, -0.3)];
    let jet = model.kernel_jet(&p).unwrap();
    let e = |v: &[u32]| MultiIndex::new(v.to_vec());
    let z = e(&[0, 0]);
    let cases = [
        ("d1", jet.get(&e(&[1, 0]), &z), vec![(0, false)]),
        ("dbar2", jet.get(&z, &e(&[0, 1])), vec![(1, true)]),
        ("d1 dbar1", jet.get(&e(&[1, 0]), &e(&[1, 0])), vec![(0, false), (0, true)]),
        ("d1 dbar2", jet.get(&e(&[1, 0]), &e(&[0, 1])), vec![(0, false), (1, true)]),
        ("d1 d2", jet.get(&e(&[1, 1]), &z), vec![(0, false), (1, false)]),
    ];
    for (name, exact, ops) in cases {
        let e1 = (fd(&model, &p, &ops, 4e-3) - exact).norm();
        let e2 = (fd(&model, &p, &ops, 2e-3) - exact).norm();
        let order = (e1 / e2).log2();
        assert!(e2 < 1e-3 * exact.norm().max(1.0), "{name}: error {e2}");
        assert!(order >= 1.8, "{name}: observed order {order} ({e1} -> {e2})");
    }
}

#[test]
fn truncated_kernel_increases_with_degree() {
    let p = [c(0.5, 0.3), c(-0.2, 0.1)];
    let base = BergmanModel::build(&ModelConfig::ball(2, 1.0, 1).with_degree(2)).unwrap();
    let mut last = 0.0;
    for d in (2..=60).step_by(6) {
        let k = base.with_degree(d).unwrap().kernel_jet(&p).unwrap().k();
        // Strict until the tail drops below rounding.
        assert!(k > last || (d > 30 && k == last), "degree {d}: {k} < {last}");
        last = k;
    }
    let exact = BallClosedForms::new(1.0, 1, 2).unwrap().kernel(&p).unwrap();
    assert!(last <= exact * (1.0 + 1e-14) && (exact - last) / exact < 1e-12);
}

#[test]
fn adaptive_kernel_matches_ball_closed_form() {
    for (n, m, r) in [(1usize, 1u32, 1.0), (2, 2, 1.0), (2, 3, 0.7), (3, 1, 2.0)] {
        let model = BergmanModel::build(&ModelConfig::ball(n, r, m)).unwrap();
        let p: Vec<Complex64> = (0..n).map(|j| c(0.15 * r, -0.1 * r * j as f64)).collect();
        let got = converge(&model, |md| Ok(md.kernel_jet(&p)?.k())).unwrap();
        let exact = BallClosedForms::new(r, m, n).unwrap().kernel(&p).unwrap();
        assert!((got.value - exact).abs() / exact < 1e-9, "n={n} m={m} r={r}: {} vs {exact}", got.value);
    }
}

#[test]
fn polydisc_kernel_is_a_product() {
    let (r1, r2) = (1.0, 0.6);
    let model = BergmanModel::build(&ModelConfig::polydisc(vec![r1, r2])).unwrap();
    let p = [c(0.3, 0.2), c(0.0, 0.25)];
    let got = converge(&model, |md| Ok(md.kernel_jet(&p)?.k())).unwrap().value;
    let disc = |r: f64, z: Complex64| r * r / (PI * (r * r - z.norm_sqr()).powi(2));
    let exact = disc(r1, p[0]) * disc(r2, p[1]);
    assert!((got - exact).abs() / exact < 1e-9);
}

#[test]
fn kernel_is_rotation_invariant() {
    let model = BergmanModel::build(&ModelConfig::ellipsoid(vec![2.0, 1.0], vec![1.0, 0.8]).with_degree(20)).unwrap();
    let p = [c(0.3, 0.1), c(-0.2, 0.2)];
    let rot = [p[0] * Complex64::from_polar(1.0, 0.7), p[1] * Complex64::from_polar(1.0, -2.1)];
    let (a, b) = (model.kernel_jet(&p).unwrap().k(), model.kernel_jet(&rot).unwrap().k());
    assert!((a - b).abs() / a < 1e-13);
}

#[test]
fn boundary_and_cap_errors() {
    let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, 1).with_max_degree(40)).unwrap();
    assert!(matches!(model.kernel_jet(&[c(1.2, 0.0)]), Err(Error::OutsideDomain { .. })));
    assert!(matches!(model.kernel_jet(&[c(0.97, 0.0)]), Err(Error::NearBoundary { .. })));
    let err = converge(&model, |md| Ok(md.kernel_jet(&[c(0.9, 0.0)])?.k())).unwrap_err();
    assert!(matches!(err, Error::TruncationInsufficient { cap: 40, .. }));
    let near = BergmanModel::build(&ModelConfig::ball(1, 1.0, 1).allowing_near_boundary()).unwrap();
    assert!(near.kernel_jet(&[c(0.97, 0.0)]).is_ok());
}
