use std::f64::consts::PI;

use bergman_lab::ball::ball_min_integrals_origin;
use bergman_lab::min_integrals::{bergman_fuks_crosscheck, least_norm, min_integral_oracle};
use bergman_lab::{BergmanModel, Complex64, Constraint, Error, Functional, ModelConfig};
use nalgebra::DVector;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn disc_origin_golden_values() {
    let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, 1).with_degree(4)).unwrap();
    let one = [c(1.0, 0.0)];
    let r = model.min_integrals(&[c(0.0, 0.0)], &one, &one).unwrap();
    assert!((r.i0 - PI).abs() < 1e-12);
    assert!((r.i1_x - PI / 2.0).abs() < 1e-12);
    assert!((r.i2_xy - PI / 12.0).abs() < 1e-12);
    assert!((r.holomorphic_sectional() + 1.0).abs() < 1e-12);
}

#[test]
fn series_matches_ball_closed_forms_at_origin() {
    for (r, m, n) in [(1.0, 1u32, 2usize), (0.7, 2, 2), (1.5, 3, 1), (1.0, 2, 3)] {
        let model = BergmanModel::build(&ModelConfig::ball(n, r, m).with_degree(4)).unwrap();
        let origin = vec![c(0.0, 0.0); n];
        let x: Vec<Complex64> = (0..n).map(|j| c(1.0 + j as f64, 0.5)).collect();
        let y: Vec<Complex64> = (0..n).map(|j| c(0.3, -(j as f64))).collect();
        let got = model.min_integrals(&origin, &x, &y).unwrap();
        let exact = ball_min_integrals_origin(r, m, n, &x, &y).unwrap();
        for (name, a, b) in [
            ("I0", got.i0, exact.i0),
            ("I1_X", got.i1_x, exact.i1_x),
            ("I1_Y", got.i1_y, exact.i1_y),
            ("I2", got.i2_xy, exact.i2_xy),
            ("J", got.j, exact.j),
            ("J_tilde", got.j_tilde, exact.j_tilde),
            ("B", got.b, exact.b),
        ] {
            assert!(rel(a, b) < 1e-10, "(r,m,n)=({r},{m},{n}) {name}: {a} vs {b}");
        }
        if n > 1 {
            assert!(rel(got.i1_x_given_y, exact.i1_x_given_y) < 1e-10);
        }
    }
}

#[test]
fn kernel_and_metric_routes_agree() {
    let cfgs = [
        ModelConfig::ball(2, 1.0, 2).with_degree(40),
        ModelConfig::polydisc(vec![1.0, 0.7]).with_degree(40),
        ModelConfig::ellipsoid(vec![2.0, 1.0], vec![1.0, 0.8]).with_degree(30),
    ];
    let p = [c(0.2, -0.1), c(0.1, 0.15)];
    let x = [c(0.6, 0.2), c(-0.3, 0.7)];
    let y = [c(0.1, -0.9), c(0.4, 0.0)];
    for cfg in cfgs {
        let model = BergmanModel::build(&cfg).unwrap();
        let jet = model.kernel_jet(&p).unwrap();
        let g = model.metric(&p).unwrap();
        let mi = model.min_integrals(&p, &x, &y).unwrap();
        assert!(rel(mi.i0, 1.0 / jet.k()) < 1e-12);
        assert!(rel(mi.x_norm2_g, g.norm2(&x)) < 1e-10);
        assert!(rel(mi.i1_y, mi.i0 / g.norm2(&y)) < 1e-10);
        // Π_k 1/I¹(∂_k|<k) = K^{n+1} J.
        let prod: f64 = mi.i1_flag.iter().map(|v| 1.0 / v).product();
        assert!(rel(prod, jet.k().powi(3) * mi.j) < 1e-10);
        let cross = bergman_fuks_crosscheck(&model, &p, &x, &y).unwrap();
        assert!(cross.max_residual() < 1e-8, "{cross:?}");
    }
}

#[test]
fn constraint_addition_and_scaling() {
    let model = BergmanModel::build(&ModelConfig::polydisc(vec![1.0, 1.0]).with_degree(40)).unwrap();
    let p = [c(0.1, 0.2), c(-0.3, 0.1)];
    let x = [c(1.0, 0.5), c(0.2, -0.4)];
    let y = [c(-0.1, 0.3), c(0.8, 0.0)];
    let r = model.min_integrals(&p, &x, &y).unwrap();
    assert!(r.i1_x <= r.i1_x_given_y);
    assert!(r.i1_y <= r.i1_y_given_x);

    let k = c(2.0, -1.5);
    let xs: Vec<Complex64> = x.iter().map(|z| z * k).collect();
    let rs = model.min_integrals(&p, &xs, &y).unwrap();
    assert!(rel(rs.i1_x, r.i1_x / k.norm_sqr()) < 1e-12);
    for (a, b) in [(rs.s, r.s), (rs.t, r.t), (rs.b, r.b)] {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn flag_integrals_increase_at_reinhardt_centre() {
    let model = BergmanModel::build(&ModelConfig::ball(3, 1.0, 1).with_degree(4)).unwrap();
    let zero = vec![c(0.0, 0.0); 3];
    let e1 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let r = model.min_integrals(&zero, &e1, &e1).unwrap();
    for w in r.i1_flag.windows(2) {
        assert!(w[0] <= w[1] * (1.0 + 1e-14));
    }
}

#[test]
fn parallel_directions_are_infeasible() {
    let model = BergmanModel::build(&ModelConfig::ball(2, 1.0, 1).with_degree(30)).unwrap();
    let p = [c(0.2, 0.0), c(0.0, 0.1)];
    let x = [c(1.0, 1.0), c(0.5, 0.0)];
    let y: Vec<Complex64> = x.iter().map(|z| z * c(0.0, -3.0)).collect();
    let r = model.min_integrals(&p, &x, &y).unwrap();
    assert!(r.i1_x_given_y.is_infinite());
    assert_eq!(r.s, 0.0);
    assert_eq!(serde_json::to_value(&r).unwrap()["I1_X_given_Y"], "inf");
    let cons = [
        Constraint::zero(Functional::eval(2)),
        Constraint::zero(Functional::directional(&y)),
        Constraint::one(Functional::directional(&x)),
    ];
    assert!(min_integral_oracle(&model, &p, &cons).unwrap().is_infinite());
}

#[test]
fn oracle_matches_projection_on_mixed_targets() {
    // Nonzero targets on several functionals at once, against a plain LU
    // solve of the Gram system.
    let model = BergmanModel::build(&ModelConfig::ellipsoid(vec![1.0, 2.0], vec![1.0, 0.9]).with_degree(20)).unwrap();
    let p = [c(0.1, 0.0), c(0.2, -0.2)];
    let cons = [
        Constraint::new(Functional::eval(2), c(1.0, 0.5)),
        Constraint::new(Functional::partial(2, 0), c(-0.3, 0.0)),
        Constraint::new(Functional::partial(2, 1), c(0.0, 2.0)),
    ];
    let oracle = min_integral_oracle(&model, &p, &cons).unwrap();
    let rows: Vec<DVector<Complex64>> =
        cons.iter().map(|k| model.functional_values(&p, &k.functional).unwrap()).collect();
    let gram = nalgebra::DMatrix::from_fn(3, 3, |i, j| rows[i].dot(&rows[j].map(|z| z.conj())));
    let b = DVector::from_iterator(3, cons.iter().map(|k| k.target));
    let sol = gram.clone().lu().solve(&b).unwrap();
    let direct = b.dotc(&sol).re;
    assert!(rel(oracle, direct) < 1e-10, "{oracle} vs {direct}");
}

#[test]
fn least_norm_edge_cases() {
    let e = |v: &[f64]| DVector::from_iterator(v.len(), v.iter().map(|x| c(*x, 0.0)));
    assert!((least_norm(&[e(&[1.0, 0.0])], &[c(2.0, 0.0)]).unwrap() - 4.0).abs() < 1e-14);
    assert_eq!(least_norm(&[e(&[1.0, 0.0])], &[c(0.0, 0.0)]).unwrap(), 0.0);
    let dup = [e(&[1.0, 1.0]), e(&[1.0, 1.0])];
    assert!(least_norm(&dup, &[c(1.0, 0.0), c(2.0, 0.0)]).unwrap().is_infinite());
    assert!((least_norm(&dup, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap() - 0.5).abs() < 1e-12);
    // Condition number about 4e12: kept, but refused.
    let nearly = [e(&[1.0, 0.0]), e(&[1.0, 1e-6])];
    assert!(matches!(least_norm(&nearly, &[c(1.0, 0.0), c(0.0, 0.0)]), Err(Error::IllConditioned { .. })));
    // Closer still, the small eigenvalue counts as null and the system is inconsistent.
    let null = [e(&[1.0, 0.0]), e(&[1.0, 1e-8])];
    assert!(least_norm(&null, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap().is_infinite());
}
