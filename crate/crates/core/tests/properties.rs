use bergman_lab::min_integrals::min_integral_oracle;
use bergman_lab::moments::build_moment_table;
use bergman_lab::multiindex::{monomial_jet, multiindex_enumerate};
use bergman_lab::suites::constraint_set;
use bergman_lab::{BallAutomorphism, BallClosedForms, BergmanModel, Complex64, ModelConfig, MultiIndex};
use proptest::prelude::*;

fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scaled(v: &[Complex64], len: f64) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|z| z * (len / n)).collect()
}

/// A nonzero direction in `ℂ²`.
fn direction() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(-1.0..1.0f64, 4)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| to_complex(&v))
}

/// A point of the unit ball of `ℂ²` with `|p| ≤ radius`.
fn ball_point(radius: f64) -> impl Strategy<Value = Vec<Complex64>> {
    (direction(), 0.0..radius).prop_map(|(d, r)| scaled(&d, r))
}

fn models() -> Vec<BergmanModel> {
    [
        ModelConfig::ball(2, 1.0, 1).with_degree(40),
        ModelConfig::ball(2, 1.0, 2).with_degree(40),
        ModelConfig::polydisc(vec![1.0, 0.8]).with_degree(40),
        ModelConfig::ellipsoid(vec![2.0, 1.0], vec![1.0, 0.9]).with_degree(30),
    ]
    .iter()
    .map(|c| BergmanModel::build(c).unwrap())
    .collect()
}

thread_local! {
    static MODELS: Vec<BergmanModel> = models();
    static SERIES60: Vec<BergmanModel> = (1..=2).map(|m| BergmanModel::build(&ModelConfig::ball(2, 1.0, m).with_degree(60)).unwrap()).collect();
}

#[test]
fn enumeration_is_graded_and_prefix_stable() {
    for n in 1..=4 {
        let short = multiindex_enumerate(n, 5);
        let long = multiindex_enumerate(n, 8);
        assert_eq!(&long[..short.len()], &short[..]);
        assert!(long.windows(2).all(|w| w[0].degree() <= w[1].degree()));
        assert_eq!(multiindex_enumerate(n, 8), long);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn monomial_jet_matches_forward_differences(a0 in 0u32..6, a1 in 0u32..6, p in ball_point(0.9)) {
        let alpha = MultiIndex::new(vec![a0, a1]);
        let jet = monomial_jet(&alpha, &p, 1);
        let eval = |q: &[Complex64]| q[0].powu(a0) * q[1].powu(a1);
        for (a, exact) in jet.iter().filter(|(a, _)| a.degree() == 1) {
            let j = a.entries().iter().position(|&e| e == 1).unwrap();
            let err = |h: f64| {
                let mut q = p.clone();
                q[j] += h;
                ((eval(&q) - eval(&p)) / h - exact).norm()
            };
            let (e1, e2) = (err(1e-3), err(1e-4));
            if e1 > 1e-9 {
                let slope = (e1 / e2).log10();
                prop_assert!(slope >= 0.9, "slope {slope}");
            }
        }
    }

    #[test]
    fn metric_is_hermitian_positive(which in 0usize..4, p in ball_point(0.6)) {
        MODELS.with(|ms| {
            let g = ms[which].metric(&p).unwrap();
            prop_assert_eq!(&g.g, &g.g.adjoint());
            prop_assert!(g.det > 0.0);
            let jet = ms[which].kernel_jet(&p).unwrap();
            prop_assert!(jet.k() > 0.0);
            Ok(())
        })?;
    }

    #[test]
    fn bisectional_is_symmetric_and_direction_only(
        which in 0usize..4,
        p in ball_point(0.6),
        x in direction(),
        y in direction(),
        c in (0.1..3.0f64, -3.0..3.0f64),
        d in (-2.0..-0.1f64, -1.0..1.0f64),
    ) {
        MODELS.with(|ms| {
            let m = &ms[which];
            let xy = m.curvature_bisectional(&p, &x, &y).unwrap();
            let yx = m.curvature_bisectional(&p, &y, &x).unwrap();
            prop_assert!((xy.b - yx.b).abs() < 1e-9);
            let cx: Vec<Complex64> = x.iter().map(|z| z * Complex64::new(c.0, c.1)).collect();
            let dy: Vec<Complex64> = y.iter().map(|z| z * Complex64::new(d.0, d.1)).collect();
            let scaled = m.curvature_bisectional(&p, &cx, &dy).unwrap();
            prop_assert!((scaled.b - xy.b).abs() < 1e-9);
            prop_assert!((0.0..=1.0).contains(&xy.s));
            prop_assert!((xy.t - (2.0 - xy.s - xy.b)).abs() < 1e-15);
            Ok(())
        })?;
    }

    #[test]
    fn projection_matches_oracle(which in 0usize..4, kind in 0usize..6, p in ball_point(0.5), x in direction(), y in direction()) {
        MODELS.with(|ms| {
            let m = &ms[which];
            let report = m.min_integrals(&p, &x, &y).unwrap();
            let (name, cons) = constraint_set(kind, 2, &x, &y);
            let oracle = min_integral_oracle(m, &p, &cons).unwrap();
            let projected = match name {
                "I0" => report.i0,
                "I1_X" => report.i1_x,
                "I1_X_given_Y" => report.i1_x_given_y,
                "I1_flag_last" => report.i1_flag[1],
                "I2_XY" => report.i2_xy,
                _ => f64::INFINITY,
            };
            if projected.is_infinite() {
                prop_assert!(oracle.is_infinite());
            } else {
                prop_assert!((oracle - projected).abs() <= 1e-8 * projected, "{name}: {oracle} vs {projected}");
            }
            Ok(())
        })?;
    }

    #[test]
    fn minimum_integrals_scale_with_direction(which in 0usize..4, p in ball_point(0.5), x in direction(), y in direction(), c in (0.2..4.0f64, -2.0..2.0f64)) {
        MODELS.with(|ms| {
            let m = &ms[which];
            let k = Complex64::new(c.0, c.1);
            let r = m.min_integrals(&p, &x, &y).unwrap();
            let cx: Vec<Complex64> = x.iter().map(|z| z * k).collect();
            let rs = m.min_integrals(&p, &cx, &y).unwrap();
            prop_assert!((rs.i1_x * k.norm_sqr() - r.i1_x).abs() < 1e-9 * r.i1_x);
            prop_assert!((rs.s - r.s).abs() < 1e-9 && (rs.t - r.t).abs() < 1e-9 && (rs.b - r.b).abs() < 1e-9);
            prop_assert!(r.i1_x <= r.i1_x_given_y);
            Ok(())
        })?;
    }

    #[test]
    fn series_kernel_transforms_under_automorphisms(m in 0usize..2, a in ball_point(0.3), z in ball_point(0.4)) {
        SERIES60.with(|ms| {
            let model = &ms[m];
            let f = BallAutomorphism::new(&a).unwrap();
            let fz = f.apply(&z).unwrap();
            let lhs = model.kernel_jet(&z).unwrap().k();
            let rhs = model.kernel_jet(&fz).unwrap().k() * f.det_jacobian(&z).unwrap().norm_sqr().powi(m as i32 + 1);
            prop_assert!((lhs - rhs).abs() < 1e-6 * lhs);
            Ok(())
        })?;
    }

    #[test]
    fn bisectional_is_invariant_under_automorphisms(m in 0usize..2, a in ball_point(0.3), p in ball_point(0.4), x in direction(), y in direction()) {
        SERIES60.with(|ms| {
            let model = &ms[m];
            let f = BallAutomorphism::new(&a).unwrap();
            let before = model.curvature_bisectional(&p, &x, &y).unwrap().b;
            let fp = f.apply(&p).unwrap();
            let after = model
                .curvature_bisectional(&fp, &f.push_forward(&p, &x).unwrap(), &f.push_forward(&p, &y).unwrap())
                .unwrap()
                .b;
            prop_assert!((before - after).abs() < 1e-6);
            Ok(())
        })?;
    }

    #[test]
    fn automorphisms_preserve_the_ball(a in ball_point(0.95), z in ball_point(0.99)) {
        let f = BallAutomorphism::new(&a).unwrap();
        prop_assert!(norm(&f.apply(&z).unwrap()) < 1.0);
    }

    #[test]
    fn ball_moments_scale(r in 0.3..2.0f64, m in 1u32..4) {
        let unit = build_moment_table(&ModelConfig::ball(2, 1.0, m).with_degree(6)).unwrap();
        let other = build_moment_table(&ModelConfig::ball(2, r, m).with_degree(6)).unwrap();
        // The level-m weight ((n+1)/R²)^{−(m−1)n}(1 − |z|²/R²)^{(m−1)(n+1)} adds r^{2(m−1)n}.
        let extra = r.powi(2 * (m as i32 - 1) * 2);
        for e in unit.entries().iter().step_by(3).take(10) {
            let expected = e.value * r.powi(2 * e.alpha.degree() as i32 + 4) * extra;
            prop_assert!((other.get(&e.alpha).unwrap() - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn closed_form_ball_is_consistent(m in 1u32..5, z in ball_point(0.9)) {
        let ball = BallClosedForms::new(1.0, m, 2).unwrap();
        let k = ball.kernel(&z).unwrap();
        let det = ball.det_metric(&z).unwrap();
        prop_assert!((ball.j(&z).unwrap() * k - det).abs() < 1e-10 * det);
    }
}
