use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bergman-lab"));
    cmd.env_remove("BERGMAN_LAB_MAX_N");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_bergman_fuks_passes() {
    let out = run(&["verify", "--suite", "bergman-fuks", "--model", "ball", "--n", "2", "--m", "1", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "verify");
    let r = &v["result"];
    assert_eq!(r["suite"], "bergman-fuks");
    assert_eq!(r["cases"], 50);
    assert_eq!(r["pass"], true);
    assert!(r["max_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["verify", "--suite", "oracle", "--model", "polydisc", "--n", "2", "--seed", "3", "--cases", "12"][..],
        &[
            "curvature",
            "--model",
            "ball",
            "--n",
            "2",
            "--m",
            "2",
            "--point",
            "0.1+0.2i,-0.3",
            "--x",
            "1,0",
            "--y",
            "1,1i",
        ][..],
        &["moments", "--model", "ellipsoid", "--exponents", "2,1", "--radii", "1,0.8", "--N", "3", "--format", "csv"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["verify", "--suite", "closed-form", "--seed", "1", "--cases", "3"]);
    let b = run(&["verify", "--suite", "closed-form", "--seed", "2", "--cases", "3"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn curvature_report_schema() {
    let out = run(&["curvature", "--model", "ball", "--n", "2", "--point", "0.2,0.1i", "--x", "1,0", "--y", "0,1"]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    for key in ["B", "H", "S", "T", "ricci", "J", "J_tilde", "cos2", "N_used"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let cos2 = r["cos2"].as_f64().unwrap();
    assert!((r["B"].as_f64().unwrap() + (1.0 + cos2) / 3.0).abs() < 1e-8);
}

#[test]
fn moments_csv_layout() {
    let out = run(&["moments", "--model", "ball", "--n", "2", "--N", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha_1,alpha_2,value,provenance");
    assert_eq!(lines.len(), 7);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[..2], ["0", "0"]);
    // 17 significant digits in scientific notation.
    assert_eq!(first[2], "4.9348022005446790e0");
    assert_eq!(first[3], "closed_form");
}

#[test]
fn bounds_degenerate_at_s_one() {
    let out = run(&["bounds", "--s", "1.0", "--m", "1", "--n", "1"]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    assert_eq!(r["lower"], 0.0);
    assert_eq!(r["upper"], 0.0);
    let out = run(&["bounds", "--s", "0.9", "--n", "1", "--b", "3.0"]);
    assert_eq!(out.status.code(), Some(1));
    let grid = run(&["bounds", "--grid"]);
    let text = String::from_utf8(grid.stdout).unwrap();
    assert!(text.starts_with("s,m,n,D_m,lower,upper,holomorphic_lower,holomorphic_upper"));
    assert_eq!(text.lines().count(), 1 + 11 * 5 * 3);
}

#[test]
fn jtilde_trend_output() {
    let out = run(&["trend", "--quantity", "Jtilde", "--n", "1", "--m-max", "50"]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    let values = r["values"].as_array().unwrap();
    assert_eq!(values.len(), 50);
    let last = r["last"].as_f64().unwrap();
    assert!((last - 0.946).abs() < 5e-4, "{last}");
    // The sequence dips below its limit before rising again.
    assert_eq!(r["monotone_increasing_from_2"], false);
    assert_eq!(r["decreases"].as_array().unwrap().len(), 8);
}

#[test]
fn failing_suite_exits_one() {
    let out = run(&["verify", "--suite", "trend"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("suite trend failed"));
}

#[test]
fn errors_exit_two_with_context() {
    let out = run(&["curvature", "--n", "1", "--point", "0.99"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("boundary") && err.contains("p=(0.99+0i)") && err.contains("N=20"), "{err}");

    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["kernel", "--point", "0.9"]).env("BERGMAN_LAB_MAX_N", "30").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not converge up to degree 30"));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{
            "model": {
                "domain": {"kind": "polydisc", "radii": [1.0, 0.5]},
                "weight": {"kind": {"kind": "unweighted"}, "level": 1},
                "truncation_degree": 10
            },
            "point": [[0.1, 0.0], [0.0, 0.2]],
            "seed": 99
        }"#,
    )
    .unwrap();
    let path = cfg.to_str().unwrap();
    let out = run(&["kernel", "--config", path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["config"]["model"]["truncation_degree"], 10);
    assert_eq!(v["config"]["seed"], 99);
    let k = v["result"]["K"].as_f64().unwrap();
    let exact = 1.0 / (std::f64::consts::PI * (1.0 - 0.01f64).powi(2)) * 0.25
        / (std::f64::consts::PI * (0.25 - 0.04f64).powi(2));
    assert!((k - exact).abs() < 1e-9 * exact);

    let out_path = dir.path().join("k.json");
    let out = run(&["kernel", "--config", path, "--N", "30", "--seed", "5", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["config"]["model"]["truncation_degree"], 30);
    assert_eq!(v["config"]["seed"], 5);

    std::fs::write(&cfg, r#"{"modle": 1}"#).unwrap();
    let out = run(&["kernel", "--config", path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config parse error"));
}

#[test]
fn verify_csv_and_all() {
    let out = run(&["verify", "--suite", "golden-values", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite,cases,max_residual,pass,failed_cases\ngolden-values,1,"));
    let out = run(&["verify", "--suite", "all", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
}
