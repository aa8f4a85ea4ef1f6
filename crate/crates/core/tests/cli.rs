use std::process::{Command, Output};

use serde_json::Value;

fn xell(args: &[&str]) -> Output {
    xell_env(args, None)
}

fn xell_env(args: &[&str], scale: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xell"));
    cmd.args(args).env_remove("XELL_TOL_SCALE");
    if let Some(s) = scale {
        cmd.env("XELL_TOL_SCALE", s);
    }
    cmd.output().expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

#[test]
fn eval_records() {
    let out = xell(&[
        "eval", "--family", "L1", "--ell", "1", "--n", "0", "--g", "1", "--x", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["P"].as_f64(), Some(2.5));

    let out = xell(&[
        "eval", "--family", "L2", "--ell", "3", "--n", "2", "--g", "1.5", "--x", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["E"].as_f64(), Some(8.0));
    for key in ["P", "phi", "U"] {
        assert!(v[key].as_f64().unwrap().is_finite(), "{key}");
    }
}

#[test]
fn eval_rejects_bad_input_with_distinct_codes() {
    let out = xell(&[
        "eval", "--family", "J1", "--ell", "1", "--n", "0", "--g", "2", "--h", "1", "--x", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("h > g > 0"));
    let out = xell(&[
        "eval", "--family", "J2", "--ell", "1", "--g", "2", "--h", "1", "--x", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = xell(&["eval", "--family", "Q3", "--g", "1", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = xell(&[
        "eval", "--family", "L1", "--ell", "1", "--g", "0", "--x", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g > 0"));
}

#[test]
fn coeffs_records() {
    let out = xell(&[
        "coeffs", "--family", "L1", "--ell", "1", "--n", "0", "--g", "1",
    ]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["degree"].as_i64(), Some(1));
    let c: Vec<f64> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(c, vec![2.5, 1.0]);

    let out = xell(&[
        "coeffs", "--family", "L2", "--ell", "1", "--n", "0", "--g", "1",
    ]);
    let c: Vec<f64> = json_lines(&out)[0]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(c, vec![-2.5, -1.0]);

    for a in [
        vec!["coeffs", "--family", "L", "--n", "0", "--g", "2"],
        vec![
            "coeffs", "--family", "J", "--n", "0", "--g", "1", "--h", "2",
        ],
    ] {
        let out = xell(&a);
        assert_eq!(out.status.code(), Some(0), "{a:?}");
        assert_eq!(json_lines(&out)[0]["coeffs"], serde_json::json!([1.0]));
    }

    let out = xell(&[
        "coeffs", "--family", "J2", "--ell", "2", "--n", "3", "--g", "3", "--h", "1", "--format",
        "csv",
    ]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(text.lines().next(), Some("power,coefficient"));
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn table_records() {
    let out = xell(&[
        "table", "--family", "L1", "--ell", "1", "--g", "1", "--n-max", "0",
    ]);
    let v = &json_lines(&out)[0];
    assert!((v["norm_closed"].as_f64().unwrap() - 1.107_783_6).abs() < 1e-7);
    assert!((v["norm_quadrature"].as_f64().unwrap() - 1.107_783_6).abs() < 1e-7);
    assert!(v["gap"].as_f64().unwrap() < 1e-8);

    let out = xell(&["table", "--family", "L", "--g", "2", "--n-max", "2"]);
    let e: Vec<f64> = json_lines(&out)
        .iter()
        .map(|r| r["E"].as_f64().unwrap())
        .collect();
    assert_eq!(e, vec![0.0, 4.0, 8.0]);

    let out = xell(&[
        "table", "--family", "J2", "--ell", "2", "--g", "3", "--h", "1", "--n-max", "2",
    ]);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["gap"].as_f64().unwrap() < 1e-8));
}

#[test]
fn quick_battery() {
    let out = xell(&["check", "all", "--quick"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports = json_lines(&out);
    assert!((25..=40).contains(&reports.len()), "{}", reports.len());
    for r in &reports {
        for key in ["check", "params", "metric", "tolerance", "pass"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["pass"], Value::Bool(true));
    }
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(
        summary.contains(&format!("{} passed, 0 failed", reports.len())),
        "{summary}"
    );
}

#[test]
fn targeted_checks() {
    let out = xell(&[
        "check", "mirror", "--ell", "2", "--n", "3", "--g", "2", "--h", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["pass"], Value::Bool(true));

    let out = xell(&[
        "check", "limit", "--pair", "J2L1", "--ell", "2", "--n", "1", "--g", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let slope = json_lines(&out)[0]["details"]["slope"].as_f64().unwrap();
    assert!((0.8..=1.2).contains(&slope), "{slope}");

    let out = xell(&["check", "mirror", "--ell", "1", "--g", "0.5", "--h", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_scale_environment() {
    let args = [
        "check", "shape", "--family", "L1", "--ell", "3", "--g", "1.2",
    ];
    assert_eq!(xell_env(&args, Some("1")).status.code(), Some(0));
    // 1e-9 scaled by 1e-12 is below round-off, so the same check must fail
    let out = xell_env(&args, Some("1e-12"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        json_lines(&out)[0]["tolerance"].as_f64(),
        Some(1e-9 * 1e-12)
    );
    assert_eq!(xell_env(&args, Some("zero")).status.code(), Some(2));
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let base = [
        "check", "eigen", "--family", "J1", "--ell", "2", "--n", "2", "--g", "1", "--h", "2.5",
    ];
    let json = json_lines(&xell(&base));
    let mut csv_args = base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = xell(&csv_args);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check,params,metric,tolerance,pass,max,rms")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let r = &json[0];
    for (i, key) in [(2, "metric"), (3, "tolerance"), (5, "max"), (6, "rms")] {
        let a: f64 = row[i].parse().unwrap();
        let b = r[key].as_f64().unwrap();
        assert_eq!(format!("{a:.14e}"), format!("{b:.14e}"), "{key}");
    }
    assert_eq!(row[4], "true");
}
