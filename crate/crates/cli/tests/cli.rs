use std::process::{Command, Output};

use serde_json::Value;

fn acf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acf"))
        .args(args)
        .env_remove("ACF_NUM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bound_json_document() {
    let o = acf(&["bound", "--gamma", "0.5", "--xi", "-1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["inputs", "results", "meta"]);
    assert_eq!(v["inputs"]["gamma"].as_f64(), Some(0.5));
    let e = v["results"]["rows"][0]["energy"].as_f64().unwrap();
    assert!((e + 0.5).abs() < 1e-12);
    assert_eq!(v["meta"]["command"], "bound");
    assert!(v["meta"]["version"].is_string());
    assert!(!v["meta"]["equations"].as_array().unwrap().is_empty());
}

#[test]
fn scatter_csv_header_and_rows() {
    let o = acf(&["scatter", "--ma", "0.5", "--p", "1", "--points", "7"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "phi,re_f1,im_f1,re_f2,im_f2,dsigma");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    for r in &rows {
        // sin²(π/2) = 1 at p = 1
        let want = 1.0 / (2.0 * std::f64::consts::PI * (r[0] / 2.0).sin().powi(2));
        assert!(((r[5] - want) / want).abs() < 1e-12);
        assert!(
            (r[1] * r[1] + r[2] * r[2] + r[3] * r[3] + r[4] * r[4] - r[5]).abs() < 1e-12 * r[5]
        );
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "scatter", "--ma", "1.3", "--p", "2", "--spin", "x:-1", "--points", "50",
    ];
    let a = acf(&args);
    let b = acf(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_acf"))
        .args(args)
        .env("ACF_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert!(c.status.success());
    assert_eq!(a.stdout, c.stdout);
    let f = [
        "flow",
        "--etarget",
        "-1",
        "--rmin",
        "1e-5",
        "--rmax",
        "1e-1",
    ];
    assert_eq!(acf(&f).stdout, acf(&f).stdout);
}

#[test]
fn bad_thread_count_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_acf"))
        .args(["classify", "--ma", "0.5"])
        .env("ACF_NUM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    // out-of-domain argument
    assert_eq!(
        acf(&["bound", "--gamma", "1.5", "--xi", "-1"])
            .status
            .code(),
        Some(2)
    );
    // no bound state for positive xi
    assert_eq!(
        acf(&["bound", "--gamma", "0.5", "--xi", "1"]).status.code(),
        Some(2)
    );
    // matching equation without a root
    assert_eq!(
        acf(&["shell", "--ma", "1.3", "--R", "1e-3", "--method", "exact"])
            .status
            .code(),
        Some(1)
    );
    // unknown subcommand and missing arguments
    assert_eq!(acf(&["nope"]).status.code(), Some(2));
    assert_eq!(acf(&["scatter", "--ma", "0.5"]).status.code(), Some(2));
    assert_eq!(
        acf(&["scatter", "--ma", "0.5", "--p", "-1"]).status.code(),
        Some(2)
    );
    // gnuplot needs a CSV file
    assert_eq!(
        acf(&["--emit-gnuplot", "scatter", "--ma", "0.5", "--p", "1"])
            .status
            .code(),
        Some(2)
    );
    // unwritable destination
    assert_eq!(
        acf(&[
            "--output",
            "/nonexistent/dir/x.csv",
            "classify",
            "--ma",
            "0.5"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn gnuplot_script_next_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("flow.csv");
    let o = acf(&[
        "--output",
        out.to_str().unwrap(),
        "--format",
        "csv",
        "--emit-gnuplot",
        "flow",
        "--etarget",
        "-1",
        "--rmin",
        "1e-4",
        "--rmax",
        "1e-1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.lines().count() >= 5);
    let gp = std::fs::read_to_string(dir.path().join("flow.gp")).unwrap();
    assert!(gp.contains("'flow.csv'"));
    assert!(gp.contains("set logscale x"));
}

#[test]
fn json_and_csv_carry_same_rows() {
    let base = ["polescan", "--xi", "-1", "--gamma", "0.5", "--points", "9"];
    let csv = stdout(&acf(&base));
    let mut args = vec!["--format", "json"];
    args.extend(base);
    let v: Value = serde_json::from_str(&stdout(&acf(&args))).unwrap();
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(csv.lines().count(), rows.len() + 1);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let first: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    for (h, x) in header.iter().zip(&first) {
        assert_eq!(rows[0][*h].as_f64(), Some(*x));
    }
}

#[test]
fn specfun_values() {
    let o = acf(&["specfun", "--function", "k", "--nu", "0.5", "--x", "1,2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let vals: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    for (x, v) in [1.0f64, 2.0].iter().zip(&vals) {
        let want = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!(((v - want) / want).abs() < 1e-12);
    }
}

#[test]
fn check_command_passes() {
    let o = acf(&["check"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.lines().count() > 5);
    assert!(!s.contains("FAIL"));
}
