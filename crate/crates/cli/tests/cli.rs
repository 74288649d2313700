use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zbconvex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(path)
        .expect("golden file")
        .trim_end()
        .to_string()
}

fn csv_header(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    stdout(&out).lines().next().unwrap_or_default().to_string()
}

#[test]
fn eval_at_origin_is_one() {
    let v = ok_json(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "0"]);
    assert_eq!(v["value"].as_f64(), Some(1.0));
}

#[test]
fn eval_gauss_value_at_one() {
    let v = ok_json(&["eval", "--a", "0.5", "--b", "0.5", "--c", "2", "--x", "1"]);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 4.0 / std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(v["route"], "gauss");
}

#[test]
fn eval_matches_agm_at_half() {
    // 2F1(1/2,1/2;1;x) = 1/agm(1, sqrt(1-x))
    let (mut p, mut q) = (1.0f64, 0.5f64.sqrt());
    for _ in 0..40 {
        (p, q) = (0.5 * (p + q), (p * q).sqrt());
    }
    let v = ok_json(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "0.5"]);
    let value = v["value"].as_f64().unwrap();
    assert!((value * p - 1.0).abs() < 1e-12, "{value} vs {}", 1.0 / p);
}

#[test]
fn eval_outside_domain_exits_two() {
    let out = run(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("zbconvex:"));
}

#[test]
fn thresholds_at_half_half() {
    let v = ok_json(&["thresholds", "--a", "0.5", "--b", "0.5"]);
    let get = |k: &str| v[k].as_f64().unwrap();
    assert!((get("R") - 16f64.ln()).abs() < 1e-12);
    assert_eq!(get("inv_sum"), 4.0);
    assert!((get("c_ab") - 3.2).abs() < 1e-15);
    assert!((get("delta_minus") - 8.0 / 3.0).abs() < 1e-8);
    assert!((get("delta_plus") - 8.0 / 3.0).abs() < 1e-8);
}

#[test]
fn thresholds_above_unit_sum_omit_extrema() {
    let v = ok_json(&["thresholds", "--a", "0.75", "--b", "0.75"]);
    assert!(v["alpha0"].is_null());
    assert!(v["R"].as_f64().is_some());
}

#[test]
fn thresholds_degenerate_names_r() {
    let out = run(&["thresholds", "--a", "0", "--b", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("R(a, b)"), "{}", stderr(&out));
}

fn classify(c: &str) -> Value {
    ok_json(&[
        "classify", "--a", "0.5", "--b", "0.5", "--c", c, "--target", "phi",
    ])
}

#[test]
fn classify_above_upper_threshold_is_concave() {
    assert_eq!(classify("3.3")["curvature"]["verdict"], "concave");
}

#[test]
fn classify_below_lower_threshold_is_convex_and_increasing() {
    let v = classify("2.5");
    assert_eq!(v["curvature"]["verdict"], "convex");
    assert_eq!(v["monotonicity"]["verdict"], "increasing");
}

#[test]
fn classify_between_thresholds_is_neither_with_witnesses() {
    let v = classify("3");
    assert_eq!(v["curvature"]["verdict"], "neither");
    assert_eq!(v["monotonicity"]["verdict"], "neither");
    assert!(v["curvature"]["witness"].as_f64().is_some());
    assert!(v["monotonicity"]["witness"].as_f64().is_some());
}

#[test]
fn classify_small_grid_exits_two() {
    let out = run(&[
        "classify", "--a", "0.5", "--b", "0.5", "--c", "3", "--grid", "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sandwich_passes() {
    let v = ok_json(&["verify", "--suite", "sandwich"]);
    assert!(v["counts"]["run"].as_u64().unwrap() > 0);
}

#[test]
fn verify_f_sum_passes_with_factor_note() {
    let v = ok_json(&["verify", "--suite", "corollary2", "--grid", "128"]);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("factor 4.0")));
    let violations = v["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations.iter().all(|x| x["known_discrepancy"] == true));
}

#[test]
fn verify_zero_grid_runs_nothing() {
    let v = ok_json(&["verify", "--suite", "all", "--grid", "0"]);
    assert_eq!(v["counts"]["run"], 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_unknown_suite_exits_two() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# small run\nsuite = sandwich\ngrid = 32\n").unwrap();
    let v = ok_json(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(v["suite"], "sandwich");
    assert_eq!(v["grid"]["points"], 32);
}

#[test]
fn verify_bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "grid = many\n").unwrap();
    let out = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("absent.conf");
    let out = run(&["verify", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_first_d_coefficient() {
    let out = run(&[
        "series",
        "--family",
        "g_final_d",
        "--n",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first = text.lines().nth(1).unwrap();
    let value: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 0.2593).abs() < 1e-4);
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn series_order_zero_is_log16() {
    let out = run(&[
        "series", "--family", "R_series", "--n", "0", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let value: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 16f64.ln()).abs() < 1e-15);
}

#[test]
fn series_f_coefficients_carry_note() {
    let v = ok_json(&["series", "--family", "f_final_b", "--n", "1"]);
    assert_eq!(v["values"].as_array().unwrap().len(), 2);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("0.919")));
}

#[test]
fn series_invalid_family_or_order_exits_two() {
    assert_eq!(
        run(&["series", "--family", "nope", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["series", "--family", "R_series", "--n", "201"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_output_is_deterministic() {
    let args = ["thresholds", "--a", "0.3", "--b", "0.4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--suite", "phi_sum", "--grid", "64"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = run(&[
        "thresholds",
        "--a",
        "0.5",
        "--b",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["R"].as_f64().unwrap() - 16f64.ln()).abs() < 1e-12);
}

#[test]
fn csv_headers_match_golden() {
    let cases: [(&str, &[&str]); 5] = [
        (
            "eval.csv.header",
            &["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "0.5"],
        ),
        (
            "thresholds.csv.header",
            &["thresholds", "--a", "0.5", "--b", "0.5"],
        ),
        (
            "classify.csv.header",
            &["classify", "--a", "0.5", "--b", "0.5", "--c", "3"],
        ),
        (
            "series.csv.header",
            &["series", "--family", "R_series", "--n", "0"],
        ),
        (
            "verify.csv.header",
            &["verify", "--suite", "sandwich", "--grid", "16"],
        ),
    ];
    for (file, args) in cases {
        let mut args = args.to_vec();
        args.extend(["--format", "csv"]);
        assert_eq!(csv_header(&args), golden(file), "{file}");
    }
}

#[test]
fn csv_floats_use_seventeen_digits() {
    let out = run(&[
        "eval", "--a", "0.5", "--b", "0.5", "--c", "2", "--x", "1", "--format", "csv",
    ]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert_eq!(row.split(',').nth(4).unwrap(), "1.2732395447351628e0");
}

#[test]
fn json_report_keys_are_fixed() {
    let out = run(&["verify", "--suite", "sandwich", "--grid", "16"]);
    let text = stdout(&out);
    let top: Vec<usize> = ["suite", "grid", "counts", "violations", "notes"]
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).expect(k))
        .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]), "{top:?}");
}
