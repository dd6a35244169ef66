//! End-to-end checks of the binary: JSON shape, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diskalg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).expect("stdout is utf-8");
    serde_json::from_str(&text).expect("stdout is one JSON document")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("diskalg-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn classify_reports_hyperbolic_fixed_point_data() {
    let out = run(&["classify", "--theta", "0", "--z0-re", "-0.5", "--z0-im", "0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["class"], "hyperbolic");
    assert!((v["margin"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let fps: Vec<(f64, f64)> = v["fixed_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    assert_eq!(fps.len(), 2);
    for want in [(-1.0, 0.0), (1.0, 0.0)] {
        assert!(fps
            .iter()
            .any(|&(re, im)| (re - want.0).abs() < 1e-12 && (im - want.1).abs() < 1e-12));
    }
    let mults: Vec<f64> = v["multipliers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_f64().unwrap())
        .collect();
    assert!(mults.iter().any(|&m| (m - 3.0).abs() < 1e-12));
    assert!(mults.iter().any(|&m| (m - 1.0 / 3.0).abs() < 1e-12));
}

#[test]
fn classify_recognizes_identity_and_elliptic() {
    let id = stdout_json(&run(&[
        "classify", "--theta", "0", "--z0-re", "0", "--z0-im", "0",
    ]));
    assert_eq!(id["class"], "identity");
    assert!(id.get("fixed_points").is_none());

    let ell = stdout_json(&run(&[
        "classify", "--theta", "0.25", "--z0-re", "0", "--z0-im", "0",
    ]));
    assert_eq!(ell["class"], "elliptic");
    assert_eq!(ell["fixed_points"].as_array().unwrap().len(), 1);
}

#[test]
fn exterior_zero_parameter_exits_2_with_error_object() {
    let out = run(&["classify", "--theta", "0", "--z0-re", "1.5", "--z0-im", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["code"], 2);
    assert!(v["message"].as_str().unwrap().contains("domain"));
}

#[test]
fn argument_parse_failure_exits_3_with_error_object() {
    let out = run(&["classify", "--theta", "abc", "--z0-re", "0", "--z0-im", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(v["code"], 3);
    assert!(v["message"].as_str().unwrap().contains("theta"));
}

#[test]
fn orbit_emits_the_expected_segment() {
    let out = run(&[
        "orbit", "--theta", "0", "--z0-re", "-0.5", "--z0-im", "0", "--x", "0", "--range", "-2",
        "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["range"], serde_json::json!([-2, 2]));
    let pts = v["points"].as_array().unwrap();
    let want = [-0.8, -0.5, 0.0, 0.5, 0.8];
    assert_eq!(pts.len(), want.len());
    for (p, w) in pts.iter().zip(want) {
        assert!((p[0].as_f64().unwrap() - w).abs() < 1e-12);
        assert!(p[1].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "rep-check", "--kind", "hyperbolic", "--x", "0.3+0.1i", "--seed", "11", "--N-list",
        "8,16",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn normal_form_reports_the_hyperbolic_invariant() {
    let v = stdout_json(&run(&[
        "normal-form", "--theta", "0", "--z0-re", "-0.5", "--z0-im", "0",
    ]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["invariant"]["kind"], "hyperbolic");
    assert!((v["invariant"]["a"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn conjugacy_pairs_stay_in_the_disk_and_commute_with_the_maps() {
    let v = stdout_json(&run(&[
        "conjugacy",
        "--a-phi",
        "0.3333333333333333",
        "--a-psi",
        "0.6666666666666666",
        "--samples",
        "16",
    ]));
    assert!(v["equivariance_residual"].as_f64().unwrap() < 1e-8);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 16);
    for pair in pairs {
        for end in pair.as_array().unwrap() {
            let re = end[0].as_f64().unwrap();
            let im = end[1].as_f64().unwrap();
            assert!(re.hypot(im) <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn rep_check_covariance_residual_is_rounding_level() {
    let v = stdout_json(&run(&[
        "rep-check", "--kind", "hyperbolic", "--x", "0.2i", "--N", "20",
    ]));
    let row = &v["rows"][0];
    assert_eq!(row["N"], 20);
    assert_eq!(row["dim"], 41);
    assert!(row["covariance_residual"].as_f64().unwrap() < 1e-13);
    // The generator acts by multiplication with orbit points, all inside
    // the closed disk.
    assert!(row["norm"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn rep_check_rational_model_satisfies_the_twisted_relation() {
    let v = stdout_json(&run(&[
        "rep-check", "--kind", "rational", "--p", "1", "--q", "3", "--N-list", "4", "8",
    ]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row["dim"], 3);
        assert!(row["relation_residual"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn symbol_of_the_shift_generator_is_a_monomial_pair() {
    let path = temp_file(
        "element.json",
        r#"{"terms":[{"n":1,"expr":{"const":[1.0,0.0]}}]}"#,
    );
    let v = stdout_json(&run(&["symbol", "--a", "0.5", "--in", path.to_str().unwrap()]));
    std::fs::remove_file(&path).ok();
    assert_eq!(v["element_support"], serde_json::json!([1]));
    assert_eq!(
        v["plus"]["terms"],
        serde_json::json!([{"c": [1.0, 0.0], "n": 1}])
    );
    assert_eq!(
        v["minus"]["terms"],
        serde_json::json!([{"c": [1.0, 0.0], "n": -1}])
    );
}

#[test]
fn spectrum_closure_adds_the_boundary_circles() {
    let path = temp_file(
        "set.json",
        r#"{"model":"hyperbolic","points":[{"kind":"orbit_class","u":0.4,"omega":[1.0,0.0]}],"flags":[]}"#,
    );
    let out = run(&[
        "spectrum-closure",
        "--model",
        "hyperbolic",
        "--in",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["flags"], serde_json::json!(["all_boundary_chars"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 1);

    let mismatch = run(&[
        "spectrum-closure",
        "--model",
        "parabolic",
        "--in",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(mismatch.status.code(), Some(1));
    assert_eq!(stdout_json(&mismatch)["code"], 1);
}

#[test]
fn verbose_summary_goes_to_stderr_not_stdout() {
    let out = bin()
        .args(["classify", "--theta", "0", "--z0-re", "-0.5", "--z0-im", "0", "--verbose"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    stdout_json(&out);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("hyperbolic"));
}
