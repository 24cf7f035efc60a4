use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gframe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gframe")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = gframe(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn fixture_file(dir: &TempDir, name: &str) -> PathBuf {
    let p = dir.path().join(format!("{name}.json"));
    report(&["fixtures", "--name", name, "--out", s(&p)]);
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const IDENTITY_3: &str = r#"{"d":3,"k":[3],"blocks":[[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]]}"#;
const NOT_RS: &str = r#"{"d":2,"k":[1,1],"blocks":[[[[1,0],[0,0]]],[[[2,0],[0,0]]]]}"#;
// Three unit-norm rank-one coisometries on C^2: uniform projective.
const UNIFORM: &str = r#"{"d":2,"k":[1,1,1],"blocks":[[[[1,0],[0,0]]],[[[0,0],[1,0]]],[[[0.6,0],[0.8,0]]]]}"#;

#[test]
fn analyze_ex62_is_projective_with_bounds_one_two() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    let r = report(&["analyze", s(&p)]);
    assert_eq!(r["command"], "analyze");
    let c = &r["outputs"]["classification"];
    assert_eq!(c["is_projective"], true);
    assert_eq!(c["is_rs"], true);
    assert!((f(&c["lower_bound"]) - 1.0).abs() < 1e-12);
    assert!((f(&c["upper_bound"]) - 2.0).abs() < 1e-12);
    assert!(r["outputs"]["wce_condition"]["holds"].is_boolean());
}

#[test]
fn analyze_identity_is_protocol() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "id.json", IDENTITY_3);
    let r = report(&["analyze", s(&p)]);
    assert_eq!(r["outputs"]["classification"]["is_protocol"], true);
    assert_eq!(r["outputs"]["classification"]["is_riesz"], true);
}

#[test]
fn analyze_reports_non_rs_in_band() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", NOT_RS);
    let r = report(&["analyze", s(&p)]);
    assert_eq!(r["outputs"]["is_rs"], false);
}

#[test]
fn malformed_json_exits_two_with_location() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "broken.json", "{\"d\": 2,\n \"k\": [1,");
    let out = gframe(&["analyze", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn schema_violations_exit_two() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "wrong.json", r#"{"d":2,"k":[2],"blocks":[[[[1,0],[0,0]]]]}"#);
    assert_eq!(gframe(&["analyze", s(&p)]).status.code(), Some(2));
    let p = write(&dir, "extra.json", r#"{"d":1,"k":[1],"blocks":[[[[1,0]]]],"x":0}"#);
    assert_eq!(gframe(&["analyze", s(&p)]).status.code(), Some(2));
    assert_eq!(gframe(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(gframe(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_three() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", NOT_RS);
    let out = gframe(&["dual", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    // Two-error dual on a non-projective system.
    let gen = write(&dir, "gen.json", r#"{"d":2,"k":[2],"blocks":[[[[1,0],[0,0]],[[0,0],[2,0]]]]}"#);
    assert_eq!(gframe(&["dual", s(&gen), "--kind", "two-error"]).status.code(), Some(3));
    assert_eq!(gframe(&["dual", s(&gen), "--kind", "two-error", "--tolerance", "-1"]).status.code(), Some(2));
}

#[test]
fn fixtures_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let list = report(&["fixtures"]);
    let names: Vec<String> = list["outputs"]["fixtures"].as_object().unwrap().keys().cloned().collect();
    assert!(names.len() >= 5);
    for name in names {
        let p = fixture_file(&dir, &name);
        let a = report(&["analyze", s(&p), "--tolerance", "1e-8"]);
        let listed = &list["outputs"]["fixtures"][&name];
        assert_eq!(a["inputs"]["system"], listed["system"], "{name}");
        let direct = report(&["fixtures", "--name", &name, "--tolerance", "1e-8"]);
        assert_eq!(a["outputs"]["classification"], direct["outputs"]["classification"], "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex63");
    let a = gframe(&["dual", s(&p), "--kind", "wce", "--iterations", "300", "--seed", "7"]);
    let b = gframe(&["dual", s(&p), "--kind", "wce", "--iterations", "300", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn two_error_dual_of_uniform_system_is_canonical() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "u.json", UNIFORM);
    let two = report(&["dual", s(&p), "--kind", "two-error"]);
    let can = report(&["dual", s(&p), "--kind", "canonical"]);
    assert_eq!(two["outputs"]["verified"], true);
    let flat = |v: &Value| -> Vec<f64> {
        let mut out = Vec::new();
        fn walk(v: &Value, out: &mut Vec<f64>) {
            match v {
                Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
                Value::Number(n) => out.push(n.as_f64().unwrap()),
                _ => {}
            }
        }
        walk(&v["outputs"]["dual"]["blocks"], &mut out);
        out
    };
    for (x, y) in flat(&two).iter().zip(flat(&can)) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn wce_dual_does_not_exceed_canonical_worst_case() {
    let dir = TempDir::new().unwrap();
    for name in ["ex62", "ex63", "ex63_enlarged"] {
        let p = fixture_file(&dir, name);
        let r = report(&["dual", s(&p), "--kind", "wce", "--iterations", "500"]);
        assert_eq!(r["outputs"]["verified"], true, "{name}");
        let wce = f(&r["outputs"]["errors"]["worst_case"]);
        let canon = f(&r["outputs"]["canonical_errors"]["worst_case"]);
        assert!(wce <= canon + 1e-12, "{name}: {wce} > {canon}");
    }
}

#[test]
fn erase_nothing_reconstructs_exactly() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex63");
    let r = report(&["erase", s(&p), "--signal", "[1, [0, 2], -3, 0.5]"]);
    assert!(f(&r["outputs"]["error_norm"]) < 1e-12);
    assert!((f(&r["outputs"]["signal_norm"]) - (1.0f64 + 4.0 + 9.0 + 0.25).sqrt()).abs() < 1e-12);
}

#[test]
fn erase_all_loses_the_signal() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    let r = report(&["erase", s(&p), "--mask", "1,2", "--seed", "3"]);
    assert!((f(&r["outputs"]["error_norm"]) - 1.0).abs() < 1e-12);
    assert!(f(&r["outputs"]["reconstruction"][0][0]).abs() < 1e-15);
}

#[test]
fn erase_single_packet_matches_prediction_with_custom_dual() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    let w = fixture_file(&dir, "ex62_omega_dual");
    let r = report(&["erase", s(&p), "--dual", s(&w), "--mask", "2", "--signal", "[1,2,3]"]);
    assert_eq!(r["outputs"]["dual_verified"], true);
    let e = f(&r["outputs"]["error_norm"]);
    assert!((e - f(&r["outputs"]["predicted_error_norm"])).abs() < 1e-12);
    assert!(e > 0.0);
}

#[test]
fn erase_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    assert_eq!(gframe(&["erase", s(&p), "--mask", "3"]).status.code(), Some(2));
    assert_eq!(gframe(&["erase", s(&p), "--mask", "0"]).status.code(), Some(2));
    assert_eq!(gframe(&["erase", s(&p), "--signal", "[1,2]"]).status.code(), Some(2));
    let w = fixture_file(&dir, "ex63");
    assert_eq!(gframe(&["erase", s(&p), "--dual", s(&w)]).status.code(), Some(2));
}

#[test]
fn truncate_reports_invertibility() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex63_enlarged");
    let r = report(&["truncate", s(&p), "--drop", "3"]);
    assert_eq!(r["outputs"]["is_rs_after"], true);
    assert!(r["outputs"]["truncated_canonical_dual"].is_object());
    assert!(f(&r["outputs"]["lower_bound_estimate"]) > 0.0);

    let p = fixture_file(&dir, "ex62");
    let r = report(&["truncate", s(&p), "--drop", "1"]);
    assert_eq!(r["outputs"]["is_rs_after"], false);
    assert!(r["outputs"]["truncated_canonical_dual"].is_null());
    assert_eq!(r["outputs"]["ck_condition"]["holds"], false);
    assert_eq!(gframe(&["truncate", s(&p), "--drop", "1,2"]).status.code(), Some(2));
}

#[test]
fn approx_of_projective_system_is_itself() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    let r = report(&["approx", s(&p)]);
    assert!(f(&r["outputs"]["distance"]) < 1e-12);
    assert_eq!(r["outputs"]["classification"]["is_projective"], true);
}

#[test]
fn floats_print_with_seventeen_digits_and_sorted_keys() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(&dir, "ex62");
    let out = gframe(&["analyze", s(&p)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(r#"{"command":"analyze","inputs":"#), "{text}");
    assert!(text.contains("1.0000000000000000e0"));
    assert!(text.contains(r#""tolerances":{"tolerance":1.0000000000000001e-9}"#));
}
