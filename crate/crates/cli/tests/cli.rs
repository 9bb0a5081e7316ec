//! End-to-end tests of the `affop` binary: exit-code contract, output
//! shapes, and round-tripping of emitted documents.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn affop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affop"))
        .args(args)
        .output()
        .expect("failed to launch affop")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_flagship() {
    let out = affop(&["classify", &fixture("shear_no_fixed_point.affop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("no-fixed-point"), "{text}");
    assert!(text.contains("(x-1)^2"), "{text}");
    assert!(text.contains("[]"), "{text}");
}

#[test]
fn classify_fixed_point_with_witness() {
    let out = affop(&["classify", &fixture("scalar_one.affop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fixed-point"), "{text}");
    assert!(text.contains("invariant factors: (x-1)"), "{text}");
    assert!(text.contains("fixed point:"), "{text}");
}

#[test]
fn classify_json_schema() {
    let out = affop(&["classify", "--json", &fixture("shear_no_fixed_point.affop.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], "no-fixed-point");
    assert_eq!(v["q_star"]["text"], "(x-1)^2");
    assert_eq!(v["q_star"]["coefficients"], serde_json::json!(["1", "-2", "1"]));
    assert_eq!(v["partition"], serde_json::json!([]));

    let out = affop(&["classify", "--json", &fixture("shear_fixed.affop.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], "fixed-point");
    assert!(v["invariant_factors"].is_array());
    assert!(v["fixed_point"].is_array());
}

#[test]
fn classify_rejects_malformed_rational() {
    let out = affop(&["classify", &fixture("bad_rational.affop.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("matrix[0][0]"), "{err}");
}

#[test]
fn conjugate_flagship_pair() {
    let out = affop(&[
        "conjugate",
        &fixture("shear_no_fixed_point.affop.json"),
        &fixture("translation.affop.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("CONJUGATE"));
}

#[test]
fn conjugate_negative_with_explanation() {
    let out = affop(&[
        "conjugate",
        "--explain",
        &fixture("shear_fixed.affop.json"),
        &fixture("identity2.affop.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("NOT CONJUGATE"), "{text}");
    assert!(text.contains("invariant factors differ"), "{text}");
}

#[test]
fn conjugate_dimension_mismatch_is_negative_not_error() {
    let out = affop(&[
        "conjugate",
        &fixture("scalar_one.affop.json"),
        &fixture("identity2.affop.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn canon_flagship() {
    let out = affop(&["canon", "--json", &fixture("shear_no_fixed_point.affop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["representative"]["matrix"],
        serde_json::json!([["1", "0"], ["0", "1"]])
    );
    assert_eq!(v["representative"]["translation"], serde_json::json!(["1", "0"]));
}

#[test]
fn reduce_mixed_projection() {
    let out = affop(&["reduce", "--json", &fixture("mixed_projection.affop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness"]["shift"], serde_json::json!(["0", "1"]));
    assert_eq!(v["reduced"]["translation"], serde_json::json!(["1", "0"]));

    // an operator with a fixed point is rejected with exit 1
    let out = affop(&["reduce", &fixture("identity2.affop.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("conjugate to its linear part"));
}

#[test]
fn selftest_small_run_passes() {
    let out = affop(&["selftest", "--trials", "30", "--seed", "42", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("failures: 0"), "{text}");
}

#[test]
fn random_output_round_trips_through_classify() {
    let out = affop(&["random", "--seed", "7", "--dim", "3", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // determinism: same flags, same document
    let again = affop(&["random", "--seed", "7", "--dim", "3", "--bound", "2"]);
    assert_eq!(text, stdout(&again));

    let dir = std::env::temp_dir().join("affop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("random7.affop.json");
    std::fs::write(&path, &text).unwrap();
    let out = affop(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn emitted_documents_parse_back_identically() {
    let out = affop(&["canon", "--json", &fixture("one_dim.affop.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dir = std::env::temp_dir().join("affop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("canon1.affop.json");
    std::fs::write(&path, serde_json::to_string(&v["representative"]).unwrap()).unwrap();
    let again = affop(&["canon", "--json", path.to_str().unwrap()]);
    let v2: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["representative"], v2["representative"]);
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = affop(&["classify", "/nonexistent/file.affop.json"]);
    assert_eq!(out.status.code(), Some(2));
}
