use std::process::{Command, Output};

use serde_json::Value;

fn cuboid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuboid")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn show_qpq_is_byte_exact() {
    let out = cuboid(&["show", "qpq", "--p", "1", "--q", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t^10 + 90*t^8 + 905*t^6 + 2140*t^4 + 1920*t^2 - 1024\n");
}

#[test]
fn show_other_targets() {
    let out = cuboid(&["show", "ps", "--s", "1"]);
    assert_eq!(stdout(&out), "x^5 + 3*x^4 + 2*x^3 - 2*x^2 - 3*x - 1\n");
    let out = cuboid(&["show", "param"]);
    let text = stdout(&out);
    assert!(text.starts_with("U = (2*tau^5 + 12*tau^4"));
    assert!(text.contains("\nV = (2*tau^4 + 72*tau^3"));
    assert!(cuboid(&["show", "g"]).status.success());
    assert!(cuboid(&["show", "f"]).status.success());
}

#[test]
fn show_rejects_bad_parameters() {
    for args in [
        &["show", "qpq"][..],
        &["show", "qpq", "--p", "2", "--q", "4"],
        &["show", "qpq", "--p", "1"],
        &["show", "ps", "--s", "-3/2"],
        &["show", "g", "--p", "1", "--q", "2"],
        &["show", "nope"],
    ] {
        let out = cuboid(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(out.stdout.is_empty(), "{:?}", args);
    }
}

#[test]
fn zero_height_is_a_usage_error_without_output() {
    for args in [&["verify", "--height", "0"][..], &["search", "--height", "0"], &["sweep", "--bound", "1"]] {
        let out = cuboid(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn smoke_profile_passes() {
    let out = cuboid(&["verify", "--height", "1", "--sweep-bound", "2", "--threads", "1"]);
    assert!(out.status.success());
    let cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["status"], "pass");
    assert_eq!(cert["summary"]["failures"], 0);
    assert_eq!(cert["summary"]["external_assumptions"], 1);
    let order: Vec<&str> = cert["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(order.first(), Some(&"NORMALIZATION"));
    assert_eq!(&order[order.len() - 4..], ["CURVE_POINTS", "CURVE_COMPLETENESS", "NO_ADMISSIBLE_PARAMETER", "ROOT_SWEEP"]);
}

#[test]
fn search_and_sweep_output_shapes() {
    let out = cuboid(&["search", "--height", "10"]);
    let points: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(points[0], serde_json::json!({"infinity": true}));
    assert_eq!(points[5], serde_json::json!({"t": "1", "w": "8"}));
    let out = cuboid(&["sweep", "--bound", "5", "--threads", "2"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bound", "control_case", "pairs_checked", "violations"]);
    assert_eq!(report["violations"], serde_json::json!([]));
    assert_eq!(report["control_case"]["ok"], true);
}

#[test]
fn schema_matches_certificate_fields() {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/certificate.schema.json")).expect("schema is valid JSON");
    assert_eq!(schema["$id"], cuboid_verify::json::SCHEMA_ID);
    let cert = cuboid_verify::run_all(&cuboid_verify::Config { height: 1, sweep_bound: 2, threads: 1 }).unwrap();
    let value = serde_json::to_value(&cert).unwrap();
    let mut fields: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    let mut required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    fields.sort();
    required.sort();
    assert_eq!(fields, required);
}
