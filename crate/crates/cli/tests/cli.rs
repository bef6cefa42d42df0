use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rellich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rellich"))
        .args(args)
        .env_remove("RELLICH_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}");
}

#[test]
fn constants_three_zero() {
    let out = rellich(&["constants", "--N", "3", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    let r = &doc["result"];
    assert_eq!(r["c_min"]["value"]["exact"], "25/36");
    assert_eq!(r["a_min"]["value"]["exact"], "25/36");
    assert_eq!(r["equal"], true);
    assert_eq!(r["path"], "exact");
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn constants_two_one_is_a_strict_improvement() {
    let doc = json_of(&rellich(&["constants", "--N", "2", "--gamma", "1"]));
    assert_valid(&doc);
    let r = &doc["result"];
    assert_eq!(r["c_min"]["value"]["exact"], "1");
    assert_eq!(r["a_min"]["value"]["exact"], "0");
    assert_eq!(r["strict"], true);
    assert_eq!(r["equal"], false);
}

#[test]
fn rational_literals_are_exact() {
    let doc = json_of(&rellich(&["constants", "--N", "4", "--gamma", "-1/2"]));
    assert_valid(&doc);
    assert_eq!(doc["result"]["gamma"]["exact"], "-1/2");
    assert_eq!(doc["result"]["lambda"]["exact"], "1/2");
}

#[test]
fn decimal_gamma_takes_the_float_path() {
    let out = rellich(&["constants", "--N", "3", "--gamma", "0.0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    assert_eq!(doc["result"]["path"], "float");
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 1);
    let c = doc["result"]["c_min"]["value"].as_f64().unwrap();
    assert!((c - 25.0 / 36.0).abs() < 1e-14);
    assert_eq!(doc["result"]["equal"], true);
}

#[test]
fn certify_all_passes() {
    let out = rellich(&["certify", "--regime", "all", "--N-range", "2..12"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    let s = &doc["result"]["summary"];
    assert_eq!(s["failed"], 0);
    assert!(s["total"].as_u64().unwrap() > 0);
    assert_eq!(s["total"], s["passed"]);
}

#[test]
fn certify_single_regimes() {
    for regime in ["general", "le1", "gt1-nge3", "n2", "identities"] {
        let out = rellich(&["certify", "--regime", regime, "--N-range", "2..4"]);
        assert_eq!(out.status.code(), Some(0), "{regime}");
        assert_valid(&json_of(&out));
    }
}

#[test]
fn quotient_defaults_to_the_minimizing_mode() {
    let out = rellich(&["quotient", "--N", "3", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    let r = &doc["result"];
    assert_eq!(r["nu"], 0);
    assert!((r["target"].as_f64().unwrap() - 25.0 / 36.0).abs() < 1e-15);
    for g in r["gap_ratios"].as_array().unwrap() {
        let g = g.as_f64().unwrap();
        assert!((3.5..=4.5).contains(&g), "{g}");
    }
}

#[test]
fn quotient_csv_records() {
    let out = rellich(&["quotient", "--N", "2", "--gamma", "1/2", "--n-list", "5,10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,gamma,nu,n,quotient,target,gap");
    assert_eq!(lines.len(), 3);
}

#[test]
fn degenerate_mode_is_a_usage_error() {
    // λ = 0 at (N, γ) = (2, 1); ν = 1 is the excluded mode.
    let out = rellich(&["quotient", "--N", "2", "--gamma", "1", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_csv_columns() {
    let out = rellich(&["sweep", "--N", "3", "--gamma-grid", "-1:1:1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["N", "gamma", "A_min", "A_argmin", "C_min", "C_argmin", "equal", "in_improvement_region"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    // γ = 0 row: C = A = 25/36.
    let r = &rows[2];
    assert_eq!(&r[1], "0.0");
    assert_eq!(&r[6], "true");
    let c: f64 = r[4].parse().unwrap();
    assert!((c - 25.0 / 36.0).abs() < 1e-14);
}

#[test]
fn sweep_json_validates() {
    let out = rellich(&["sweep", "--N", "5", "--gamma-grid", "-2:2:0.5", "--format", "json"]);
    let doc = json_of(&out);
    assert_valid(&doc);
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    // γ = 0, N = 5: C > A.
    assert_eq!(rows[4]["equal"], false);
}

#[test]
fn oracle_crosscheck() {
    let out = rellich(&["oracle", "--N", "3", "--gamma", "1/2", "--nu", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    assert!(doc["result"]["rel_lap"].as_f64().unwrap() <= 1e-5);
    assert_eq!(rellich(&["oracle", "--N", "4", "--gamma", "0"]).status.code(), Some(2));
}

#[test]
fn remainder_suite_runs() {
    let out = rellich(&["remainder", "--seed", "7", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid(&doc);
    assert_eq!(doc["result"]["summary"]["total"], 9);
    assert_eq!(doc["result"]["summary"]["failed"], 0);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    for args in [
        vec!["remainder", "--seed", "11", "--count", "2"],
        vec!["constants", "--N", "7", "--gamma", "3/4"],
        vec!["sweep", "--N", "4", "--gamma-grid", "-1:2:0.1"],
        vec!["quotient", "--N", "4", "--gamma", "0", "--n-list", "3,6"],
    ] {
        let (a, b) = (rellich(&args), rellich(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
    let (a, b) = (rellich(&["remainder", "--seed", "1", "--count", "2"]), rellich(&["remainder", "--seed", "2", "--count", "2"]));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn malformed_options_exit_with_usage() {
    for args in [
        vec!["constants", "--N", "3", "--gamma", "abc"],
        vec!["constants", "--N", "1", "--gamma", "0"],
        vec!["constants", "--gamma", "0"],
        vec!["certify", "--N-range", "5..3"],
        vec!["certify", "--N-range", "1..4"],
        vec!["certify", "--regime", "bogus"],
        vec!["sweep", "--N", "3", "--gamma-grid", "1:0:0.5"],
        vec!["sweep", "--N", "3", "--gamma-grid", "0:1:0"],
        vec!["quotient", "--N", "3", "--gamma", "0", "--n-list", "0"],
        vec!["frobnicate"],
    ] {
        let out = rellich(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_rellich"))
        .args(["sweep", "--N", "3", "--gamma-grid", "0:1:1"])
        .env("RELLICH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(text.starts_with("N,gamma,"));

    let out = Command::new(env!("CARGO_BIN_EXE_rellich"))
        .args(["constants", "--N", "3", "--gamma", "0", "--output", "nested/c.json"])
        .env("RELLICH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("nested/c.json")).unwrap()).unwrap();
    assert_valid(&doc);
}

#[test]
fn schema_rejects_malformed_documents() {
    let s = schema();
    let good = json_of(&rellich(&["constants", "--N", "2", "--gamma", "0"]));
    assert!(s.is_valid(&good));
    let mut bad = good.clone();
    bad["status"] = Value::from("maybe");
    assert!(!s.is_valid(&bad));
    let mut bad = good.clone();
    bad["result"]["c_min"]["value"]["exact"] = Value::from("0.5");
    assert!(!s.is_valid(&bad));
    let mut bad = good;
    bad["error"] = Value::from("unexpected");
    assert!(!s.is_valid(&bad));
}
