use std::process::{Command, Output};

use serde_json::Value;

fn frobkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn all_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass")
}

#[test]
fn twist_matches_oracle() {
    let out = frobkit(&["twist", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "twist");
    assert!(v["conventions"]["field"].as_str().unwrap().starts_with("F_3^2"));
    assert!(!v["checks"].as_array().unwrap().is_empty());
    assert!(all_pass(&v));
}

#[test]
fn center_dims_at_three() {
    let out = frobkit(&["center", "--p", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    let dims: Vec<(String, String)> =
        rows.iter().map(|r| (r[1].as_str().unwrap().to_string(), r[3].as_str().unwrap().to_string())).collect();
    assert_eq!(dims, vec![("regular".into(), "3".into()), ("steinberg".into(), "1".into())]);
}

#[test]
fn full_suite_two_levels() {
    let out = frobkit(&["all", "--p", "3", "--r", "2", "--window", "2", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(all_pass(&json(&out)));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["relations", "--p", "3", "--r", "2", "--seed", "5"];
    assert_eq!(frobkit(&args).stdout, frobkit(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(frobkit(&["center", "--p", "4"]).status.code(), Some(2));
    assert_eq!(frobkit(&["center", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(frobkit(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn non_generic_seed_exits_three() {
    let out = frobkit(&["hom-iso", "--d-seed", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not generic"));
    assert_eq!(frobkit(&["equivalence", "--ext", "1"]).status.code(), Some(3));
}

#[test]
fn csv_and_files() {
    let dir = std::env::temp_dir().join(format!("frobkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("gen.csv");
    let dot = dir.join("gen.dot");
    let status = frobkit(&[
        "generation",
        "--r",
        "1",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("# span_by_degree\ndegree,hom_dim,span_dim\n"), "{csv}");
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    std::fs::remove_dir_all(&dir).ok();
}
