use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn stanza_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graded-lie")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v: Value =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn diagonal(betti: &Value) -> Vec<(u64, u64, u64)> {
    betti["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["i"].as_u64().unwrap(), r["j"].as_u64().unwrap(), r["b"].as_u64().unwrap()))
        .collect()
}

const ONE_RELATOR: &str =
    "field = Q\nalgebra S { generators = x1, y1, x2, y2; relations = [x1,y1] + [x2,y2]; truncation = 5; }\n";
const FACTORS: &str = "field = F2\nalgebra A { generators = a1, a2; relations = [a1,a2]; truncation = 5; }\nalgebra B { generators = b; truncation = 5; }\n";

#[test]
fn betti_one_relator() {
    let f = stanza_file(ONE_RELATOR);
    let (v, code) = json(&["betti", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["N"], 5);
    assert_eq!(v["field"], "Q");
    assert!(v["wall_time"].as_f64().unwrap() >= 0.0);
    assert_eq!(diagonal(&v["result"]["betti"]), vec![(0, 0, 1), (1, 1, 4), (2, 2, 1)]);
    assert_eq!(v["result"]["verdict"], "koszul-up-to-5");
}

#[test]
fn betti_free_table() {
    let f = stanza_file("generators x, y;");
    let out = run(&["betti", f.path().to_str().unwrap(), "-N", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("   1 |  .  2  .  .  ."), "{text}");
    assert!(text.contains("koszul-up-to-4"));
}

#[test]
fn missing_file_is_io_error() {
    let out = run(&["betti", "/nonexistent/file.lie"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn syntax_error_reports_position() {
    let f = stanza_file("generators x,y; relations [x,[y;");
    let out = run(&["betti", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at line 1"));
}

#[test]
fn checks_and_exit_status() {
    let f = stanza_file(FACTORS);
    let path = f.path().to_str().unwrap();
    let (v, code) = json(&["check", "bloch-kato", path, "-a", "A", "-N", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "proved-up-to-4");
    assert_eq!(v["strategy"], "exhaustive");
    let (v, code) = json(&["check", "free", path, "-a", "A"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert_eq!(v["result"]["report"]["witness"], serde_json::json!({ "i": 2, "j": 2, "b": 1 }));
    let free = stanza_file("generators x, y;");
    let (v, code) = json(&["check", "universally-koszul", free.path().to_str().unwrap(), "--field", "F2", "-N", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "proved-up-to-4");
}

#[test]
fn strategy_must_suit_field() {
    let f = stanza_file("generators x, y;");
    let out = run(&["check", "bloch-kato", f.path().to_str().unwrap(), "--strategy", "exhaustive", "-N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let (v, code) = json(&[
        "check",
        "bloch-kato",
        f.path().to_str().unwrap(),
        "--strategy",
        "coordinate+random(3)",
        "--seed",
        "9",
        "-N",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["result"]["verdict"], "sampled-up-to-3");
}

#[test]
fn product_checks_pass() {
    let f = stanza_file(FACTORS);
    let (v, code) = json(&["product", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mayer_vietoris"]["first_failure"], Value::Null);
    assert_eq!(v["result"]["cohomology_sum"]["passed"], true);
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 3, 8, 21, 55, 144]));
}

#[test]
fn kurosh_worked_example() {
    let f = stanza_file(FACTORS);
    let (v, code) = json(&["kurosh", f.path().to_str().unwrap(), "--h1", "1,0,0; 0,1,1"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["verdict"], "verified");
    assert_eq!(r["W"], serde_json::json!([["0", "1", "1"]]));
    let dims: Vec<u64> = r["per_degree"].as_array().unwrap().iter().map(|c| c["dim_model"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 1, 2, 3, 6]);
}

#[test]
fn kurosh_full_space_has_no_free_part() {
    let f = stanza_file(FACTORS);
    let h = stanza_file("1 0 0\n0 1 0\n0 0 1\n");
    let (v, code) = json(&["kurosh", f.path().to_str().unwrap(), "--h1-file", h.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["W"], serde_json::json!([]));
    let out = run(&["kurosh", f.path().to_str().unwrap(), "--h1", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mv_check_negative_control() {
    let f = stanza_file(FACTORS);
    let (v, code) = json(&["mv-check", f.path().to_str().unwrap(), "-a", "A"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["report"]["first_failure"], 2);
    let (_, code) = json(&["mv-check", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn dual_of_one_relator() {
    let f = stanza_file(ONE_RELATOR);
    let (v, code) = json(&["dual", f.path().to_str().unwrap(), "-N", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dual_dims"], serde_json::json!([1, 4, 1, 0, 0]));
    assert_eq!(v["result"]["series_failure"], Value::Null);
}

#[test]
fn json_round_trips() {
    let f = stanza_file(FACTORS);
    let out = run(&["product", f.path().to_str().unwrap(), "--format", "json", "--jobs", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    for key in ["schema", "version", "command", "field", "N", "strategy", "seed", "wall_time", "passed", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}
