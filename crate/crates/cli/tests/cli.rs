use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lalkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lalkit"))
        .args(args)
        .env("LALKIT_MAX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn solve_sequences() {
    let out = lalkit(&["solve", "--problem", "nonrep-seq", "--n", "200", "--alphabet", "4", "--seeds", "10"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["terminated"], 10);
    assert_eq!(doc["runs"].as_array().unwrap().len(), 10);
}

#[test]
fn solve_acyclic_from_edge_list_then_validate_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "k4.edges", K4);
    let report = dir.path().join("report.json");
    let report = report.to_str().unwrap();
    let out = lalkit(&[
        "solve", "--problem", "acyclic", "--graph", &graph, "--colors", "8", "--strategy", "restricted", "--seeds", "5",
        "--out", report,
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["config"]["instance"]["graph"]["edges"][5], serde_json::json!([2, 3]));

    let out = lalkit(&["validate", "--report", report]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("valid").count(), 5);

    let trace = dir.path().join("trace.json");
    let out = lalkit(&["replay", "--report", report, "--trace-out", trace.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("identical"));
    let trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(trace).unwrap()).unwrap();
    assert!(trace["steps"].is_array());
}

#[test]
fn malformed_edge_list_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "bad.edges", "0 1\n1 two\n");
    let out = lalkit(&["solve", "--problem", "acyclic", "--graph", &graph, "--colors", "8"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&lalkit(&["solve", "--problem", "nonsense"])), 2);
}

#[test]
fn condition_checks() {
    let out = lalkit(&["check", "--problem", "acyclic", "--delta", "3", "--colors", "8"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("condition holds"));
    assert_eq!(code(&lalkit(&["check", "--problem", "acyclic", "--delta", "3", "--colors", "7"])), 1);
    let out = lalkit(&["check-condition", "--problem", "proper", "--delta", "3", "--colors", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.000e0"));
}

#[test]
fn thresholds() {
    let out = lalkit(&["threshold", "--problem", "nonrep-color", "--delta", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("76 colors"));
    let out = lalkit(&["threshold", "--problem", "ramsey", "--k", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("n* = 5"));
    assert_eq!(code(&lalkit(&["threshold", "--problem", "nonrep-color", "--delta", "2"])), 1);
}

#[test]
fn validate_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", r#"{"problem":"nonrep-seq","lists":[[0,1,2,3],[0,1,2,3],[0,1,2,3],[0,1,2,3]]}"#);
    let bad = write(dir.path(), "bad.json", "[0, 1, 0, 1]");
    let good = write(dir.path(), "good.json", "[0, 1, 2, 0]");
    let out = lalkit(&["validate", "--spec", &spec, "--solution", &bad]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("\"repetition\""));
    assert_eq!(code(&lalkit(&["validate", "--spec", &spec, "--solution", &good])), 0);
}

#[test]
fn config_file_drives_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let config = serde_json::json!({
        "instance": {"problem": "ramsey", "n": 4, "k": 5},
        "seeds": [4, 8, 15],
        "budget": 100000,
        "output": out_path,
    });
    let config = write(dir.path(), "config.json", &config.to_string());
    assert_eq!(code(&lalkit(&["solve", "--config", &config])), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let seeds: Vec<u64> = doc["runs"].as_array().unwrap().iter().map(|r| r["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, vec![4, 8, 15]);
}

#[test]
fn zero_budget_fails() {
    let out = lalkit(&["solve", "--problem", "proper", "--family", "petersen", "--budget", "0"]);
    assert_eq!(code(&out), 1);
}
