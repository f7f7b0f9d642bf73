use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lipknot")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn quiet(args: &[&str]) {
    let mut full = vec!["--quiet"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
}

#[test]
fn hopf_invariants() {
    let r = report(&["invariants", "--pd", "X[1,4,2,3] X[3,2,4,1]"]);
    assert_eq!(r["command"], "invariants");
    assert_eq!(r["output"]["components"], 2);
    assert_eq!(r["output"]["linking_numbers"][0]["lk"].as_i64().unwrap().abs(), 1);
    assert_eq!(r["inputs"]["pd"].as_str().unwrap().len(), 64);
    assert!(r.get("timing_ms").is_none());
    assert!(report(&["--timing", "invariants", "--braid", "braid 2: s1 s1 s1"]).get("timing_ms").is_some());
}

#[test]
fn certify_example_pair() {
    let r = report(&["certify", "ex3.X", "ex3.Y"]);
    let out = &r["output"];
    assert_eq!(out["overall"], "distinguished");
    assert_eq!(out["verdicts"][0]["kind"], "inconclusive");
    assert_eq!(out["verdicts"][1]["witness"]["left"], serde_json::json!([0]));
    let same = report(&["certify", "twist.2", "twist.2"]);
    assert_eq!(same["output"]["overall"], "inconclusive");
}

#[test]
fn corpus_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    quiet(&["corpus", "make", d]);
    let x = dir.path().join("ex3.X.germ");
    let broken = dir.path().join("broken.germ");
    let r = report(&["op", "break", "--germ", x.to_str().unwrap(), "--site", "b1", "-p", "4", "--out", broken.to_str().unwrap()]);
    assert_eq!(r["output"]["bridges"].as_array().unwrap().len(), 0);
    assert_eq!(r["output"]["history"].as_array().unwrap().last().unwrap()["p"], "4");
    let inv = report(&["invariants", "--germ", broken.to_str().unwrap()]);
    assert_eq!(inv["output"]["components"], 2);
    let c = report(&["certify", x.to_str().unwrap(), "ex3.Y"]);
    assert_eq!(c["output"]["overall"], "distinguished");
}

#[test]
fn matches_library_calls() {
    let r = report(&["certify", "ex3.X.germ", "ex3.Y.germ"]);
    let lib = lipknot::certify::certify(
        &lipknot::corpus::corpus_germ("ex3.X").unwrap(),
        &lipknot::corpus::corpus_germ("ex3.Y").unwrap(),
    )
    .unwrap();
    assert_eq!(r["output"], serde_json::to_value(&lib).unwrap());
    let again = report(&["certify", "ex3.X.germ", "ex3.Y.germ"]);
    assert_eq!(r, again);
}

#[test]
fn twist_with_negative_index() {
    let r = report(&["op", "twist", "--germ", "ex3.X", "--site", "b1", "-k", "-2"]);
    assert_eq!(r["output"]["bridges"].as_array().unwrap().len(), 1);
}

#[test]
fn corpus_verify_passes() {
    let out = run(&["corpus", "verify", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["output"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.svg");
    quiet(&["render", "--germ", "ex3.X", "--svg", path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("q=3, β=2"));
}

#[test]
fn input_errors_exit_2() {
    let bad = run(&["invariants", "--pd", "X[1,2,3]"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    assert_eq!(run(&["certify", "no-such-germ", "ex3.X"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--pd", "X[1,4,2,3] X[3,2,4,1]", "--svg", "/nonexistent/dir/x.svg"]).status.code(), Some(2));
    assert_eq!(run(&["op", "break", "--germ", "ex3.X", "--site", "b1", "-p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
