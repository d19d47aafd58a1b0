use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgc")).args(args).output().expect("run qgc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

fn stable(mut v: Value) -> Value {
    v["elapsed_seconds"] = Value::Null;
    v["tool_version"] = Value::Null;
    v
}

#[test]
fn cycle_five_search_finds_the_nonadditive_code() {
    let out = qgc(&["search", "--family", "cycle", "--n", "5", "--D", "2", "--delta", "2", "--seq"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["K"], 6);
    assert_eq!(r["additive"], false);
    assert_eq!(r["exhaustive"], true);
}

#[test]
fn degenerate_regime_gives_an_empty_report() {
    let out = qgc(&["search", "--family", "cycle", "--n", "4", "--D", "2", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["K"], 0);
    assert_eq!(r["reason"], "diagonal-distance");
    assert_eq!(r["diagonal_distance"], 2);
}

#[test]
fn additive_search_on_a_wheel() {
    let out = qgc(&["search", "--family", "wheel", "--n", "8", "--D", "2", "--delta", "3", "--additive-only"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["K"], 8);
    assert_eq!(r["additive"], true);
    assert_eq!(r["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn constructions() {
    let star = json(&qgc(&["construct", "--method", "star-odd", "--family", "star", "--n", "9", "--D", "2"]));
    assert_eq!(star["K"], 93);
    let bar = json(&qgc(&["construct", "--method", "partition", "--family", "bar", "--n", "6", "--D", "4"]));
    assert_eq!(bar["K"], 256);
    assert_eq!(bar["qs_saturated"], true);
    let cube = json(&qgc(&["construct", "--method", "hypercube16"]));
    assert_eq!(cube["K"], 128);
    assert_eq!(cube["delta"], 4);
}

#[test]
fn partition_with_a_non_unit_weight_is_rejected() {
    let out = qgc(&["construct", "--method", "partition", "--family", "bar", "--n", "5", "--D", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cross weight g = 2"));
}

#[test]
fn table_rows() {
    let out = qgc(&["table", "--family", "cycle", "--D", "2", "--n-min", "3", "--n-max", "6", "--delta", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(2).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["3", "1", "0"]);
    assert_eq!(rows[1], ["4", "4c", "0"]);
    assert_eq!(rows[2], ["5", "6b", "2c"]);
    assert_eq!(rows[3], ["6", "16c", "1"]);
}

#[test]
fn stabilizer_of_the_five_qubit_repetition_code() {
    let path = scratch("rep5.json");
    let out =
        qgc(&["search", "--family", "cycle", "--n", "5", "--D", "2", "--delta", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = qgc(&["stabilizer", "--code", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|S| = 16"));
    assert!(text.contains("all stabilizer checks pass"));
}

#[test]
fn emitted_reports_verify_and_corruptions_fail() {
    let path = scratch("cycle6.json");
    let p = path.to_str().unwrap();
    let out = qgc(&["search", "--family", "cycle", "--n", "6", "--D", "2", "--delta", "2", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let out = qgc(&["verify", "--code", p, "--oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let words = r["codewords"].as_array_mut().unwrap();
    words[1] = words[0].clone();
    let bad = scratch("cycle6-bad.json");
    std::fs::write(&bad, serde_json::to_string(&r).unwrap()).unwrap();
    let out = qgc(&["verify", "--code", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sequential_reports_are_deterministic() {
    let args = ["search", "--family", "cycle", "--n", "6", "--D", "3", "--delta", "2", "--double-edge", "--seq"];
    let a = stable(json(&qgc(&args)));
    let b = stable(json(&qgc(&args)));
    assert_eq!(a, b);
    let par = stable(json(&qgc(&args[..args.len() - 1])));
    assert_eq!(a["K"], par["K"]);
}

#[test]
fn graph_files_and_distances() {
    let path = scratch("path3.txt");
    std::fs::write(&path, "2 3\n0 1 0\n1 0 1\n0 1 0\n").unwrap();
    let p = path.to_str().unwrap();
    let out = qgc(&["distances", "--graph", p, "--cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
    let out = qgc(&["distances", "--graph", p, "--D", "3", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qgc(&["search", "--family", "cycle", "--n", "5", "--delta", "2"]);
    assert_eq!(out.status.code(), Some(1));
}
