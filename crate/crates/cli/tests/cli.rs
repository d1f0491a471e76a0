use std::path::Path;
use std::process::{Command, Output};

use binary_lcl::limits::Limits;
use binary_lcl::re::{black_output, make_fdso, GeneralProblem};
use binary_lcl::{ColoredTree, EdgeLabeling};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binlcl"))
        .args(args)
        .env_remove("BINLCL_LIMITS")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

fn result(args: &[&str]) -> Value {
    run_ok(args)["result"].clone()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_sinkless_orientation() {
    let r = result(&["classify", "--inline", "d=3,delta=2,W=1110,B=010"]);
    assert_eq!(r["complexity"], "Logarithmic");
    assert_eq!(r["primary_family"], "VII");
    assert_eq!(r["randomized"]["lower"], "LogLog");
    assert_eq!(r["randomized"]["upper"], "Log");
    assert!(r["relaxation_target"].is_object());
}

#[test]
fn classify_named_and_unsolvable() {
    let r = result(&["classify", "--problem", "contradiction"]);
    assert_eq!(r["complexity"], "Unsolvable");
    assert!(r["randomized"].is_null());
    assert!(r.get("relaxation_target").is_none());
    let r = result(&["classify", "--problem", "two-coloring"]);
    assert_eq!(r["complexity"], "Global");
}

#[test]
fn classify_problem_file() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("p.json");
    std::fs::write(&f, r#"{"d":4,"delta":2,"W":"00100","B":"111"}"#).unwrap();
    let r = result(&["classify", "--problem", path_str(&f)]);
    assert_eq!(r["complexity"], "Constant");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run(&["classify", "--inline", "d=3,delta=2,W=11x0,B=010"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--inline", "d=3,delta=2,W=110,B=010"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--problem", "trivial", "--tree", "/nonexistent", "--labeling", "/nonexistent"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_has_576_rows() {
    let r = result(&["classify", "--sweep", "3", "3"]);
    assert_eq!(r["count"], 576);
    assert_eq!(r["rows"].as_array().unwrap().len(), 576);
    let total: u64 = r["by_complexity"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 576);
}

#[test]
fn complete_tree_of_radius_two_has_ten_nodes() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("t.json");
    let r = result(&["gen-tree", "--kind", "complete", "--d", "3", "--delta", "3", "--radius", "2", "--out", path_str(&f)]);
    assert_eq!(r["nodes"], 10);
    let t = ColoredTree::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(t.node_count(), 10);
}

#[test]
fn generated_tree_with_permuted_ids_round_trips() {
    let r = result(&["gen-tree", "--kind", "random", "--d", "3", "--delta", "4", "--n", "200", "--seed", "4", "--id-seed", "7"]);
    let text = serde_json::to_string(&r["tree"]).unwrap();
    let t = ColoredTree::from_json(&text).unwrap();
    assert_eq!(t.node_count() as u64, r["nodes"].as_u64().unwrap());
}

#[test]
fn oracle_refutes_contradiction_on_witnesses() {
    let r = result(&["oracle", "--problem", "contradiction", "--witness", "auto", "--mode", "count"]);
    assert_eq!(r["count"], 0);
    assert_eq!(r["refuted"], true);
    let r = result(&["oracle", "--problem", "trivial", "--witness", "white", "--mode", "first"]);
    assert_eq!(r["refuted"], false);
    assert!(r["runs"][0]["solution"]["labels"].is_array());
}

#[test]
fn oracle_cap_exits_four() {
    let out = Command::new(env!("CARGO_BIN_EXE_binlcl"))
        .args(["oracle", "--problem", "trivial", "--witness", "auto"])
        .env("BINLCL_LIMITS", "max_edges=5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(run(&["oracle", "--problem", "trivial", "--witness", "auto", "--max-edges", "3"]).status.code(), Some(4));
}

#[test]
fn fdso_is_a_fixed_point() {
    let r = result(&["fixed-point", "--fdso", "d=3,delta=3,s=1", "--pairs", "1"]);
    assert_eq!(r["is_fixed_point"], true);
    assert_eq!(r["pairs_needed"], 1);
    assert_eq!(r["bijection"].as_array().unwrap().len(), 4);
    assert_eq!(r["intermediates"].as_array().unwrap().len(), 2);
}

#[test]
fn re_step_matches_library() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("fdso.json");
    let output = dir.path().join("half.json");
    let g = make_fdso(3, 3, 1).unwrap();
    std::fs::write(&input, serde_json::to_string(&g.to_document()).unwrap()).unwrap();
    run_ok(&["re-step", "--problem", path_str(&input), "--side", "black", "--out", path_str(&output)]);
    let got = GeneralProblem::from_json(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(got, black_output(&g, &Limits::default()).unwrap());
}

#[test]
fn pipeline_expectations() {
    let out = run(&["pipeline", "--problem", "contradiction", "--kind", "random", "--n", "50", "--expect-solvable"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["verdict"], "UNSOLVABLE");
    let r = result(&["pipeline", "--problem", "contradiction", "--kind", "random", "--n", "50"]);
    assert_eq!(r["verdict"], "UNSOLVABLE");
}

#[test]
fn pipeline_sinkless_orientation_at_ten_thousand() {
    let r = result(&["pipeline", "--problem", "sinkless-orientation", "--kind", "random", "--n", "10000", "--seed", "1"]);
    assert_eq!(r["verdict"], "PASS");
    assert!(r["rounds"].as_u64().unwrap() > 0);
    assert_eq!(r["violations"], 0);
}

#[test]
fn pipeline_two_coloring_on_caterpillar() {
    let r = result(&["pipeline", "--problem", "two-coloring", "--kind", "caterpillar", "--path-len", "50"]);
    assert_eq!(r["verdict"], "PASS");
    let n = r["tree"]["nodes"].as_u64().unwrap();
    assert!(r["rounds"].as_u64().unwrap() <= 2 * n);
}

#[test]
fn solve_then_verify() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.json");
    let lab = dir.path().join("x.json");
    let layers = dir.path().join("l.json");
    run_ok(&["gen-tree", "--kind", "random", "--d", "3", "--delta", "2", "--n", "400", "--seed", "2", "--out", path_str(&tree)]);
    let r = result(&[
        "solve", "--problem", "splitting", "--tree", path_str(&tree), "--out", path_str(&lab), "--emit-layers",
        path_str(&layers),
    ]);
    assert_eq!(r["violations"], 0);
    let v = result(&["verify", "--problem", "splitting", "--tree", path_str(&tree), "--labeling", path_str(&lab)]);
    assert_eq!(v["valid"], true);

    let l: Value = serde_json::from_str(&std::fs::read_to_string(&layers).unwrap()).unwrap();
    let t = ColoredTree::from_json(&std::fs::read_to_string(&tree).unwrap()).unwrap();
    assert_eq!(l["layers"].as_object().unwrap().len(), t.node_count());
    assert!(l["L"].as_u64().unwrap() >= 1);
    assert!(l["c"].is_u64());
    assert!(l["variant"].is_string());

    EdgeLabeling::from_json(&t, &std::fs::read_to_string(&lab).unwrap()).unwrap();
    let zeros = EdgeLabeling::zeros(t.edge_count());
    std::fs::write(&lab, serde_json::to_string(&zeros.to_document(&t)).unwrap()).unwrap();
    let out = run(&["verify", "--problem", "splitting", "--tree", path_str(&tree), "--labeling", path_str(&lab)]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["valid"], false);
    assert!(doc["result"]["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn local_mode_matches_centralized() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.json");
    run_ok(&["gen-tree", "--kind", "random", "--d", "3", "--delta", "2", "--n", "300", "--seed", "8", "--id-seed", "3", "--out", path_str(&tree)]);
    let constant = "d=3,delta=2,W=0010,B=111";
    for name in ["sinkless-orientation", "two-coloring", "regular-matching", constant] {
        let c = result(&["solve", "--problem", name, "--tree", path_str(&tree)]);
        let l = result(&["solve", "--problem", name, "--tree", path_str(&tree), "--mode", "local"]);
        assert_eq!(c["labeling"], l["labeling"], "{name}");
        assert!(l["rounds"].is_u64());
    }
}

#[test]
fn solving_an_unsolvable_problem_exits_three() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.json");
    run_ok(&["gen-tree", "--kind", "path", "--n", "5", "--out", path_str(&tree)]);
    assert_eq!(run(&["solve", "--problem", "contradiction", "--tree", path_str(&tree)]).status.code(), Some(3));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let args = [
        "pipeline", "--problem", "even-orientation", "--kind", "random", "--n", "500", "--seed", "11", "--id-seed", "5",
        "--out", path_str(&out),
    ];
    let a = run(&args);
    let file_a = std::fs::read(&out).unwrap();
    let b = run(&args);
    let file_b = std::fs::read(&out).unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(file_a, file_b);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let digest = doc["manifest"]["output_digests"][path_str(&out)].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    let with_threads = run(&[&["--threads", "4"], &args[..]].concat());
    assert_eq!(with_threads.stdout, a.stdout);
}

#[test]
fn pretty_output_is_the_same_document() {
    let plain = run_ok(&["classify", "--problem", "splitting"]);
    let pretty = run(&["--pretty", "classify", "--problem", "splitting"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    let parsed: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(parsed, plain);
}
