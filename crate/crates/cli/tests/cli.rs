use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    env: Value,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_readability")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let env = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap(), stdout, env }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn biclique(n: usize) -> Value {
    let edges: Vec<Value> = (1..=n).flat_map(|s| (1..=n).map(move |p| json!([s, p]))).collect();
    json!({"kind": "bipartite", "ns": n, "np": n, "edges": edges})
}

#[test]
fn gen_families() {
    let h = run(&["gen", "hadamard", "--k", "3"]);
    assert_eq!(h.code, 0);
    assert_eq!(h.env["payload"]["ns"], 7);
    assert_eq!(h.env["payload"]["edges"].as_array().unwrap().len(), 28);

    let f = run(&["gen", "fixture", "--name", "c6_paper"]);
    assert_eq!(f.code, 0);
    assert_eq!(f.env["payload"]["decomposition"]["size"], 4);
    assert_eq!(f.env["payload"]["expected"]["achievable"], false);

    let t = run(&["gen", "radius-tree", "--i", "0"]);
    assert_eq!((t.env["payload"]["ns"].as_u64(), t.env["payload"]["np"].as_u64()), (Some(1), Some(0)));

    assert_eq!(run(&["gen", "fixture", "--name", "nope"]).code, 2);
    assert_eq!(run(&["gen", "hadamard", "--k", "40"]).code, 2);
}

#[test]
fn gen_writes_out_and_dot() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let r = run(&["gen", "random", "--n", "3", "--p", "0.5", "--seed", "4", "--out", p(&out), "--dot", p(&dot)]);
    assert_eq!(r.code, 0);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved, r.env["payload"]);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
}

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k22.json", &biclique(2));
    let good = write(&dir, "good.json", &json!({"labels": {"s1": "a", "s2": "a", "p1": "a", "p2": "a"}}));
    let r = run(&["verify", "--graph", p(&g), "--labeling", p(&good), "--model", "bipartite"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.env["payload"]["valid"], true);

    let bad = write(&dir, "bad.json", &json!({"labels": {"s1": "a", "s2": "b", "p1": "a", "p2": "a"}}));
    let r = run(&["verify", "--graph", p(&g), "--labeling", p(&bad), "--model", "bipartite"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.env["status"], "violation");
    assert!(!r.env["payload"]["violations"].as_array().unwrap().is_empty());

    let d = write(&dir, "d.json", &json!({"kind": "digraph", "n": 2, "arcs": [[1, 2]]}));
    let r = run(&["verify", "--graph", p(&d), "--labeling", p(&good), "--model", "bipartite"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.env["status"], "error");

    let dl = write(&dir, "dl.json", &json!({"labels": {"1": "ab", "2": "bc"}}));
    let r = run(&["verify", "--graph", p(&d), "--labeling", p(&dl), "--model", "digraph"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn analyze_fixtures() {
    let dir = TempDir::new().unwrap();
    let fig1 = dir.path().join("fig1.json");
    run(&["gen", "fixture", "--name", "fig1", "--out", p(&fig1)]);
    let r = run(&["analyze", "--graph", p(&fig1), "--check", "strict-p4,p4"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.env["payload"]["checks"]["strict-p4"]["holds"], true);
    // fig1 has a 4-cycle, which is why its strict weighting is not achievable.
    let r = run(&["analyze", "--graph", p(&fig1), "--check", "c4-free"]);
    assert_eq!((r.code, &r.env["payload"]["checks"]["c4-free"]["holds"]), (1, &json!(false)));

    let p4 = dir.path().join("p4.json");
    run(&["gen", "fixture", "--name", "p4_453", "--out", p(&p4)]);
    let r = run(&["analyze", "--graph", p(&p4), "--check", "p4"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.env["payload"]["checks"]["p4"]["holds"], false);
    let r = run(&["analyze", "--graph", p(&p4), "--check", "hub"]);
    assert_eq!(r.code, 0);

    let h3 = dir.path().join("h3.json");
    run(&["gen", "hadamard", "--k", "3", "--out", p(&h3)]);
    let r = run(&["analyze", "--graph", p(&h3), "--check", "distinctness,hub-number"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.env["payload"]["checks"]["distinctness"]["value"], 2);

    // Rule checks need a decomposition.
    assert_eq!(run(&["analyze", "--graph", p(&h3), "--check", "p4"]).code, 2);
}

#[test]
fn analyze_min_decomposition_on_tree() {
    let dir = TempDir::new().unwrap();
    let t = dir.path().join("t2.json");
    run(&["gen", "radius-tree", "--i", "2", "--out", p(&t)]);
    let r = run(&["analyze", "--graph", p(&t), "--check", "min-decomposition,radius"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.env["payload"]["checks"]["min-decomposition"]["value"], 2);
    assert_eq!(r.env["payload"]["checks"]["radius"]["value"], 2);
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k33.json", &biclique(3));
    let weights: serde_json::Map<String, Value> =
        (1..=3).flat_map(|s| (1..=3).map(move |q| (format!("s{s}-p{q}"), json!(1)))).collect();
    let w = write(&dir, "w.json", &json!({"weights": weights}));
    let out = dir.path().join("l.json");
    let trace = dir.path().join("trace.json");
    let r = run(&[
        "construct",
        "--graph",
        p(&g),
        "--decomposition",
        p(&w),
        "--method",
        "bm",
        "--out",
        p(&out),
        "--trace",
        p(&trace),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.env["payload"]["len"], 1);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["method"], "bm");
    assert_eq!(run(&["verify", "--graph", p(&g), "--labeling", p(&out), "--model", "bipartite"]).code, 0);

    let tree = dir.path().join("t.json");
    run(&["gen", "radius-tree", "--i", "3", "--out", p(&tree)]);
    let out = dir.path().join("lr.json");
    let r = run(&["construct", "--graph", p(&tree), "--method", "radius", "--out", p(&out)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.env["payload"]["len"], 3);
    assert_eq!(run(&["verify", "--graph", p(&tree), "--labeling", p(&out), "--model", "bipartite"]).code, 0);

    // The c6 fixture decomposition satisfies the P4-rule but is not strict
    // and the graph has a cycle, so achieve refuses it.
    let c6 = dir.path().join("c6.json");
    run(&["gen", "fixture", "--name", "c6_paper", "--out", p(&c6)]);
    assert_eq!(run(&["construct", "--graph", p(&c6), "--method", "achieve"]).code, 2);
}

#[test]
fn oracle_queries() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "e.json", &biclique(1));
    let r = run(&["oracle", "readability", "--graph", p(&e)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.env["payload"]["value"], 1);

    let d = write(&dir, "d.json", &json!({"kind": "digraph", "n": 2, "arcs": [[1, 2]]}));
    let r = run(&["oracle", "readability", "--graph", p(&d)]);
    assert_eq!(r.env["payload"]["value"], 2);

    let c6 = dir.path().join("c6.json");
    run(&["gen", "fixture", "--name", "c6_paper", "--out", p(&c6)]);
    let r = run(&["oracle", "achieves", "--graph", p(&c6)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.env["payload"]["achievable"], false);

    let h3 = dir.path().join("h3.json");
    run(&["gen", "hadamard", "--k", "3", "--out", p(&h3)]);
    let r = run(&["oracle", "readability", "--graph", p(&h3), "--budget", "10"]);
    assert_eq!(r.code, 2);
}

#[test]
fn psi_phi_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    run(&["gen", "random", "--n", "4", "--p", "0.5", "--seed", "9", "--out", p(&g)]);
    let d = dir.path().join("d.json");
    assert_eq!(run(&["transform", "--op", "psi", "--graph", p(&g), "--out", p(&d)]).code, 0);
    let back = dir.path().join("back.json");
    assert_eq!(run(&["transform", "--op", "phi", "--graph", p(&d), "--out", p(&back)]).code, 0);
    assert_eq!(std::fs::read(&g).unwrap(), std::fs::read(&back).unwrap());
}

#[test]
fn lift_and_encode() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"kind": "bipartite", "ns": 2, "np": 2, "edges": [[1, 1], [2, 1], [2, 2]]}));
    let oracle = run(&["oracle", "readability", "--graph", p(&g)]);
    let l = write(&dir, "l.json", &oracle.env["payload"]["labeling"]);
    let lifted = dir.path().join("lifted.json");
    assert_eq!(run(&["transform", "--op", "lift", "--graph", p(&g), "--labeling", p(&l), "--out", p(&lifted)]).code, 0);
    let d = dir.path().join("d.json");
    run(&["transform", "--op", "psi", "--graph", p(&g), "--out", p(&d)]);
    assert_eq!(run(&["verify", "--graph", p(&d), "--labeling", p(&lifted), "--model", "digraph"]).code, 0);

    let enc = dir.path().join("enc.json");
    let r = run(&["encode", "--graph", p(&g), "--labeling", p(&l), "--out", p(&enc)]);
    assert_eq!(r.code, 0);
    assert_eq!(run(&["verify", "--graph", p(&g), "--labeling", p(&enc), "--model", "bipartite"]).code, 0);
}

#[test]
fn deterministic_experiment() {
    let args = ["experiment", "counting", "--n", "2", "--samples", "30", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    let c = run(&parallel);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.env["payload"]["bounds_hold"], true);
    assert_eq!(run(&["experiment", "counting", "--n", "9"]).code, 2);
}
