use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;
use wcon_core::sk::underline;
use wcon_core::weihrauch::{wlem, ExtendedPredicate};

fn wcon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcon")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace(dir: &TempDir) -> PathBuf {
    let one = ExtendedPredicate::new(BTreeMap::from([(
        underline(0),
        BTreeSet::from([BTreeSet::from([underline(0)])]),
    )]))
    .unwrap();
    let ws = json!({
        "bindings": {
            "id2": {"container": {"kind": "FinSet", "total": ["a", "b"], "base": ["a", "b"], "bundle": {"a": "a", "b": "b"}}},
            "one": {"container": {"kind": "FinSet", "total": ["p"], "base": ["p"], "bundle": {"p": "p"}}},
            "term": {"container": {"kind": "FinSet", "total": [], "base": ["p"], "bundle": {}}},
            "f": {"problem": {"inputs": ["i", "j"], "outputs": ["o"], "solutions": {"i": ["o"], "j": ["o"]}}},
            "g": {"problem": {"inputs": ["i"], "outputs": ["o", "p"], "solutions": {"i": ["o", "p"]}}},
            "wlem": {"predicate": serde_json::to_value(wlem().to_data()).unwrap()},
            "single": {"predicate": serde_json::to_value(one.to_data()).unwrap()},
            "nid": {"container": {"kind": "PAsm",
                "total": {"a": ["K"], "b": ["S"]}, "base": {"a": ["K"], "b": ["S"]},
                "bundle": {"a": "a", "b": "b"}}}
        }
    });
    let path = dir.path().join("ws.json");
    fs::write(&path, serde_json::to_string_pretty(&ws).unwrap()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn reduce_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    let ok = wcon(&["reduce", p(&ws), "id2", "term"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("REDUCIBLE\nwitness: "), "{}", stdout(&ok));
    assert_eq!(wcon(&["reduce", p(&ws), "term", "id2"]).status.code(), Some(1));
    let unknown = wcon(&["reduce", p(&ws), "wlem", "single"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stdout(&unknown).contains("UNKNOWN-AT-BOUND (size 7, budget 10000)"));
    let bad = wcon(&["reduce", p(&ws), "id2", "missing"]);
    assert_eq!(bad.status.code(), Some(64));
    assert!(!bad.stderr.is_empty());
    assert_eq!(wcon(&["reduce", p(&ws), "id2", "f"]).status.code(), Some(64));
    assert_eq!(wcon(&["reduce", "/nonexistent/ws.json", "a", "b"]).status.code(), Some(64));
}

#[test]
fn overrides_appear_in_the_header() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    let out = wcon(&["--bound", "4", "--budget", "500", "reduce", p(&ws), "wlem", "single"]);
    assert!(stdout(&out).starts_with("wcon 0.1.0 reduce wlem single size_bound=4 budget=500\n"));
    assert!(stdout(&out).contains("UNKNOWN-AT-BOUND (size 4, budget 500)"));
}

#[test]
fn witnesses_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    for (a, b) in [("id2", "one"), ("f", "g"), ("nid", "nid"), ("single", "single")] {
        let out = wcon(&["--json", "reduce", p(&ws), a, b]);
        assert_eq!(out.status.code(), Some(0), "{a} {b}: {}", stdout(&out));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["result"], "REDUCIBLE");
        let wfile = dir.path().join("w.json");
        fs::write(&wfile, serde_json::to_string(&report["witness"]).unwrap()).unwrap();
        let v = wcon(&["reduce", p(&ws), a, b, "--verify", p(&wfile)]);
        assert_eq!(v.status.code(), Some(0), "{a} {b}: {}", stdout(&v));
        assert!(stdout(&v).contains("VERIFIED"));
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    let wfile = dir.path().join("w.json");
    // `j` is left unmapped.
    fs::write(&wfile, r#"{"forward": {"i": "i"}, "backward": {"(i,o)": "o"}}"#).unwrap();
    let v = wcon(&["reduce", p(&ws), "f", "g", "--verify", p(&wfile)]);
    assert_eq!(v.status.code(), Some(1), "{}", stdout(&v));
    assert!(stdout(&v).contains("REJECTED"));
}

#[test]
fn expressions_and_kind_errors() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    let out = dir.path().join("out.json");
    let r = wcon(&["expr", p(&ws), "(id2 + one) x term", "--name", "e", "--out", p(&out)]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["bindings"]["e"]["container"]["kind"], "FinSet");
    assert_eq!(wcon(&["reduce", p(&out), "e", "term"]).status.code(), Some(0));
    let bad = wcon(&["expr", p(&ws), "id2 star_p[3] one"]);
    assert_eq!(bad.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("kind"));
    assert_eq!(wcon(&["expr", p(&ws), "id2 +"]).status.code(), Some(64));
}

#[test]
fn laws_are_reproducible() {
    let a = wcon(&["laws", "category", "--seed", "5", "--sizes", "2"]);
    let b = wcon(&["laws", "category", "--seed", "5", "--sizes", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("RESULT PASS\n"));
    assert_eq!(wcon(&["laws", "nonsense"]).status.code(), Some(64));
}

#[test]
fn poset_dot_output() {
    let dir = TempDir::new().unwrap();
    let ws = workspace(&dir);
    let dot = dir.path().join("p.dot");
    let r = wcon(&["poset", p(&ws), "id2", "one", "term", "--dot", p(&dot)]);
    assert_eq!(r.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("// wcon 0.1.0 poset"));
    assert!(text.contains("rankdir=BT"));
    let piped = wcon(&["poset", p(&ws), "term", "one", "id2", "--dot", "-"]);
    assert_eq!(stdout(&piped), text);
    let pred = wcon(&["poset", p(&ws), "wlem", "single", "--dot", "-"]);
    assert!(stdout(&pred).contains("style=dashed"));
    assert_eq!(wcon(&["poset", p(&ws), "id2", "f"]).status.code(), Some(64));
}
