use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn treestretch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treestretch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = treestretch(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_hamming_4_5_predicts_4() {
    let v = ok_json(&["construct", "--family", "hamming", "--dims", "4,5"]);
    assert_eq!(v["predicted"], 4);
    assert_eq!(v["root"], 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 19);
}

#[test]
fn grid_table_matches_solver() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("grid.csv");
    let out = treestretch(&[
        "table",
        "--family",
        "grid",
        "--dims-max",
        "3,3,3",
        "--budget-vertices",
        "27",
        "--out",
        path(&csv_path),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec![
            "dims",
            "family",
            "predicted",
            "constructed_measured",
            "exact",
            "exhausted"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert_eq!(&row[2], &row[4], "predicted vs exact in {row:?}");
        assert_eq!(&row[2], &row[3], "predicted vs constructed in {row:?}");
        assert_eq!(&row[5], "true");
    }
}

#[test]
fn table_leaves_exact_blank_beyond_vertex_budget() {
    let out = treestretch(&["table", "--family", "hamming", "--dims-max", "4,4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert_eq!(last, "4x4,hamming,4,4,,");
}

#[test]
fn eval_c4_path() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c4.json");
    let t = dir.path().join("path.json");
    fs::write(&g, r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
    fs::write(&t, r#"{"root":0,"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
    let v = ok_json(&["eval", "--graph", path(&g), "--tree", path(&t)]);
    assert_eq!(v["stretch"]["value"], 3);
    assert_eq!(v["congestion"]["value"], 2);
    assert_eq!(v["diameter"], 3);
}

#[test]
fn gen_construct_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, predicted) in [
        ("K4xK5", 4),
        ("K2xK6", 3),
        ("P4xP5", 5),
        ("P3xP4xP4", 7),
        ("K3xK3xK3", 6),
    ] {
        let g = dir.path().join(format!("{spec}.json"));
        let t = dir.path().join(format!("{spec}-tree.json"));
        assert!(treestretch(&["gen", "--spec", spec, "--out", path(&g)])
            .status
            .success());
        let tree = treestretch(&["construct", "--graph", path(&g), "--out", path(&t)]);
        assert!(tree.status.success());
        let v = ok_json(&["eval", "--graph", path(&g), "--tree", path(&t)]);
        assert_eq!(v["stretch"]["value"], predicted, "{spec}");
        let written: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
        assert_eq!(written["predicted"], predicted);
    }
}

#[test]
fn exact_reports_solver_json() {
    let v = ok_json(&["exact", "--spec", "K2xK3"]);
    assert_eq!(v["optimum"], 3);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["optimal_tree"]["edges"].as_array().unwrap().len(), 5);
    let par = ok_json(&["exact", "--spec", "K2xK3", "--jobs", "3"]);
    assert_eq!(par["optimal_tree"], v["optimal_tree"]);
}

#[test]
fn exact_decisions() {
    let no = ok_json(&["exact", "--spec", "P4xP5", "--budget-vertices", "20", "--k", "4"]);
    assert_eq!(no["decision"], "infeasible");
    let yes = ok_json(&["exact", "--spec", "P4xP5", "--budget-vertices", "20", "--k", "5"]);
    assert_eq!(yes["decision"], "exists");
    assert_eq!(yes["tree"]["edges"].as_array().unwrap().len(), 19);
    let open = ok_json(&[
        "exact",
        "--spec",
        "K3xK3xK3",
        "--budget-vertices",
        "27",
        "--budget-seconds",
        "0.01",
        "--k",
        "5",
    ]);
    assert_eq!(open["decision"], "indeterminate");
}

#[test]
fn verify_emits_and_checks_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.json");
    let cert = dir.path().join("c.json");
    assert!(treestretch(&["construct", "--spec", "K3xK3", "--out", path(&tree)])
        .status
        .success());
    let out = treestretch(&["verify", "--spec", "K3xK3", "--tree", path(&tree), "--out", path(&cert)]);
    assert!(out.status.success());
    let checked = ok_json(&[
        "verify",
        "--spec",
        "K3xK3",
        "--tree",
        path(&tree),
        "--certificate",
        path(&cert),
    ]);
    assert_eq!(checked["valid"], true);

    let mut c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    c["detour_length"] = Value::from(c["detour_length"].as_u64().unwrap() + 1);
    fs::write(&cert, c.to_string()).unwrap();
    let bad = treestretch(&[
        "verify",
        "--spec",
        "K3xK3",
        "--tree",
        path(&tree),
        "--certificate",
        path(&cert),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["reason"], "detour mismatch");

    let sample = ok_json(&["verify", "--spec", "K2xK2xK2", "--random", "20", "--seed", "3"]);
    assert_eq!(sample["all_valid"], true);
    assert!(sample["min_detour"].as_u64().unwrap() >= 5);
    let again = ok_json(&["verify", "--spec", "K2xK2xK2", "--random", "20", "--seed", "3"]);
    assert_eq!(sample, again);
}

#[test]
fn export_styles_tree_and_cotree_edges() {
    let out = treestretch(&["export", "--spec", "K4xK5", "--construct"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches("penwidth=2").count(), 19);
    assert_eq!(dot.matches("style=dotted").count(), 70 - 19);
}

#[test]
fn exit_codes() {
    assert_eq!(treestretch(&["construct", "--spec", "K4xQ5"]).status.code(), Some(2));
    assert_eq!(treestretch(&["construct"]).status.code(), Some(2));
    assert_eq!(treestretch(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(treestretch(&["construct", "--spec", "K3xP3"]).status.code(), Some(1));
    assert_eq!(treestretch(&["exact", "--spec", "K4xK5"]).status.code(), Some(1));
    assert_eq!(
        treestretch(&["eval", "--graph", "/nonexistent.json", "--tree", "x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(treestretch(&["verify", "--spec", "P3xP3"]).status.code(), Some(1));
}
