mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn knotq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotq"))
        .current_dir(common::fixture_path(""))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn error(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(1));
    serde_json::from_slice(&out.stderr).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knotq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn color_count_trefoil() {
    assert_eq!(stdout(&knotq(&["color", "count", "diagrams/trefoil.pd", "quandles/dihedral3.json"])), "9\n");
    let oracle = knotq(&["color", "count", "--oracle", "diagrams/trefoil.pd", "quandles/dihedral3.json"]);
    assert_eq!(stdout(&oracle), "9\n");
}

#[test]
fn color_list() {
    let out = stdout(&knotq(&["color", "list", "diagrams/hopf.json", "quandles/trivial2.json"]));
    assert_eq!(out, "[0,0]\n[0,1]\n[1,0]\n[1,1]\n");
}

#[test]
fn quandle_verify() {
    let ok = json(&knotq(&["quandle", "verify", "quandles/tetrahedral.json"]));
    assert_eq!(ok["valid"], true);
    assert_eq!(ok["order"], 4);
    let err = error(&knotq(&["quandle", "verify", "quandles/bad.json"]));
    assert_eq!(err["error"], "NotIdempotent");
    assert_eq!(err["witness"], serde_json::json!([1]));
}

#[test]
fn quandle_make() {
    let d3 = json(&knotq(&["quandle", "make", "dihedral", "3"]));
    assert_eq!(d3["table"], serde_json::json!([[0, 2, 1], [2, 1, 0], [1, 0, 2]]));
    let t2 = json(&knotq(&["quandle", "make", "trivial", "2"]));
    assert_eq!(t2["table"], serde_json::json!([[0, 0], [1, 1]]));
    let z4 = scratch("z4.json", r#"{"table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}"#);
    let conj = json(&knotq(&["quandle", "make", "conj", z4.to_str().unwrap(), "2"]));
    assert_eq!(conj["table"], serde_json::json!([[0, 0, 0, 0], [1, 1, 1, 1], [2, 2, 2, 2], [3, 3, 3, 3]]));
    let bad = scratch("bad_group.json", "[[0,1],[1,1]]");
    assert_eq!(error(&knotq(&["quandle", "make", "conj", bad.to_str().unwrap(), "1"]))["error"], "NotAGroup");
}

#[test]
fn cohomology_commands() {
    let cocycles = json(&knotq(&["cohomology", "cocycles", "--arity", "2", "--coeff", "z2", "quandles/tetrahedral.json"]));
    assert!(!cocycles.as_array().unwrap().is_empty());
    let h = json(&knotq(&["cohomology", "homology", "--arity", "3", "quandles/dihedral3.json"]));
    assert_eq!(h, serde_json::json!({"free_rank": 0, "torsion": [3]}));
    let same = json(&knotq(&[
        "cohomology",
        "cohomologous",
        "quandles/dihedral3.json",
        "cochains/zero_z3.json",
        "cochains/zero_z3.json",
    ]));
    assert_eq!(same["cohomologous"], true);
    let small = knotq(&["cohomology", "homology", "--arity", "3", "--limit", "5", "quandles/dihedral3.json"]);
    assert_eq!(small.status.code(), Some(1));
}

#[test]
fn diagram_commands() {
    let v = json(&knotq(&["diagram", "validate", "--gauss", "diagrams/figure_eight.gauss"]));
    assert_eq!(v["arcs"], 4);
    let v = json(&knotq(&["diagram", "validate", "--pd", "diagrams/trefoil.pd"]));
    assert_eq!(v["crossings"], 3);
    assert_eq!(knotq(&["diagram", "validate", "--pd", "diagrams/trefoil.gauss"]).status.code(), Some(1));
    let info = json(&knotq(&["diagram", "info", "diagrams/trefoil.pd"]));
    assert_eq!(info["writhe"], -3);
    assert_eq!(info["faces"].as_array().unwrap().len(), 5);
    assert_eq!(info["presentation"]["relations"].as_array().unwrap().len(), 3);
    let spec = scratch("bad_trefoil.pd", "PD[X[1,4,2,3], X[3,6,4,5], X[5,2,6,1]]");
    let err = error(&knotq(&["diagram", "validate", spec.to_str().unwrap()]));
    assert_eq!(err["error"], "EdgeDirectionMismatch");
}

#[test]
fn invariant_commands() {
    let args = ["diagrams/trefoil.pd", "quandles/tetrahedral.json", "cochains/tetrahedral_z2.json"];
    let ss = json(&knotq(&[&["invariant", "state-sum"][..], &args].concat()));
    assert_eq!(ss["terms"], serde_json::json!([[0, 4], [1, 12]]));
    let ms = json(&knotq(&[&["invariant", "multiset"][..], &args].concat()));
    assert_eq!(ms["weights"][1]["weight"], "t^1");
    assert_eq!(ms["weights"][1]["multiplicity"], 12);
    let zt = stdout(&knotq(&[
        "invariant", "zt", "diagrams/unknot.json", "quandles/dihedral3.json", "cochains/zero.json",
        "--tmin", "0.1", "--tmax", "10", "--steps", "5", "--log",
    ]));
    let lines: Vec<&str> = zt.lines().collect();
    assert_eq!(lines[0], "T,Z");
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|l| l.ends_with(",3")));
    let sym = json(&knotq(&[
        "invariant", "symfun", "diagrams/hopf.json", "quandles/trivial2.json", "cochains/trivial2_psi.json",
        "--kind", "power", "--order", "2",
    ]));
    assert!((sym["value"].as_f64().unwrap() - (2.0 + 2.0 * (-2f64).exp())).abs() < 1e-12);
    let err = error(&knotq(&["invariant", "state-sum", "diagrams/trefoil.pd", "quandles/dihedral3.json", "cochains/not_cocycle.json"]));
    assert_eq!(err["error"], "NotACocycle");
}

#[test]
fn moves_apply() {
    let spec = scratch("kink.json", r#"{"kind":"R1_insert","site":{"edge":3,"side":"left"},"variant":{"sign":-1}}"#);
    let out = json(&knotq(&["moves", "apply", "diagrams/trefoil.pd", spec.to_str().unwrap()]));
    assert_eq!(out["diagram"]["crossings"].as_array().unwrap().len(), 4);
    assert_eq!(out["inverse"]["kind"], "R1_delete");
    let bad = scratch("bad_r2.json", r#"{"kind":"R2_delete","site":{"edge":1,"side":"left"}}"#);
    assert_eq!(error(&knotq(&["moves", "apply", "diagrams/trefoil.pd", bad.to_str().unwrap()]))["error"], "PatternMismatch");
}

#[test]
fn moves_fuzz() {
    let out = json(&knotq(&[
        "moves", "fuzz", "diagrams/figure_eight.pd", "quandles/tetrahedral.json", "cochains/tetrahedral_z2.json",
        "--trials", "30", "--depth", "5", "--seed", "7",
    ]));
    assert_eq!(out["result"], "PASS");
    assert_eq!(out["trials"], 30);
}

#[test]
fn output_flag_and_threads() {
    let path = std::env::temp_dir().join(format!("knotq-out-{}.txt", std::process::id()));
    let out = knotq(&["--threads", "2", "-o", path.to_str().unwrap(), "color", "count", "diagrams/figure_eight.pd", "quandles/dihedral5.json"]);
    assert_eq!(stdout(&out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "25\n");
    assert_eq!(error(&knotq(&["--threads", "0", "quandle", "make", "trivial", "1"]))["error"], "ThreadPool");
}

#[test]
fn exit_codes() {
    assert_eq!(knotq(&["--help"]).status.code(), Some(0));
    assert_eq!(knotq(&["--version"]).status.code(), Some(0));
    assert_eq!(knotq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(knotq(&["cohomology", "cocycles", "--arity", "5", "--coeff", "q", "x.json"]).status.code(), Some(2));
    assert_eq!(error(&knotq(&["color", "count", "missing.pd", "quandles/dihedral3.json"]))["error"], "IoError");
}
