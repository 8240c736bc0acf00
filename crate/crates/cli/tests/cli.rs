use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use mixcross::Hypergraph;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mixcross"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixcross-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const FANO: &str =
    r#"{"r":3,"n":7,"edges":[[0,1,2],[0,3,4],[0,5,6],[1,3,5],[1,4,6],[2,3,6],[2,4,5]]}"#;

#[test]
fn lagrangian_of_the_fano_plane() {
    let fano = scratch("fano.json", FANO);
    let out = run(&["lagrangian", fano.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0 / 27.0).abs() < 1e-9);
    assert_eq!(v["converged"], Value::Bool(true));
}

#[test]
fn lagrangian_of_k6_minus() {
    let out = run(&["construct", "--kminus", "--t", "1"]);
    let path = scratch("kminus_t1.json", std::str::from_utf8(&out.stdout).unwrap());
    let v = json(&run(&["lagrangian", path.to_str().unwrap()]));
    assert!((v["value"].as_f64().unwrap() - 0.0886621).abs() < 1e-6);
}

#[test]
fn malformed_input_exits_2() {
    let bad = scratch("malformed.json", "{\"r\":3,\"n\":2,\"edges\":[[0,1,5]]}");
    let out = run(&["lagrangian", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let missing = run(&["lagrangian", "/nonexistent/graph.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(
        run(&["closed-form", "--t", "1", "--tol", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["closed-form", "--t", "1", "--restarts", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["construct", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify-paper", "--t", "0"]).status.code(), Some(2));
}

#[test]
fn construct_variants() {
    let out = run(&["construct", "--gi", "--t", "1", "--i", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let g1 = Hypergraph::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((g1.vertex_count(), g1.edge_count()), (8, 43));

    let k = Hypergraph::from_json(
        std::str::from_utf8(&run(&["construct", "--kminus", "--t", "2"]).stdout).unwrap(),
    )
    .unwrap();
    assert_eq!((k.vertex_count(), k.edge_count()), (9, 83));

    assert_eq!(
        run(&["construct", "--gi", "--t", "1", "--i", "3"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn construct_writes_the_sidecar() {
    let meta = scratch("gni_meta.json", "");
    let out = run(&[
        "construct",
        "--gni",
        "--t",
        "1",
        "--n",
        "30",
        "--meta",
        meta.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let graph = Hypergraph::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let sidecar: Value = serde_json::from_str(&fs::read_to_string(meta).unwrap()).unwrap();
    assert_eq!(
        sidecar["edge_count"].as_u64().unwrap(),
        graph.edge_count() as u64
    );
    let parts: u64 = sidecar["parts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_u64().unwrap())
        .sum();
    assert_eq!(parts, 30);
}

#[test]
fn emitted_graphs_round_trip() {
    for args in [
        vec!["construct", "--gi", "--t", "2", "--i", "2"],
        vec!["construct", "--kminus", "--t", "1"],
    ] {
        let out = run(&args);
        let text = std::str::from_utf8(&out.stdout).unwrap();
        let h = Hypergraph::from_json(text).unwrap();
        assert_eq!(h.to_json(), text.trim_end());
    }
}

#[test]
fn hom_exit_codes() {
    let fano = scratch("fano_hom.json", FANO);
    let g1 = scratch(
        "g1_hom.json",
        std::str::from_utf8(&run(&["construct", "--gi", "--t", "1"]).stdout).unwrap(),
    );
    let k9 = Hypergraph::complete(3, 9).to_json();
    let k9 = scratch("k9.json", &k9);
    let found = run(&["hom", fano.to_str().unwrap(), g1.to_str().unwrap()]);
    assert_eq!(found.status.code(), Some(0));
    let v = json(&found);
    assert_eq!(v["found"], Value::Bool(true));
    let none = run(&["hom", k9.to_str().unwrap(), g1.to_str().unwrap()]);
    assert_eq!(none.status.code(), Some(1));
    let tiny = run(&[
        "hom",
        fano.to_str().unwrap(),
        g1.to_str().unwrap(),
        "--budget",
        "2",
    ]);
    assert_eq!(tiny.status.code(), Some(5));
}

#[test]
fn family_and_tables() {
    let k9 = scratch("k9_mt.json", &Hypergraph::complete(3, 9).to_json());
    let v = json(&run(&["mt-member", k9.to_str().unwrap(), "--t", "1"]));
    assert_eq!(v["member"], Value::Bool(true));

    let g1 = scratch(
        "g1_tab.json",
        std::str::from_utf8(&run(&["construct", "--gi", "--t", "1"]).stdout).unwrap(),
    );
    let table = json(&run(&["codegree-table", g1.to_str().unwrap()]));
    assert_eq!(table.as_array().unwrap().len(), 28);
    let shadow = json(&run(&["shadow", g1.to_str().unwrap()]));
    assert_eq!(shadow["edge_count"].as_u64(), Some(28));
    let sym = json(&run(&["symmetrize", g1.to_str().unwrap()]));
    assert_eq!(sym["symmetrized"], Value::Bool(true));
    let edit = json(&run(&[
        "edit-dist",
        g1.to_str().unwrap(),
        g1.to_str().unwrap(),
    ]));
    assert_eq!(edit["distance"].as_u64(), Some(0));
}

#[test]
fn closed_form_text_output_uses_twelve_digits() {
    let out = run(&["closed-form", "--t", "1", "--text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lambda: 0.0886621079036"), "{text}");
}

#[test]
fn identical_commands_give_identical_bytes() {
    let args = ["construct", "--gni", "--t", "1", "--n", "24", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let g1 = scratch(
        "g1_det.json",
        std::str::from_utf8(&run(&["construct", "--gi", "--t", "1"]).stdout).unwrap(),
    );
    let args = ["lagrangian", g1.to_str().unwrap(), "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn mix_blowup_from_the_command_line() {
    let k = scratch("k6.json", &Hypergraph::complete_minus(1).unwrap().to_json());
    let out = run(&[
        "mix-blowup",
        k.to_str().unwrap(),
        "--v1",
        "0",
        "--v2",
        "1",
        "--a",
        "1",
        "--b",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["edges"].as_array().unwrap().len(), 43);
    let infeasible = run(&[
        "mix-blowup",
        k.to_str().unwrap(),
        "--v1",
        "0",
        "--v2",
        "1",
        "--a",
        "2",
        "--b",
        "2",
    ]);
    assert_eq!(infeasible.status.code(), Some(4));
}
