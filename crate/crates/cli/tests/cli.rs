use std::process::{Command, Output};

use serde_json::Value;

fn fsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsg")).args(args).output().expect("fsg runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = fsg(&all);
    (code(&o), serde_json::from_slice(&o.stdout).expect("json on stdout"))
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&fsg(&["--help"])), 0);
    assert_eq!(code(&fsg(&["--version"])), 0);
    assert_eq!(code(&fsg(&[])), 1);
    assert_eq!(code(&fsg(&["verify"])), 1);
    assert_eq!(code(&fsg(&["analyze", "no_such_graph"])), 1);
    assert_eq!(code(&fsg(&["fock", "loops1", "--op", "L[e1"])), 1);
    assert_eq!(code(&fsg(&["fock", "loops1", "--op", "L[zz]"])), 1);
    assert_eq!(code(&fsg(&["example", "nope"])), 1);
}

#[test]
fn reports_carry_schema_and_kind() {
    let (c, v) = json(&["analyze", "fibonacci"]);
    assert_eq!(c, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "analyze");
    assert_eq!(v["transition_matrix"], serde_json::json!([[1, 1], [1, 0]]));
    assert_eq!(v["strong_double_cycle"], true);
    assert_eq!(v["passed"], true);
}

#[test]
fn fock_writes_exact_matrix_and_basis() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.txt");
    let basis = dir.path().join("basis.txt");
    let o = fsg(&[
        "fock",
        "loops1",
        "--level",
        "2",
        "--op",
        "L[e1]",
        "--out",
        out.to_str().unwrap(),
        "--basis",
        basis.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "dim 3 degree 1\n1 0 1 0\n2 1 1 0\n");
    assert_eq!(std::fs::read_to_string(&basis).unwrap(), "basis 0 x\nbasis 1 e1\nbasis 2 e1.e1\n");
}

#[test]
fn graph_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    std::fs::write(
        &p,
        r#"{"vertices":["a","b"],"edges":[{"id":"u","src":"a","dst":"b"},{"id":"v","src":"b","dst":"a"}]}"#,
    )
    .unwrap();
    let (c, v) = json(&["classify", p.to_str().unwrap(), "cycle2", "--level", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["residual"], 0);
    assert_eq!(v["vertex_map"].as_object().unwrap().len(), 2);
}

#[test]
fn distinct_graphs_are_distinguished() {
    let (c, v) = json(&["classify", "cycle3", "loops3", "--level", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn rejected_eigenpoints_fail_verification() {
    let o = fsg(&["eig", "fork", "--vertex", "x1", "--lambda", "e=0.5"]);
    assert_eq!(code(&o), 2);
    let o = fsg(&["eig", "loops2", "--vertex", "x", "--lambda", "e1=2"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&fsg(&["eig", "loops2", "--vertex", "x", "--lambda", "e1=0.5,"])), 1);
}

#[test]
fn eigenvector_defects_stay_under_the_tail() {
    let (c, v) = json(&["eig", "loops2", "--vertex", "x", "--lambda", "e1=0.5", "--lambda", "e2=0,0.25i", "--level", "10"]);
    assert_eq!(c, 0);
    let tail = v["tail"].as_f64().unwrap();
    for l in v["loops"].as_array().unwrap() {
        assert!(l["defect"].as_f64().unwrap() <= tail);
    }
}

#[test]
fn gauge_blocks_induce_the_conjugate_automorphism() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("u.json");
    std::fs::write(&p, r#"{"blocks":{"x->x":[[[0,0],[1,0]],[[0,1],[0,0]]]}}"#).unwrap();
    let o = fsg(&["gauge", "loops2", "--blocks", p.to_str().unwrap(), "--level", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("Theta(L[e1]) =\ne2 1 0\n"));
    assert!(text.contains("Theta(L[e2]) =\ne1 0 -1\n"));

    std::fs::write(&p, r#"{"blocks":{"x->x":[[[1,0],[1,0]],[[0,0],[1,0]]]}}"#).unwrap();
    assert_eq!(code(&fsg(&["gauge", "loops2", "--blocks", p.to_str().unwrap()])), 1);
}

#[test]
fn verify_passes_on_the_corpus() {
    for g in ["loops2", "cycle3", "fork", "loop_tail", "loop_bridge_loop", "double_loop_return", "fibonacci"] {
        let (c, v) = json(&["verify", g, "--level", "4"]);
        assert_eq!(c, 0, "{g}: {v}");
        assert_eq!(v["cases"].as_array().unwrap().len(), 8);
    }
}

#[test]
fn verify_output_is_deterministic() {
    let a = fsg(&["verify", "double_loop_return", "--level", "5"]);
    let b = fsg(&["verify", "double_loop_return", "--level", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn free_and_radical_reports() {
    let (c, v) = json(&["free", "double_loop_return", "--level", "6"]);
    assert_eq!(c, 0);
    assert_eq!(v["isometric_pair"]["passed"], true);
    let (c, v) = json(&["free", "cycle3"]);
    assert_eq!(c, 0);
    assert!(v["pair"].is_null());
    assert_eq!(code(&fsg(&["free", "loops2", "--level", "1"])), 1);

    let (c, v) = json(&["radical", "loop_tail", "--level", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v["radical_edges"], serde_json::json!(["f"]));
    assert_eq!(v["nilpotency"]["M"], 2);
}

#[test]
fn examples_match_their_block_forms() {
    for (id, n) in [("fork", "3"), ("loop_tail", "3"), ("loop_bridge_loop", "3"), ("cycle", "4"), ("cycle_blocked", "3")] {
        let o = fsg(&["example", id, "--level", "5", "--n", n]);
        assert_eq!(code(&o), 0, "{id}");
    }
}
