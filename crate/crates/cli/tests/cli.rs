use std::path::PathBuf;
use std::process::{Command, Output};

use weightlab::fcomplex::doc::ComplexDoc;
use weightlab::toricfan::{projective_space, toric_filtration};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weightlab")).args(args).env_remove("WEIGHTLAB_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `(table, r, p, q, dim)` rows of a page CSV.
fn page_rows(csv: &str) -> Vec<(String, i32, i32, i32, usize)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("table,r,p,q,dim"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap(), f[4].parse().unwrap())
        })
        .collect()
}

#[test]
fn p2_toric_sequence_is_pure_and_collapses() {
    let o = run(&["ss", "--fan", &data("P2.fan"), "--filtration", "toric"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("pure: yes, collapse: r=2"), "{text}");
    assert!(text.contains("virtual Poincaré polynomial: 1 + t + t^2"));

    let o = run(&["ss", "--fan", &data("P2.fan"), "--format", "csv"]);
    let second: Vec<_> =
        page_rows(&stdout(&o)).into_iter().filter(|r| r.0 == "first_quadrant" && r.1 == 2).map(|r| (r.2, r.3, r.4)).collect();
    assert_eq!(second, vec![(0, 0, 1), (0, 1, 1), (0, 2, 1)]);
}

#[test]
fn circle_canonical_first_page() {
    let o = run(&["ss", "--complex", &data("circle.cx"), "--filtration", "canonical", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let first: Vec<_> =
        page_rows(&stdout(&o)).into_iter().filter(|r| r.0 == "weight" && r.1 == 1).map(|r| (r.2, r.3, r.4)).collect();
    assert_eq!(first, vec![(-1, 2, 1), (0, 0, 1)]);
}

#[test]
fn diamond_violation_is_a_validation_error() {
    let o = run(&["ss", "--fan", &data("bad.fan")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("diamond property violation"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn malformed_input_is_a_parse_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.fan");
    std::fs::write(&path, "{\n  \"lattice_rank\": 2,\n  \"rays\": [[1, 0]\n").unwrap();
    let o = run(&["fan-info", "--fan", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let o = run(&["ss", "--complex", dir.path().join("missing.cx").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn filtration_must_suit_the_input() {
    let o = run(&["ss", "--complex", &data("circle.cx"), "--filtration", "toric"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["ss", "--fan", &data("P2.fan"), "--filtration", "skeleton"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn vpoly_examples() {
    let o = run(&["vpoly", "--fan", &data("P2.fan")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("beta: 1 + t + t^2\n"), "{text}");
    assert!(text.contains("coefficients: [1, 1, 1]"));
    assert!(text.contains("agree: yes"));

    let o = run(&["vpoly", "--standard", "trivial", "--param", "3"]);
    assert!(stdout(&o).contains("beta: -1 + 3t - 3t^2 + t^3\n"));

    let o = run(&["vpoly", "--fan", &data("P1xP1.fan"), "--method", "pages", "--format", "csv"]);
    assert_eq!(stdout(&o), "q,beta_q\n0,1\n1,2\n2,1\n");
}

#[test]
fn empty_suite_reports_nothing() {
    let o = run(&["check", "--suite", "none"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 checks: 0 passed, 0 failed\n");
    let o = run(&["check", "--suite", "none", "--format", "csv"]);
    assert_eq!(stdout(&o), "suite,name,passed,detail\n");
}

#[test]
fn cubical_suite_passes() {
    let o = run(&["check", "--suite", "cubical"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with(" 0 failed\n"));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = run(&["check", "--suite", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn emitted_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.cx");
    let o = run(&["ss", "--standard", "P", "--param", "2", "--emit-complex", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: ComplexDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.to_filtered().unwrap(), toric_filtration(&projective_space(2)).unwrap());

    let again = run(&["ss", "--complex", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn klein_square_is_acyclic() {
    let o = run(&["cubical-ss", "--diagram", &data("klein-square.diagram")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("acyclic: yes"));
    assert!(text.contains("H_0: 1 -> 2 -> 1, ranks 1 and 1, exact: yes"));
    assert!(text.contains("H_2: 0 -> 1 -> 1, ranks 0 and 1, exact: yes"));
    let o = run(&["cubical-ss", "--diagram", &data("klein-square.diagram"), "--canonical"]);
    assert!(stdout(&o).contains("acyclic: yes"));
}

#[test]
fn inclusion_additivity() {
    let o = run(&["cubical-ss", "--diagram", &data("p1-boundary.diagram"), "--complement", &data("p1-complement.cx")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("additivity against the complement: holds"));
}

#[test]
fn hyperresolution_comparison_holds() {
    for name in ["wedge.hyperres", "two-circles.hyperres", "triple-point.hyperres"] {
        let o = run(&["cubical-ss", "--hyperres", &data(name), "--format", "doc"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["holds"], true, "{name}");
    }
}

#[test]
fn fold_pushforward_preserves_the_integral() {
    let o = run(&[
        "euler",
        "--complex",
        &data("torus2.cells"),
        "--function",
        &data("torus2-one.fn"),
        "--map",
        &data("torus2-fold.map"),
        "--target",
        &data("torus2.cells"),
        "--format",
        "doc",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["integral"], v["pushforward_integral"]);
    assert_eq!(v["link_twice"], true);
    let open_top = v["pushforward"].as_array().unwrap().iter().find(|e| e["cell"] == "+×+").unwrap();
    assert_eq!(open_top["value"], 2);
}

#[test]
fn triangle_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("edges.chain");
    std::fs::write(&chain, r#"{"degree": 1, "cells": ["[0, 1]", "[1, 2]"]}"#).unwrap();
    let o = run(&["euler", "--complex", &data("triangle.sc"), "--chain", chain.to_str().unwrap(), "--format", "doc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["boundary"]["cells"], serde_json::json!(["[0]", "[2]"]));
    assert_eq!(v["boundary_matches_incidence"], true);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["ss", "--standard", "hirzebruch", "--param", "2", "--format", "doc"];
    let base = run(&args);
    let single = Command::new(env!("CARGO_BIN_EXE_weightlab")).args(args).env("WEIGHTLAB_THREADS", "1").output().unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(base.stdout, single.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_weightlab")).args(args).env("WEIGHTLAB_THREADS", "none").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fan_info_lists_cones_by_id() {
    let o = run(&["fan-info", "--fan", &data("P2.fan"), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(ids.len(), 7);
    let o = run(&["fan-info", "--fan", &data("P2.fan")]);
    assert!(stdout(&o).contains("cells by degree 0..2: [3, 6, 4]"), "{}", stdout(&o));
}
