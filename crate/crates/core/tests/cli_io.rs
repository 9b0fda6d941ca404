//! The command-line surface: exit codes, JSON shapes, index-base handling,
//! and determinism under a fixed seed.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pfassoc")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn enumerate_count_matches_catalan() {
    let out = run(&["mt", "enumerate", "--n", "6", "--k", "1", "--count"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "14");
}

#[test]
fn enumerate_json_lines_are_edge_sets() {
    let out = run(&["--output", "json", "mt", "enumerate", "--n", "5", "--k", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["n"], 5);
    assert_eq!(arr[0]["edges"].as_array().unwrap().len(), 10);
}

#[test]
fn cone_facet_count() {
    let out = run(&["cone", "facets", "--n", "7", "--k", "2", "--count"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "14");
}

#[test]
fn membership_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // a negated long chord: outside, with its own facet listed
    let outside = write_fixture(
        &dir,
        "outside.json",
        r#"{"n": 8, "basis": "w", "entries": {"1,4": "-1"}}"#,
    );
    let out = run(&["--output", "json", "cone", "member", "--k", "2", "--input",
        outside.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["member"], false);
    assert!(v["violated_facets"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!([1, 4])));

    // a nonnegative w image: inside
    let inside = write_fixture(
        &dir,
        "inside.json",
        r#"{"n": 8, "basis": "w", "entries": {"1,4": "2", "2,6": "1"}}"#,
    );
    let out = run(&["cone", "member", "--k", "2", "--input", inside.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_json_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_fixture(&dir, "bad.json", r#"{"n": 6, "edges": [[1,3], ]}"#);
    let out = run(&["mt", "max-crossing", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("malformed JSON"), "stderr: {err}");
    assert!(err.contains("line"), "stderr should carry a location: {err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["mt", "enumerate", "--n", "6", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ugb_demo_certificate() {
    let out = run(&["--output", "json", "alg", "ugb-demo"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(
        v["h_leading_monomial"],
        serde_json::json!([[1, 2], [3, 4], [4, 7], [5, 8], [6, 9]])
    );
    assert_eq!(v["h_leading_weight"], "8");
    assert_eq!(v["divisor_exists"], false);
}

#[test]
fn index_base_zero_inputs_are_shifted() {
    let dir = tempfile::tempdir().unwrap();
    // 0-based square with both diagonals {0,2} and {1,3}
    let zero_based = write_fixture(
        &dir,
        "zero.json",
        r#"{"n": 4, "edges": [[0,2],[1,3]]}"#,
    );
    let out = run(&["--index-base", "0", "mt", "max-crossing", "--input",
        zero_based.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2"));
}

#[test]
fn tropical_commands() {
    let dir = tempfile::tempdir().unwrap();
    let hexagon = write_fixture(
        &dir,
        "hex.json",
        r#"{"n": 6, "basis": "v", "entries": {"1,3": "1", "2,3": "1", "2,4": "1", "4,5": "1", "5,6": "1", "1,6": "1"}}"#,
    );
    let out = run(&["trop", "member", "--k", "2", "--input", hexagon.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["trop", "plus", "--k", "2", "--input", hexagon.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["trop", "balanced", "--k", "2", "--input", hexagon.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let matrix = write_fixture(
        &dir,
        "m.json",
        r#"{"rows": 2, "cols": 2, "entries": [["0","0"],["0","0"]]}"#,
    );
    let out = run(&["--output", "json", "trop", "rank", "--input", matrix.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["tropical_rank"], 1);

    let out = run(&["--output", "json", "trop", "sym", "--K", "auto", "--k", "1",
        "--input", matrix.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["offset"], "9");
    assert_eq!(v["vector"]["entries"]["1,2"], "-9");

    let out = run(&["--output", "json", "trop", "sym", "--K", "inf", "--k", "1",
        "--input", matrix.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["offset"], "inf");
    assert_eq!(v["vector"]["entries"]["1,2"], "-inf");
    assert_eq!(v["vector"]["entries"]["1,3"], "0");
}

#[test]
fn algebra_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_fixture(
        &dir,
        "a.json",
        r#"{"n": 4, "upper": {"1,2": "2", "1,3": "3", "1,4": "5", "2,3": "7", "2,4": "11", "3,4": "13"}}"#,
    );
    let out = run(&["--output", "json", "alg", "pfaffian", "--input", m.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["pfaffian"], "28");

    let band = write_fixture(
        &dir,
        "band.json",
        r#"{"n": 4, "upper": {"1,2": "1", "1,3": "3", "1,4": "5", "2,3": "7", "2,4": "11"}}"#,
    );
    let out = run(&["--output", "json", "alg", "complete-band", "--k", "1",
        "--input", band.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["upper"]["3,4"], "-2");

    let tri = write_fixture(&dir, "t.json", r#"{"n": 6, "edges": [[1,2],[2,3],[3,4],[4,5],[5,6],[1,6],[1,3],[1,4],[1,5]]}"#);
    let out = run(&["--output", "json", "--seed", "5", "alg", "matroid-rank",
        "--k", "1", "--trials", "4", "--input", tri.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["rank"], 9);
}

#[test]
fn fan_commands_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let seed = write_fixture(
        &dir,
        "seed.json",
        r#"{"n": 5, "edges": [[1,2],[2,3],[3,4],[4,5],[1,5],[1,3],[1,4]]}"#,
    );
    let path = seed.to_str().unwrap();
    let a = run(&["--output", "json", "fan", "build", "--seed-triangulation", path]);
    let b = run(&["--output", "json", "fan", "build", "--seed-triangulation", path]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "fan output must be deterministic");
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(v["rays"].as_array().unwrap().len(), 5);
    assert_eq!(v["cones"].as_array().unwrap().len(), 5);

    let out = run(&["fan", "validate", "--seed-triangulation", path]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["--output", "json", "fan", "polytope", "--seed-triangulation", path]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);

    let out = run(&["--output", "json", "fan", "g-vector", "--seed-triangulation", path,
        "--edge", "2,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["coords"], serde_json::json!([-1, 0]));

    // OFF output for the three-dimensional case
    let hexa = write_fixture(
        &dir,
        "hexa.json",
        r#"{"n": 6, "edges": [[1,2],[2,3],[3,4],[4,5],[5,6],[1,6],[1,3],[1,4],[1,5]]}"#,
    );
    let off_path = dir.path().join("out.off");
    let out = run(&["fan", "polytope", "--seed-triangulation", hexa.to_str().unwrap(),
        "--off", off_path.to_str().unwrap()]);
    assert!(out.status.success());
    let off = fs::read_to_string(&off_path).unwrap();
    assert!(off.starts_with("OFF\n14 9 0\n"));
}

#[test]
fn weight_vector_json_roundtrip_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let w = write_fixture(
        &dir,
        "w.json",
        r#"{"n": 4, "basis": "w", "entries": {"1,3": "1"}}"#,
    );
    let out = run(&["--output", "json", "cone", "separation", "--input", w.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["basis"], "v");
    assert_eq!(v["entries"]["1,2"], "1");
    assert_eq!(v["entries"]["1,3"], "1");
    assert_eq!(v["entries"]["2,4"], "1");
    assert_eq!(v["entries"]["3,4"], "1");
    assert!(v["entries"].get("1,4").is_none());

    // and back
    let vfile = write_fixture(&dir, "v.json", &v.to_string());
    let out = run(&["--output", "json", "cone", "inverse", "--input", vfile.to_str().unwrap()]);
    assert!(out.status.success());
    let back: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(back["basis"], "w");
    assert_eq!(back["entries"], serde_json::json!({"1,3": "1"}));
}

#[test]
fn version_prints_subcommand_map() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("subcommands"));
    assert!(text.contains("fan"));
}
