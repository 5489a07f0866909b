//! End-to-end tests of the `pcm` binary: exit codes, output contracts,
//! and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn pcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_corner_matrix_reports_expected_indices() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "corner-3-2.csv", "1,1,2\n1,1,1\n0.5,1,1\n");

    let out = pcm(&["analyze", &file, "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["weight_method"], "GM");
    assert_eq!(doc["consistent"], false);
    assert_eq!(doc["indices"]["KII"], 0.5);
    assert!((doc["indices"]["RIC"].as_f64().unwrap() - 0.0474).abs() < 1e-3);
    assert!((doc["indices"]["GWI"].as_f64().unwrap() - 0.1595).abs() < 2e-3);
}

#[test]
fn analyze_consistent_matrix_sets_flag_and_zero_indices() {
    let dir = tempfile::tempdir().unwrap();
    // a_ij = w_i / w_j for w = (0.5, 0.3, 0.2)
    let gen = pcm(&["gen", "weights", "0.5", "0.3", "0.2"]);
    let file = write_file(dir.path(), "consistent.csv", &stdout(&gen));

    let out = pcm(&["analyze", &file, "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["consistent"], true);
    for name in ["CI", "CR", "GWI", "PLI", "GCI", "KII", "RIC"] {
        assert_eq!(doc["indices"][name], 0.0, "{name} must be exactly 0");
    }

    let text = pcm(&["analyze", &file]);
    assert!(stdout(&text).contains("consistent: yes"));
}

#[test]
fn analyze_nonreciprocal_matrix_exits_2_naming_cells() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "bad.csv", "1,2\n0.4,1\n");

    let out = pcm(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("(0,1)"), "diagnostic names the cell pair: {err}");
}

#[test]
fn analyze_missing_file_exits_1() {
    let out = pcm(&["analyze", "/nonexistent/matrix.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_respects_tol_override() {
    let dir = tempfile::tempdir().unwrap();
    // product 0.998, off by 2e-3: fails the default 1e-6 tolerance
    let file = write_file(dir.path(), "loose.csv", "1,2\n0.499,1\n");
    assert_eq!(pcm(&["analyze", &file]).status.code(), Some(2));
    assert!(pcm(&["analyze", &file, "--tol", "0.01"]).status.success());
}

#[test]
fn gen_corner_writes_the_expected_csv() {
    let out = pcm(&["gen", "corner", "3", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,1,2\n1,1,1\n0.5,1,1\n");

    assert_eq!(pcm(&["gen", "corner", "2", "2"]).status.code(), Some(2));
    assert_eq!(pcm(&["gen", "corner", "3", "0"]).status.code(), Some(2));
}

#[test]
fn gen_random_is_deterministic_per_seed() {
    let a = pcm(&["gen", "random", "5", "--seed", "42"]);
    let b = pcm(&["gen", "random", "5", "--seed", "42"]);
    let c = pcm(&["gen", "random", "5", "--seed", "43"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn every_generator_output_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("corner.csv", vec!["gen", "corner", "5", "7"]),
        ("random.csv", vec!["gen", "random", "6", "--seed", "7"]),
        ("log.csv", vec!["gen", "random", "4", "--scale", "log:0.2:5", "--seed", "9"]),
        ("weights.csv", vec!["gen", "weights", "5", "2", "1"]),
    ];
    for (name, args) in cases {
        let gen = pcm(&args);
        assert!(gen.status.success(), "{args:?}");
        let file = write_file(dir.path(), name, &stdout(&gen));
        let analyzed = pcm(&["analyze", &file]);
        assert!(analyzed.status.success(), "analyze failed for {args:?}");
    }
}

#[test]
fn axioms_kii_all_pass_under_strict() {
    let out = pcm(&["axioms", "kii", "--trials", "25", "--strict"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("KII    Y   Y   Y   Y   Y   Y"), "table: {text}");
}

#[test]
fn axioms_ric_reports_a3_counterexample() {
    let out = pcm(&["axioms", "ric", "--trials", "25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("N"), "RIC row contains a fail: {text}");
    assert!(text.contains("counterexamples:"));
    assert!(text.contains("10,1,0.3"), "echoes the counterexample matrix: {text}");

    // strict mode still exits 0: the observed fail matches the pattern
    let strict = pcm(&["axioms", "ric", "--trials", "25", "--strict"]);
    assert!(strict.status.success());
}

#[test]
fn axioms_unknown_index_exits_1() {
    let out = pcm(&["axioms", "frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown index"));
}

#[test]
fn axioms_json_is_well_formed() {
    let out = pcm(&["axioms", "kii", "--trials", "10", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["table"][0]["index"], "KII");
    for axiom in ["A1", "A2", "A3", "A4", "A5", "A6"] {
        assert!(doc["table"][0][axiom].is_string());
    }
    assert!(doc["verdicts"].is_array());
}

#[test]
fn table2_default_run_has_zero_row_and_header() {
    let out = pcm(&["table2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,RIC,CI,GWI,PLI,KII,GCI");
    assert_eq!(lines.next().unwrap(), "1,0,0,0,0,0,0");
    assert_eq!(text.lines().count(), 12, "11 default corner values");
}

#[test]
fn table2_x_below_one_exits_2() {
    let out = pcm(&["table2", "--x", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table2_single_x_json() {
    let out = pcm(&["table2", "--x", "2", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc[0]["x"], 2.0);
    assert_eq!(doc[0]["KII"], 0.5);
    assert!((doc[0]["GCI"].as_f64().unwrap() - 0.1602).abs() < 2e-3);
}

#[test]
fn ri_order_two_is_zero_and_runs_are_reproducible() {
    let a = pcm(&["ri", "2", "200"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("0.0000"));

    let b = pcm(&["ri", "3..4", "300", "--seed", "7"]);
    let c = pcm(&["ri", "3..4", "300", "--seed", "7"]);
    assert_eq!(stdout(&b), stdout(&c));
}

#[test]
fn ri_table_file_feeds_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let table_path = dir.path().join("ri.json");
    let out = pcm(&["ri", "3", "200", "-o", table_path.to_str().unwrap()]);
    assert!(out.status.success());

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&table_path).unwrap()).unwrap();
    assert!(doc["ri"]["3"].is_number());
    assert_eq!(doc["provenance"]["kind"], "monte-carlo");
    assert_eq!(doc["provenance"]["samples"], 200);

    let matrix = write_file(dir.path(), "m.csv", "1,1,2\n1,1,1\n0.5,1,1\n");
    let analyzed = pcm(&[
        "analyze",
        &matrix,
        "--ri-table",
        table_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(analyzed.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&analyzed)).unwrap();
    assert!(doc["indices"]["CR"].is_number());
}

#[test]
fn ri_rejects_bad_ranges() {
    assert_eq!(pcm(&["ri", "8..3"]).status.code(), Some(1));
    assert_eq!(pcm(&["ri", "x"]).status.code(), Some(1));
    // fewer than 100 samples is an input error
    assert_eq!(pcm(&["ri", "3", "50"]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    assert!(pcm(&["--help"]).status.success());
    assert!(pcm(&["--version"]).status.success());
    assert_eq!(pcm(&["bogus-subcommand"]).status.code(), Some(1));
}
