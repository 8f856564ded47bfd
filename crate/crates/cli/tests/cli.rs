//! End-to-end tests of the `msd` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn msd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("msd-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn chi_of_elliptic_stratum() {
    let o = msd(&["chi", "--spec", spec("m13_k2.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().last().unwrap(), "χ = 1");
}

#[test]
fn chi_json_of_minimal_genus_two() {
    let o = msd(&["chi", "--spec", spec("h2min.json").to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chi"], "-1/40");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn two_level_graphs_of_minimal_genus_two() {
    let o = msd(&["graphs", "--spec", spec("h2min.json").to_str().unwrap(), "--levels", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "2 graphs with 1 level(s) below zero");
    let o = msd(&["graphs", "--spec", spec("h2min.json").to_str().unwrap(), "--levels", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let graphs = v.as_array().unwrap();
    assert_eq!(graphs.len(), 2);
    assert_eq!(graphs[0]["realizability"], "residue");
}

#[test]
fn empty_graph_list_is_valid_json() {
    let o = msd(&["graphs", "--spec", spec("g0_111.json").to_str().unwrap(), "--levels", "7", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!([]));
}

#[test]
fn xi_top_prints_the_value() {
    let o = msd(&["xi-top", "--spec", spec("g0_111.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-4");
    let o = msd(&["xi-top", "--spec", spec("g1_m312.json").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "5/8");
    assert!(v["rule"].is_string());
}

#[test]
fn output_is_deterministic() {
    let args = ["chi", "--spec", spec("cherry.json").to_str().unwrap().to_string().leak(), "--json"];
    assert_eq!(msd(&args).stdout, msd(&args).stdout);
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("msd-cli-test-{}-out.txt", std::process::id()));
    let o = msd(&["xi-top", "--spec", spec("h2min.json").to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "-1/640");
}

#[test]
fn chern_consistency_check() {
    for name in ["h2min.json", "paired_poles.json", "m13_k3.json"] {
        let o = msd(&["check", "--spec", spec(name).to_str().unwrap()]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("consistent = true"));
    }
}

#[test]
fn published_tables_pass_and_perturbed_ones_fail() {
    let o = msd(&["check", "--tables"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let bad = tmp("chi.json", r#"{"values":{"2,2":"15/57"},"provenance":{"2,2":"typo"}}"#);
    let o = msd(&["check", "--tables", "--chi-table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn extra_fixtures_load_and_contradictions_are_rejected() {
    let fixtures = spec("extra_fixtures.json");
    let o = msd(&["chi", "--spec", spec("g1_m312.json").to_str().unwrap(), "--fixtures", fixtures.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&fixtures).unwrap().replace("10/3", "3");
    let bad = tmp("fixtures.json", &text);
    let o = msd(&["chi", "--spec", spec("g1_m312.json").to_str().unwrap(), "--fixtures", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("contradicts"));
}

#[test]
fn unknown_flags_and_invalid_specs_are_rejected() {
    let o = msd(&["chi", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    let bad = tmp("invalid.json", r#"{"components":[{"genus":1,"orders":[3,1]}]}"#);
    let o = msd(&["chi", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orders sum"));
    let o = msd(&["chi"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_fixture_is_a_diagnostic() {
    // Genus three with a double pole: no closed form or fixture covers the
    // top level, so the evaluation stops with a diagnostic.
    let s = tmp("g3.json", r#"{"components":[{"genus":3,"orders":[6,-2]}]}"#);
    let o = msd(&["xi-top", "--spec", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["msd", "xi-top", "--spec", spec("g0_111.json").to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().trim(), "-4");
}

#[test]
fn remaining_commands_run() {
    for cmd in ["info", "divisors", "profiles", "c1", "chern"] {
        let o = msd(&[cmd, "--spec", spec("h2min.json").to_str().unwrap()]);
        assert!(o.status.success(), "{cmd}");
        let o = msd(&[cmd, "--spec", spec("h2min.json").to_str().unwrap(), "--json"]);
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{cmd}: {e}"));
    }
}
