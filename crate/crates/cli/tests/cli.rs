//! End-to-end tests of the dp5 binary: flags, JSON output, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dp5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp5"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn delta_values_and_exit_codes() {
    let out = dp5(&["delta", "--layer", "1"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["delta"], 7);
    assert_eq!(doc["modulus"], 25);

    let out = dp5(&["delta", "--layer", "2"]);
    assert_eq!(stdout_json(&out)["delta"], 57);

    assert_eq!(code(&dp5(&["delta", "--layer", "0"])), 2);
    // clap usage errors are also exit 2
    assert_eq!(code(&dp5(&["delta"])), 2);
}

#[test]
fn outputs_are_byte_identical() {
    let a = dp5(&["delta", "--layer", "3"]);
    let b = dp5(&["delta", "--layer", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = dp5(&["finiteness", "--problem", &toy_problem_path().to_string_lossy()]);
    let b = dp5(&["finiteness", "--problem", &toy_problem_path().to_string_lossy()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn construct_and_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("six.json");
    let out = dp5(&["construct", "--degree", "3", "--layer", "1", "--out", &path.to_string_lossy()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["points"].as_array().unwrap().len(), 6);
    assert_eq!(doc["delta"], 7);
    assert_eq!(doc["field"]["conductor"], 25);
    assert!(path.exists());

    // GP over the native field
    let out = dp5(&["check", &path.to_string_lossy()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], true);

    // excluded prime
    let out = dp5(&["check", &path.to_string_lossy(), "--prime", "5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("excluded prime"));

    // certificate with norms
    let out = dp5(&["check", &path.to_string_lossy(), "--prime", "7", "--certify"]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["valid"], true);
    assert_eq!(cert["residue_degree"], 4);
    for entry in cert["norms"]["mu_norms"].as_array().unwrap() {
        assert_eq!(entry["norm"], "5^1");
    }
    assert_eq!(cert["norms"]["line_det_norms"].as_array().unwrap().len(), 20);

    // without --certify there is no norm section
    let out = dp5(&["check", &path.to_string_lossy(), "--prime", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_json(&out).get("norms").is_none());

    // residue degree cap: q=2 needs d=20
    let out = dp5(&[
        "check",
        &path.to_string_lossy(),
        "--prime",
        "2",
        "--max-residue-degree",
        "10",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("20"));
}

#[test]
fn construct_rejects_bad_input() {
    assert_eq!(code(&dp5(&["construct", "--degree", "5", "--layer", "1"])), 2);
    assert_eq!(code(&dp5(&["construct", "--degree", "3", "--layer", "9"])), 3);
}

#[test]
fn check_rational_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t23.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "degree": 3,
            "field": {"type": "rational"},
            "points": [
                ["4", "2", "1"], ["1/4", "1/2", "1"],
                ["9", "3", "1"], ["1/9", "1/3", "1"],
                ["1", "0", "0"], ["0", "1", "0"]
            ]
        })
        .to_string(),
    )
    .unwrap();
    let out = dp5(&["check", &path.to_string_lossy()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], true);

    // a degenerate variant exits 1 with a witness
    std::fs::write(
        &path,
        serde_json::json!({
            "degree": 3,
            "field": {"type": "rational"},
            "points": [
                ["4", "2", "1"], ["4", "2", "1"],
                ["9", "3", "1"], ["1/9", "1/3", "1"],
                ["1", "0", "0"], ["0", "1", "0"]
            ]
        })
        .to_string(),
    )
    .unwrap();
    let out = dp5(&["check", &path.to_string_lossy()]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["witness"]["kind"], "line");

    // rational configs have no reduction certificates
    let out = dp5(&["check", &path.to_string_lossy(), "--prime", "7"]);
    assert_eq!(code(&out), 2);

    // malformed file
    std::fs::write(&path, "{").unwrap();
    assert_eq!(code(&dp5(&["check", &path.to_string_lossy()])), 2);
}

#[test]
fn invariants_pentahedral() {
    let out = dp5(&["invariants", "--degree", "3", "--pentahedral", "1,1,1,1,1"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["weights"], serde_json::json!([8, 16, 24, 32, 40]));
    assert_eq!(doc["values"], serde_json::json!(["-15", "5", "5", "10", "1"]));
    // wrong arity
    assert_eq!(code(&dp5(&["invariants", "--degree", "3", "--pentahedral", "1,2"])), 2);
}

#[test]
fn invariants_degree_four_pipelines() {
    let paper = dp5(&["invariants", "--degree", "4", "--u", "2", "--v", "3"]);
    assert_eq!(code(&paper), 0);
    let pd = stdout_json(&paper);
    assert_eq!(pd["weights"], serde_json::json!([4, 8, 12]));
    assert_eq!(pd["values"][0], "110731/13271040000");

    let implicit = dp5(&[
        "invariants",
        "--degree",
        "4",
        "--u",
        "2",
        "--v",
        "3",
        "--pipeline",
        "implicitize",
    ]);
    assert_eq!(code(&implicit), 0);
    // same weighted class; at (2,3) the two pipelines agree exactly
    assert_eq!(stdout_json(&implicit)["values"], pd["values"]);

    // degenerate member warns on stderr but still emits values
    let degen = dp5(&["invariants", "--degree", "4", "--u", "1", "--v", "1"]);
    assert_eq!(code(&degen), 0);
    assert!(String::from_utf8_lossy(&degen.stderr).contains("warning"));
    assert!(stdout_json(&degen)["values"].is_array());

    // uv = 0 is a usage error
    assert_eq!(code(&dp5(&["invariants", "--degree", "4", "--u", "0", "--v", "3"])), 2);
}

fn toy_problem_path() -> PathBuf {
    let dir = std::env::temp_dir();
    let path = dir.join("dp5-toy-problem.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "degree": 4,
            "F": {"vars": ["r", "s"], "terms": [{"e": [1, 0], "c": "1"}, {"e": [0, 1], "c": "-1"}]},
            "G": {"vars": ["r", "s"], "terms": [{"e": [1, 0], "c": "1"}, {"e": [0, 1], "c": "1"}]}
        })
        .to_string(),
    )
    .unwrap();
    path
}

#[test]
fn finiteness_toy_problem() {
    let out = dp5(&["finiteness", "--problem", &toy_problem_path().to_string_lossy()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["deg_h1"], 1);
    assert_eq!(doc["deg_h2"], 1);
    assert_eq!(doc["product"], 1);
    assert_eq!(doc["expected"], 518400);
    assert_eq!(doc["match"], false);
}

#[test]
fn finiteness_degree_four_modular() {
    let out = dp5(&["finiteness", "--degree", "4", "--mode", "modular"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["deg_h1"], 720);
    assert_eq!(doc["deg_h2"], 720);
    assert_eq!(doc["product"], 518400);
    assert_eq!(doc["match"], true);
    assert!(doc["witnesses"].as_array().unwrap().len() >= 4);
    assert!(!doc["cleared_content"].as_array().unwrap().is_empty());
}

#[test]
fn finiteness_exact_mode_refuses_full_problem() {
    let out = dp5(&["finiteness", "--degree", "4", "--mode", "exact"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cost cap"));
}

#[test]
fn finiteness_rejects_malformed_problem() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "degree": 4,
            "F": {"vars": ["r", "s", "beta"], "terms": [{"e": [1, 1, 1], "c": "1"}]},
            "G": {"vars": ["r", "s"], "terms": [{"e": [1, 1], "c": "1"}]}
        })
        .to_string(),
    )
    .unwrap();
    assert_eq!(code(&dp5(&["finiteness", "--problem", &path.to_string_lossy()])), 2);
}

#[test]
fn verify_suites() {
    for suite in ["tuv", "pencil", "all"] {
        let out = dp5(&["verify", "--suite", suite]);
        assert_eq!(code(&out), 0, "suite {suite}");
        let doc = stdout_json(&out);
        assert_eq!(doc["all_pass"], true);
        for check in doc["checks"].as_array().unwrap() {
            assert_eq!(check["pass"], true);
        }
    }
    assert_eq!(code(&dp5(&["verify", "--suite", "bogus"])), 2);
}

#[test]
fn jobs_flag_and_env() {
    let out = dp5(&["--jobs", "2", "delta", "--layer", "1"]);
    assert_eq!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_dp5"))
        .env("DP5_JOBS", "2")
        .args(["delta", "--layer", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
