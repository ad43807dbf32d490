// Copyright 2026 The mfqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! The command-line front end: exit codes, outputs and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mfqec::ftcheck::FtReport;
use mfqec::montecarlo::{read_csv, CSV_HEADER};

fn mfqec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfqec")).args(args).output().unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const SMALL_RUN: &str = r#"{
  "schema_version": 1,
  "codes": ["bacon_shor"],
  "modes": ["ff"],
  "noise": {"model": "depolarizing"},
  "p_grid": [0.003, 0.006, 0.012, 0.024],
  "shots": 600,
  "seed": 9
}"#;

fn run_small(dir: &Path, tag: &str, extra: &[&str]) -> (String, String) {
    let config = dir.join("run.json");
    fs::write(&config, SMALL_RUN).unwrap();
    let csv = dir.join(format!("{tag}.csv"));
    let json = dir.join(format!("{tag}.json"));
    let mut args = vec![
        "run",
        config.to_str().unwrap(),
        "--shots",
        "300",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let out = mfqec(&args);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    (fs::read_to_string(csv).unwrap(), fs::read_to_string(json).unwrap())
}

#[test]
fn ftcheck_passes_with_exit_zero() {
    let out = mfqec(&["ftcheck", "--code", "bacon_shor", "--mode", "mf", "--noise", "depolarizing"]);
    assert_eq!(code_of(&out), 0);
    let report: FtReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed());
    assert!(report.total_cases > 0);
}

#[test]
fn ftcheck_mutation_fails_with_a_witness() {
    let out = mfqec(&["ftcheck", "--code", "steane", "--mode", "mf", "--mutate", "swap-correction"]);
    assert_eq!(code_of(&out), 1);
    let report: FtReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.failures.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code_of(&mfqec(&[])), 2);
    assert_eq!(code_of(&mfqec(&["ftcheck", "--code", "golay", "--mode", "mf"])), 2);
    assert_eq!(code_of(&mfqec(&["ftcheck", "--code", "shor", "--mode", "mf", "--mutate", "shuffle"])), 2);
    assert_eq!(code_of(&mfqec(&["run", "/nonexistent/config.json"])), 2);
}

#[test]
fn configs_with_unknown_keys_or_versions_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("typo.json", r#"{"schema_version": 1, "codes": ["shor"], "shotz": 300}"#),
        ("version.json", r#"{"schema_version": 7, "codes": ["shor"]}"#),
    ] {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        let out = mfqec(&["run", p.to_str().unwrap()]);
        assert_eq!(code_of(&out), 2, "{name}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn run_writes_csv_and_sidecar_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, json) = run_small(dir.path(), "a", &["--workers", "1"]);
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    let rows = read_csv(&csv).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.code == "bacon_shor" && r.mode == "FF" && r.noise == "depolarizing"));
    for r in &rows {
        assert!((r.p_err0 + r.p_err1 + r.p_err2plus - 1.0).abs() < 1e-9);
        assert!((r.p_log - r.p_log2plus * r.p_err2plus).abs() < 1e-15);
    }
    let sidecar: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(sidecar["config"]["shots"], 300);
    assert!(sidecar["fits"].is_array());

    let (csv2, json2) = run_small(dir.path(), "b", &["--workers", "2"]);
    assert_eq!(csv, csv2);
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["config"]["output"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&json), strip(&json2));
}

#[test]
fn fit_reads_a_results_csv() {
    let dir = tempfile::tempdir().unwrap();
    run_small(dir.path(), "r", &[]);
    let csv = dir.path().join("r.csv");
    let out = mfqec(&["fit", csv.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let fits: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(fits.is_array() && !fits.as_array().unwrap().is_empty());
}

#[test]
fn lint_orderings_and_channels_succeed() {
    let out = mfqec(&["lint", "--code", "surface", "--mode", "mf"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counts"]["qubits"], 17);

    let out = mfqec(&["orderings", "--code", "steane"]);
    assert_eq!(code_of(&out), 0);
    let out = mfqec(&["orderings", "--code", "steane", "--subset-size", "4"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["candidate_sets"], 35);
    assert_eq!(v["valid"].as_array().unwrap().len(), 0);

    let out = mfqec(&["channels", "--model", "neutral-atom", "--p2", "0.005"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["p1"].as_f64().unwrap() - 0.001).abs() < 1e-15);
    assert!((v["p3"].as_f64().unwrap() - 0.02).abs() < 1e-15);
    assert_eq!(v["channels"].as_array().unwrap().len(), 8);
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let config = mfqec::cli::load_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(config.schema_version, 1);
        seen += 1;
    }
    assert_eq!(seen, 10);
}
