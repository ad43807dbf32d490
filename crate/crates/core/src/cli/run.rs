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


//! Experiment configuration and the `run` and `fit` commands.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::write_atomic;
use crate::circuits::{build_circuit, Mode};
use crate::codes::CodeName;
use crate::montecarlo::{
    crossover_experiment, default_grid, estimate_point, fit_pseudo_threshold, read_csv, write_csv, CrossoverConfig,
    CrossoverResult, CsvRow, FitPoint, FitResult, RunConfig, CROSSOVER_SHOTS, DEFAULT_SHOTS,
};
use crate::noise::{NoiseKind, NoiseModel};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "MFQEC_WORKERS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub codes: Vec<CodeName>,
    #[serde(default = "both_modes")]
    pub modes: Vec<Mode>,
    #[serde(default)]
    pub noise: NoiseSpec,
    /// Physical rates; for the neutral-atom model these are two-qubit rates.
    #[serde(default = "default_grid")]
    pub p_grid: Vec<f64>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
    /// When present, `run` performs the MF/FF idling crossover for each code
    /// instead of the threshold sweep.
    #[serde(default)]
    pub crossover: Option<CrossoverSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub model: NoiseKind,
    #[serde(default)]
    pub p_idle: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec {
            model: NoiseKind::Depolarizing,
            p_idle: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_csv")]
    pub csv: PathBuf,
    #[serde(default = "default_json")]
    pub json: PathBuf,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            csv: default_csv(),
            json: default_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossoverSpec {
    pub p2_grid: Vec<f64>,
    pub p_idle_grid: Vec<f64>,
    #[serde(default = "default_crossover_shots")]
    pub shots: u64,
}

fn both_modes() -> Vec<Mode> {
    vec![Mode::MeasurementFree, Mode::FeedForward]
}

fn default_shots() -> u64 {
    DEFAULT_SHOTS
}

fn default_crossover_shots() -> u64 {
    CROSSOVER_SHOTS
}

fn default_csv() -> PathBuf {
    PathBuf::from("results.csv")
}

fn default_json() -> PathBuf {
    PathBuf::from("results.json")
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.codes.is_empty() || self.modes.is_empty() {
            return Err(Error::Config("codes and modes must be non-empty".into()));
        }
        if let Some(x) = &self.crossover {
            if self.noise.model != NoiseKind::NeutralAtom {
                return Err(Error::Config("the crossover runs under the neutral-atom model".into()));
            }
            if x.shots == 0 || x.shots % 3 != 0 {
                return Err(Error::Config(format!("shots must be a positive multiple of 3, got {}", x.shots)));
            }
        }
        self.run_config().validate()
    }

    pub fn model(&self) -> NoiseModel {
        NoiseModel {
            kind: self.noise.model,
            p_phys: 0.0,
            p_idle: self.noise.p_idle,
        }
    }

    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            noise: self.model(),
            p_grid: self.p_grid.clone(),
            shots: self.shots,
            seed: self.seed,
        }
    }
}

/// Fit of one `(code, mode, noise)` group of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFit {
    pub code: String,
    pub mode: String,
    pub noise: String,
    pub fit: Option<FitResult>,
    /// Why there is no fit, or why there is no pseudo-threshold.
    pub note: Option<String>,
}

/// JSON sidecar of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: ExperimentConfig,
    pub fits: Vec<GroupFit>,
    #[serde(default)]
    pub crossover: Vec<CrossoverResult>,
}

/// Fits every `(code, mode, noise)` group in `rows`, in order of appearance.
pub fn fit_rows(rows: &[CsvRow]) -> Vec<GroupFit> {
    let mut order: Vec<(String, String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String, String), Vec<FitPoint>> = BTreeMap::new();
    for r in rows {
        let key = (r.code.clone(), r.mode.clone(), r.noise.clone());
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(FitPoint {
            p: r.p_phys,
            p_log: r.p_log,
            sigma: r.sigma(),
        });
    }
    order
        .into_iter()
        .map(|key| {
            let pts = &groups[&key];
            let (fit, note) = match fit_pseudo_threshold(pts) {
                Ok(f) => {
                    let note = match (f.p_th, f.extrapolated) {
                        (None, _) => Some("no pseudo-threshold in range".to_string()),
                        (Some(_), true) => Some("pseudo-threshold extrapolated outside the sampled range".to_string()),
                        _ => None,
                    };
                    (Some(f), note)
                }
                Err(e) => (None, Some(e.to_string())),
            };
            GroupFit {
                code: key.0,
                mode: key.1,
                noise: key.2,
                fit,
                note,
            }
        })
        .collect()
}

/// Runs the sweep or crossover of `config`; returns the CSV rows and sidecar.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<CsvRow>, RunSummary)> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut crossover = Vec::new();
    let noise = config.noise.model.to_string();
    if let Some(x) = &config.crossover {
        for &code in &config.codes {
            eprintln!("crossover {code}: {}x{} cells", x.p2_grid.len(), x.p_idle_grid.len());
            let r = crossover_experiment(&CrossoverConfig {
                code,
                p2_grid: x.p2_grid.clone(),
                p_idle_grid: x.p_idle_grid.clone(),
                shots: x.shots,
                seed: config.seed,
            })?;
            for c in &r.cells {
                rows.push(CsvRow::new(code.as_str(), "MF", &noise, &c.mf));
                rows.push(CsvRow::new(code.as_str(), "FF", &format!("{noise}+idle{}", c.p_idle), &c.ff));
            }
            crossover.push(r);
        }
        return Ok((rows, RunSummary { config: config.clone(), fits: Vec::new(), crossover }));
    }
    let rc = config.run_config();
    for &code in &config.codes {
        for &mode in &config.modes {
            let circ = build_circuit(code, mode)?;
            for (i, &p) in rc.p_grid.iter().enumerate() {
                let e = estimate_point(&circ, &rc.noise.with_p_phys(p), rc.shots, rc.seed, i as u64)?;
                eprintln!(
                    "{code} {mode} p={p:.3e}: {}/{} failures, p_log={:.3e}",
                    e.failures, e.shots, e.p_log
                );
                rows.push(CsvRow::new(code.as_str(), &mode.to_string(), &noise, &e));
            }
        }
    }
    let fits = fit_rows(&rows);
    Ok((rows, RunSummary { config: config.clone(), fits, crossover }))
}

pub fn write_outputs(csv: &Path, json: &Path, rows: &[CsvRow], summary: &RunSummary) -> Result<()> {
    write_atomic(csv, &write_csv(rows))?;
    write_atomic(json, &(serde_json::to_string_pretty(summary)? + "\n"))
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    ExperimentConfig::parse(&text)
}

pub fn load_rows(path: &Path) -> Result<Vec<CsvRow>> {
    read_csv(&fs::read_to_string(path)?)
}

/// Worker count: the flag, then the environment, then all cores.
pub fn worker_count(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n.max(1));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| n.max(1))
            .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = ExperimentConfig::parse(r#"{"schema_version": 1, "codes": ["steane"]}"#).unwrap();
        assert_eq!(c.modes, both_modes());
        assert_eq!(c.shots, DEFAULT_SHOTS);
        assert_eq!(c.p_grid, default_grid());
        assert_eq!(c.noise, NoiseSpec::default());
    }

    #[test]
    fn unknown_keys_and_versions_are_rejected() {
        assert!(ExperimentConfig::parse(r#"{"schema_version": 1, "codes": ["shor"], "shotz": 3}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"schema_version": 1, "codes": ["shor"], "noise": {"model": "depolarizing", "q": 1}}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"schema_version": 2, "codes": ["shor"]}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"codes": ["shor"]}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"schema_version": 1, "codes": ["shor"], "shots": 100}"#).is_err());
    }

    #[test]
    fn crossover_needs_the_neutral_atom_model() {
        let text = r#"{"schema_version": 1, "codes": ["steane"], "crossover": {"p2_grid": [1e-3], "p_idle_grid": [1e-3]}}"#;
        assert!(ExperimentConfig::parse(text).is_err());
    }

    #[test]
    fn synthetic_quadratic_fits_to_one_half() {
        let rows: Vec<CsvRow> = [0.1, 0.2, 0.3, 0.4, 0.6]
            .iter()
            .map(|&p| CsvRow {
                code: "x".into(),
                mode: "MF".into(),
                noise: "depolarizing".into(),
                p_phys: p,
                p_err0: 0.0,
                p_err1: 0.0,
                p_err2plus: 1.0,
                p_log2plus: 2.0 * p * p,
                stderr: 1e-3,
                p_log: 2.0 * p * p,
            })
            .collect();
        let fits = fit_rows(&rows);
        assert_eq!(fits.len(), 1);
        assert!((fits[0].fit.as_ref().unwrap().p_th.unwrap() - 0.5).abs() < 1e-6);
        assert!(fits[0].note.is_none());
    }
}
