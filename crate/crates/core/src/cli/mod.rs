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


//! Command-line front end.

mod run;

pub use run::{
    fit_rows, load_config, load_rows, run_experiment, worker_count, write_outputs, CrossoverSpec, ExperimentConfig,
    GroupFit, NoiseSpec, OutputSpec, RunSummary, SCHEMA_VERSION, WORKERS_ENV,
};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::circuits::{
    build_circuit, check_ordering, group_elements, lint_guidelines, search_orderings, subsets, ExtractionOrder, GateCounts,
    LintViolation, Mode, QecCircuit, DEFAULT_SEARCH_CAP,
};
use crate::codes::{code_spec, CodeName, LogicalState, StabilizerType};
use crate::ftcheck::{check_r_plus_s, enumerate_single_faults, mutate, Mutation};
use crate::noise::{NoiseKind, NoiseModel, PauliChannel};
use crate::sim_core::{GateKind, PauliString};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "mfqec", version, about = "Measurement-free and feed-forward QEC circuits: verification and Monte Carlo")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exhaustive single-fault and weight-1 input check; exit 1 on any failure.
    Ftcheck(FtcheckArgs),
    /// Guideline linter and gate counts for a circuit.
    Lint(CircuitArgs),
    /// Search extraction orderings that keep single faults correctable.
    Orderings(OrderingsArgs),
    /// Per-gate Pauli channels of a noise model.
    Channels(ChannelsArgs),
    /// Monte Carlo sweep (or idling crossover) described by a JSON config.
    Run(RunArgs),
    /// Pseudo-threshold fits of a results CSV.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub config: PathBuf,
    /// Override the shots per point of the config.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Worker threads; defaults to $MFQEC_WORKERS, then all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Override the output paths of the config.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub csv: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: Option<CodeName>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Read the circuit from a manifest file instead of the built-in one.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FtcheckArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[arg(long, default_value = "depolarizing", value_parser = parse_noise)]
    pub noise: NoiseKind,
    #[arg(long, value_parser = parse_mutation)]
    pub mutate: Option<Mutation>,
}

#[derive(Debug, Args)]
pub struct OrderingsArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: CodeName,
    /// Stabilizer type to order.
    #[arg(long, default_value = "z", value_parser = parse_kind)]
    pub kind: StabilizerType,
    /// Search all subsets of this size of the nontrivial group elements;
    /// without it the code's own extraction set is searched.
    #[arg(long)]
    pub subset_size: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChannelsArgs {
    #[arg(long, default_value = "depolarizing", value_parser = parse_noise)]
    pub model: NoiseKind,
    /// Base rate: the two-qubit rate for the neutral-atom model.
    #[arg(long, alias = "p", default_value_t = 1e-3)]
    pub p2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p_idle: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_code(s: &str) -> std::result::Result<CodeName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_noise(s: &str) -> std::result::Result<NoiseKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mutation(s: &str) -> std::result::Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<StabilizerType, String> {
    match s.to_ascii_lowercase().as_str() {
        "x" => Ok(StabilizerType::X),
        "z" => Ok(StabilizerType::Z),
        _ => Err(format!("unknown stabilizer type {s:?}")),
    }
}

/// Exit status: 0 success, 1 a check failed, 2 usage or input error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(passed) => i32::from(!passed),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Ftcheck(a) => cmd_ftcheck(&a),
        Command::Lint(a) => cmd_lint(&a),
        Command::Orderings(a) => cmd_orderings(&a),
        Command::Channels(a) => cmd_channels(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Fit(a) => cmd_fit(&a),
    }
}

/// Writes `text` to `path` through a temporary file and a rename, or to
/// standard output without a path.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_circuit(a: &CircuitArgs) -> Result<QecCircuit> {
    if let Some(path) = &a.manifest {
        let text = fs::read_to_string(path)?;
        let circ = QecCircuit::parse(&text)?;
        if a.code.is_some_and(|c| c != circ.code.name) || a.mode.is_some_and(|m| m != circ.mode) {
            return Err(Error::InvalidArgument(format!(
                "{} declares {} {}",
                path.display(),
                circ.code.name,
                circ.mode
            )));
        }
        return Ok(circ);
    }
    match (a.code, a.mode) {
        (Some(code), Some(mode)) => build_circuit(code, mode),
        _ => Err(Error::InvalidArgument("--code and --mode are required without --manifest".into())),
    }
}

/// Any positive rate gives every channel its full set of terms.
const PROBE_RATE: f64 = 1e-3;

pub fn cmd_ftcheck(a: &FtcheckArgs) -> Result<bool> {
    let mut circ = load_circuit(&a.circuit)?;
    if let Some(m) = a.mutate {
        circ = mutate(&circ, m)?;
    }
    let model = match a.noise {
        NoiseKind::Depolarizing => NoiseModel::depolarizing(PROBE_RATE),
        NoiseKind::NeutralAtom => NoiseModel::neutral_atom(PROBE_RATE),
    };
    let report = check_r_plus_s(&circ)?.merge(enumerate_single_faults(&circ, &model, &LogicalState::ALL)?);
    eprintln!(
        "ftcheck {} {} {}: {} cases, {} failures",
        circ.code.name,
        circ.mode,
        a.noise,
        report.total_cases,
        report.failures.len()
    );
    emit(a.circuit.out.as_deref(), &report.to_json()?)?;
    Ok(report.passed())
}

#[derive(Debug, Serialize)]
pub struct LintReport {
    pub code: String,
    pub mode: String,
    pub counts: GateCounts,
    pub violations: Vec<LintViolation>,
}

pub fn cmd_lint(a: &CircuitArgs) -> Result<bool> {
    let circ = load_circuit(a)?;
    let report = LintReport {
        code: circ.code.name.to_string(),
        mode: circ.mode.to_string(),
        counts: circ.gate_counts(),
        violations: lint_guidelines(&circ),
    };
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
    Ok(report.violations.is_empty())
}

#[derive(Debug, Serialize)]
pub struct OrderingsReport {
    pub code: String,
    pub kind: String,
    pub candidate_sets: usize,
    pub valid: Vec<Vec<PauliString>>,
}

pub fn cmd_orderings(a: &OrderingsArgs) -> Result<bool> {
    let spec = code_spec(a.code);
    let sets = match a.subset_size {
        Some(k) => subsets(&group_elements(&spec, a.kind), k),
        None => vec![spec.stabilizers(a.kind).iter().map(|s| s.pauli).collect()],
    };
    let valid: Vec<Vec<PauliString>> = search_orderings(&spec, a.kind, &sets, a.cap)?
        .into_iter()
        .map(|o: ExtractionOrder| o.stabilizers)
        .collect();
    let own = ExtractionOrder::from_spec(&spec, a.kind);
    eprintln!(
        "orderings {} {:?}: {} valid; built-in order {}",
        a.code,
        a.kind,
        valid.len(),
        if check_ordering(&own).is_ok() { "valid" } else { "invalid" }
    );
    let report = OrderingsReport {
        code: a.code.to_string(),
        kind: format!("{:?}", a.kind),
        candidate_sets: sets.len(),
        valid,
    };
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
    Ok(true)
}

#[derive(Debug, Serialize)]
pub struct ChannelsReport {
    pub model: NoiseModel,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p_init: f64,
    pub p_meas: f64,
    pub channels: Vec<(String, PauliChannel)>,
}

pub fn cmd_channels(a: &ChannelsArgs) -> Result<bool> {
    let model = match a.model {
        NoiseKind::Depolarizing => NoiseModel::depolarizing(a.p2),
        NoiseKind::NeutralAtom => NoiseModel::neutral_atom(a.p2),
    }
    .with_idle(a.p_idle);
    model.validate()?;
    let mut channels = Vec::new();
    for kind in [GateKind::X, GateKind::H, GateKind::CX, GateKind::CZ, GateKind::CCX, GateKind::CCZ] {
        channels.push((kind.name().to_string(), model.gate_channel(kind)?));
    }
    channels.push(("init".into(), model.init_channel()?));
    channels.push(("idle".into(), crate::noise::idle_channel(model.p_idle)?));
    let report = ChannelsReport {
        model,
        p1: model.p1(),
        p2: model.p2(),
        p3: model.p3(),
        p_init: model.p_init(),
        p_meas: model.p_meas(),
        channels,
    };
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
    Ok(true)
}

pub fn cmd_run(a: &RunArgs) -> Result<bool> {
    let mut config = load_config(&a.config)?;
    if let Some(n) = a.shots {
        config.shots = n;
        if let Some(x) = config.crossover.as_mut() {
            x.shots = n;
        }
        config.validate()?;
    }
    if let Some(p) = &a.csv {
        config.output.csv = p.clone();
    }
    if let Some(p) = &a.json {
        config.output.json = p.clone();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(a.workers)?)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let (rows, summary) = pool.install(|| run_experiment(&config))?;
    write_outputs(&config.output.csv, &config.output.json, &rows, &summary)?;
    eprintln!("wrote {} and {}", config.output.csv.display(), config.output.json.display());
    Ok(true)
}

pub fn cmd_fit(a: &FitArgs) -> Result<bool> {
    let fits = fit_rows(&load_rows(&a.csv)?);
    for f in &fits {
        match (&f.fit, &f.note) {
            (Some(fit), None) => eprintln!("{} {} {}: p_th = {:.4e}", f.code, f.mode, f.noise, fit.p_th.unwrap_or(f64::NAN)),
            (_, Some(note)) => eprintln!("{} {} {}: {note}", f.code, f.mode, f.noise),
            (None, None) => {}
        }
    }
    emit(a.out.as_deref(), &serde_json::to_string_pretty(&fits)?)?;
    Ok(true)
}
