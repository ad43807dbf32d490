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


//! Exhaustive single-fault verification.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{
    Exec, Fault, FaultLocation, FaultPlan, Manifest, ManifestLine, Mode, QecCircuit, Role, SiteKind,
};
use crate::codes::{is_logically_correct, prepare_codeword, LogicalState};
use crate::noise::NoiseModel;
use crate::sim_core::{GateKind, GateOp, Pauli, PauliString, StateVector};
use crate::{Error, Result};

/// Branches whose probability falls below this are not followed.
const BRANCH_WEIGHT: f64 = 1e-12;

/// One verification run: an optional circuit fault and an optional input error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtCase {
    pub location: Option<usize>,
    pub term: Option<PauliString>,
    pub input: LogicalState,
    pub input_error: Option<PauliString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtFailure {
    pub case: usize,
    pub location: Option<usize>,
    /// The faulty op as it reads in the manifest, or `idle q` for idle sites.
    pub site: Option<String>,
    pub term: Option<String>,
    pub input: LogicalState,
    pub input_error: Option<String>,
    /// Outcomes chosen at random resets and measurements on the failing branch.
    pub branch: Vec<bool>,
    /// Recorded measurement outcomes on the failing branch.
    pub record: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtReport {
    pub code: String,
    pub mode: String,
    pub check: String,
    pub total_cases: usize,
    pub failures: Vec<FtFailure>,
}

impl FtReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Combines reports, renumbering the cases of `other` after those of `self`.
    pub fn merge(mut self, other: FtReport) -> FtReport {
        let shift = self.total_cases;
        self.failures.extend(other.failures.into_iter().map(|mut f| {
            f.case += shift;
            f
        }));
        self.total_cases += other.total_cases;
        if self.check != other.check {
            self.check = format!("{}+{}", self.check, other.check);
        }
        self
    }
}

/// Runs one case, following both outcomes of every random reset and
/// measurement. Returns the first branch that ends logically incorrect.
pub fn run_case(circ: &QecCircuit, locations: &[FaultLocation], case: &FtCase) -> Result<Option<(Vec<bool>, Vec<bool>)>> {
    let input = case_input(circ, case)?;
    let plan = match (case.location, &case.term) {
        (Some(loc), Some(term)) => {
            let kind = locations[loc].site.kind;
            FaultPlan::single(circ.num_sites(), loc, Fault::from_term(kind, term))
        }
        _ => FaultPlan::none(circ.num_sites()),
    };
    let exec = Exec::new(circ, &input, &plan)?;
    let mut stack = vec![(exec, Vec::new())];
    while let Some((mut exec, branch)) = stack.pop() {
        match exec.advance()? {
            Some(q) => {
                let p1 = exec.prob_one(q);
                for (outcome, p) in [(true, p1), (false, 1.0 - p1)] {
                    if p > BRANCH_WEIGHT {
                        let mut next = exec.clone();
                        next.resolve(outcome)?;
                        let mut b = branch.clone();
                        b.push(outcome);
                        stack.push((next, b));
                    }
                }
            }
            None => {
                let out = exec.finish()?;
                if !is_logically_correct(&out.data, &circ.code, case.input)? {
                    return Ok(Some((branch, out.record)));
                }
            }
        }
    }
    Ok(None)
}

fn site_text(circ: &QecCircuit, loc: &FaultLocation) -> String {
    match loc.site.kind {
        SiteKind::Idle => format!("idle {}", loc.site.qubits[0]),
        _ => match &circ.ops[loc.site.op] {
            crate::circuits::Op::Gate(g) => g.to_string(),
            crate::circuits::Op::Correct(_) => "CORRECT".into(),
        },
    }
}

fn run_cases(circ: &QecCircuit, locations: &[FaultLocation], cases: &[FtCase], check: &str) -> Result<FtReport> {
    let outcomes: Vec<Result<Option<FtFailure>>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            Ok(run_case(circ, locations, case)?.map(|(branch, record)| FtFailure {
                case: i,
                location: case.location,
                site: case.location.map(|l| site_text(circ, &locations[l])),
                term: case.term.as_ref().map(|t| t.to_string()),
                input: case.input,
                input_error: case.input_error.as_ref().map(|e| e.to_string()),
                branch,
                record,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(f) = o? {
            failures.push(f);
        }
    }
    Ok(FtReport {
        code: circ.code.name.to_string(),
        mode: circ.mode.to_string(),
        check: check.into(),
        total_cases: cases.len(),
        failures,
    })
}

/// Cases for every non-identity term of every location and every input,
/// preceded by one fault-free baseline per input.
pub fn single_fault_cases(locations: &[FaultLocation], inputs: &[LogicalState]) -> Vec<FtCase> {
    let mut cases: Vec<FtCase> = inputs
        .iter()
        .map(|&input| FtCase {
            location: None,
            term: None,
            input,
            input_error: None,
        })
        .collect();
    for loc in locations {
        for term in loc.channel.terms() {
            for &input in inputs {
                cases.push(FtCase {
                    location: Some(loc.index),
                    term: Some(term.pauli),
                    input,
                    input_error: None,
                });
            }
        }
    }
    cases
}

/// Number of faulty cases: terms summed over sites, times the inputs.
pub fn expected_fault_cases(locations: &[FaultLocation], inputs: usize) -> usize {
    locations.iter().map(|l| l.channel.terms().len()).sum::<usize>() * inputs
}

/// Every single fault allowed by `model`, on each input, with no input error.
pub fn enumerate_single_faults(circ: &QecCircuit, model: &NoiseModel, inputs: &[LogicalState]) -> Result<FtReport> {
    let locations = circ.fault_locations(model)?;
    let cases = single_fault_cases(&locations, inputs);
    run_cases(circ, &locations, &cases, "single_faults")
}

/// The fault-free sub-case of the `r + s <= 1` condition: every weight-1 input
/// error on each input state, plus the error-free baseline.
pub fn check_r_plus_s(circ: &QecCircuit) -> Result<FtReport> {
    let n = circ.code.n;
    let mut cases = Vec::new();
    for input in LogicalState::ALL {
        cases.push(FtCase {
            location: None,
            term: None,
            input,
            input_error: None,
        });
        for q in 0..n {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                cases.push(FtCase {
                    location: None,
                    term: None,
                    input,
                    input_error: Some(PauliString::single(n, q, p)?),
                });
            }
        }
    }
    run_cases(circ, &[], &cases, "input_errors")
}

/// Deliberate corruptions used to show the checker catches bad circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Exchanges the data targets of the first two Toffoli-type corrections
    /// acting on different data qubits (MF), or the corrections of the first two lookup
    /// rules with different corrections (FF).
    SwapCorrection,
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "swap-correction" => Ok(Mutation::SwapCorrection),
            _ => Err(Error::InvalidArgument(format!("unknown mutation '{s}'"))),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::SwapCorrection => f.write_str("swap-correction"),
        }
    }
}

/// A Toffoli-type gate that writes onto one data qubit from non-data controls.
fn correction_target(g: &GateOp, roles: &[Role]) -> Option<usize> {
    if !matches!(g.kind(), GateKind::CCX | GateKind::CCZ) {
        return None;
    }
    let data: Vec<usize> = g.qubits().iter().copied().filter(|&q| roles[q] == Role::Data).collect();
    match data.as_slice() {
        [t] if matches!(g.kind(), GateKind::CZ | GateKind::CCZ) || g.target() == *t => Some(*t),
        _ => None,
    }
}

fn retarget(g: &GateOp, from: usize, to: usize) -> Result<GateOp> {
    let qubits: Vec<usize> = g.qubits().iter().map(|&q| if q == from { to } else { q }).collect();
    GateOp::new(g.kind(), &qubits)
}

/// Applies `mutation` to a copy of `circ`.
pub fn mutate(circ: &QecCircuit, mutation: Mutation) -> Result<QecCircuit> {
    let Mutation::SwapCorrection = mutation;
    let mut lines = circ.manifest.lines.clone();
    let not_found = || Error::InvalidArgument(format!("no pair of corrections to swap in {} {}", circ.code.name, circ.mode));
    match circ.mode {
        Mode::MeasurementFree => {
            let picks: Vec<(usize, usize)> = lines
                .iter()
                .enumerate()
                .filter_map(|(i, l)| match l {
                    ManifestLine::Gate(g) => correction_target(g, &circ.roles).map(|t| (i, t)),
                    _ => None,
                })
                .collect();
            let &(i, a) = picks.first().ok_or_else(not_found)?;
            let &(j, b) = picks.iter().find(|(_, t)| *t != a).ok_or_else(not_found)?;
            let (ManifestLine::Gate(gi), ManifestLine::Gate(gj)) = (lines[i].clone(), lines[j].clone()) else {
                unreachable!("picked gate lines");
            };
            lines[i] = ManifestLine::Gate(retarget(&gi, a, b)?);
            lines[j] = ManifestLine::Gate(retarget(&gj, b, a)?);
        }
        Mode::FeedForward => {
            let rules: Vec<usize> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| matches!(l, ManifestLine::Rule(_)))
                .map(|(i, _)| i)
                .collect();
            let correction = |i: usize| match &lines[i] {
                ManifestLine::Rule(r) => r.correction,
                _ => unreachable!("picked rule lines"),
            };
            let i = *rules.first().ok_or_else(not_found)?;
            let j = *rules.iter().find(|&&j| correction(j) != correction(i)).ok_or_else(not_found)?;
            let (ci, cj) = (correction(i), correction(j));
            if let ManifestLine::Rule(r) = &mut lines[i] {
                r.correction = cj;
            }
            if let ManifestLine::Rule(r) = &mut lines[j] {
                r.correction = ci;
            }
        }
    }
    QecCircuit::from_manifest(Manifest { lines })
}

/// The case's codeword with its input error applied.
pub fn case_input(circ: &QecCircuit, case: &FtCase) -> Result<StateVector> {
    let mut input = prepare_codeword(&circ.code, case.input)?;
    if let Some(e) = &case.input_error {
        input.apply_pauli(e)?;
    }
    Ok(input)
}
