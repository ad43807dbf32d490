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


//! Measurement-free and feed-forward QEC circuits, their execution, and
//! structural checks.

mod exec;
mod lint;
mod manifest;
mod ordering;

use serde::{Deserialize, Serialize};

use crate::codes::{code_spec, CodeName, CodeSpec, DecoderTable};
use crate::noise::{NoiseModel, PauliChannel};
use crate::sim_core::{GateKind, GateOp, PauliString};
use crate::{Error, Result};

pub use exec::{run_circuit, run_noisy, sample_fault_plan, Exec, Fault, FaultPlan, RunOutput};
pub use lint::{lint_guidelines, Guideline, LintViolation};
pub use manifest::{Manifest, ManifestLine, Mode, Role};
pub use ordering::{
    active_syndromes, check_ordering, group_elements, ordering_violations, search_orderings, subsets, ExtractionOrder, OrderingViolation,
    DEFAULT_SEARCH_CAP,
};

/// One executable step.
#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Gate(GateOp),
    /// Feed-forward correction from the measurements since the previous one.
    Correct(DecoderTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SiteKind {
    Gate,
    Init,
    Measure,
    Idle,
}

/// A place where a fault may occur; `qubits` are the qubits the fault acts on,
/// in the order of the site's channel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub op: usize,
    pub kind: SiteKind,
    pub gate: Option<GateKind>,
    pub qubits: Vec<usize>,
}

/// A site together with its noise channel. For measurements the single term
/// `X` stands for a flipped outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultLocation {
    pub index: usize,
    pub site: Site,
    pub channel: PauliChannel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GateCounts {
    pub qubits: usize,
    pub resets: usize,
    pub single: usize,
    pub two: usize,
    pub three: usize,
    pub measurements: usize,
}

impl GateCounts {
    /// `(R, G1, G2, G3, M)`.
    pub fn tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.resets, self.single, self.two, self.three, self.measurements)
    }
}

#[derive(Debug, Clone)]
pub struct QecCircuit {
    pub code: CodeSpec,
    pub mode: Mode,
    pub roles: Vec<Role>,
    pub ops: Vec<Op>,
    pub manifest: Manifest,
    /// Index of the first fault site of each op.
    site_offsets: Vec<usize>,
    num_sites: usize,
    /// The last CORRECT of the round, where the data qubits idle while the
    /// final measurements are read out.
    idle_op: Option<usize>,
}

impl QecCircuit {
    pub fn from_manifest(manifest: Manifest) -> Result<Self> {
        let mut code = None;
        let mut mode = None;
        let mut roles: Vec<Option<Role>> = Vec::new();
        let mut gates: Vec<ManifestLine> = Vec::new();
        for line in &manifest.lines {
            match line {
                ManifestLine::Code(c) => code = Some(*c),
                ManifestLine::Mode(m) => mode = Some(*m),
                ManifestLine::Role(q, r) => {
                    if *q >= roles.len() {
                        roles.resize(q + 1, None);
                    }
                    if roles[*q].replace(*r).is_some() {
                        return Err(Error::Parse(format!("qubit {q} has two roles")));
                    }
                }
                ManifestLine::Gate(_) | ManifestLine::Rule(_) | ManifestLine::Correct => gates.push(line.clone()),
                ManifestLine::Blank | ManifestLine::Comment(_) => {}
            }
        }
        let code = code_spec(code.ok_or_else(|| Error::Parse("manifest lacks CODE".into()))?);
        let mode = mode.ok_or_else(|| Error::Parse("manifest lacks MODE".into()))?;
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(q, r)| r.ok_or_else(|| Error::Parse(format!("qubit {q} has no role"))))
            .collect::<Result<Vec<_>>>()?;
        for (q, r) in roles.iter().enumerate() {
            if (q < code.n) != (*r == Role::Data) {
                return Err(Error::Parse(format!("data qubits must be exactly 0..{}", code.n)));
            }
        }
        let num_qubits = roles.len();
        let mut ops = Vec::new();
        let mut pending_rules = Vec::new();
        let mut measured_in_block = 0usize;
        for line in gates {
            match line {
                ManifestLine::Gate(g) => {
                    g.check_bounds(num_qubits)?;
                    match (mode, g.kind()) {
                        (Mode::MeasurementFree, GateKind::Measure) => {
                            return Err(Error::Parse("measurement in an MF circuit".into()))
                        }
                        (Mode::FeedForward, GateKind::CCX | GateKind::CCZ)
                            if g.qubits().iter().any(|&q| roles[q] == Role::Data) =>
                        {
                            return Err(Error::Parse(format!("FF circuit has quantum-controlled correction {g}")))
                        }
                        (_, GateKind::Measure) => measured_in_block += 1,
                        _ => {}
                    }
                    ops.push(Op::Gate(g));
                }
                ManifestLine::Rule(r) => {
                    if mode == Mode::MeasurementFree {
                        return Err(Error::Parse("RULE in an MF circuit".into()));
                    }
                    pending_rules.push(r);
                }
                ManifestLine::Correct => {
                    if mode == Mode::MeasurementFree {
                        return Err(Error::Parse("CORRECT in an MF circuit".into()));
                    }
                    let mut table = DecoderTable::new(measured_in_block, code.n);
                    for r in pending_rules.drain(..) {
                        if r.pattern.len() != measured_in_block || r.excluding.iter().any(|e| e.len() != measured_in_block) {
                            return Err(Error::Parse(format!(
                                "rule {} does not match the {measured_in_block} measurements of its block",
                                r.pattern
                            )));
                        }
                        if r.correction.num_qubits() != code.n {
                            return Err(Error::SizeMismatch {
                                expected: code.n,
                                found: r.correction.num_qubits(),
                            });
                        }
                        table.rules.push(r);
                    }
                    ops.push(Op::Correct(table));
                    measured_in_block = 0;
                }
                _ => unreachable!(),
            }
        }
        if !pending_rules.is_empty() {
            return Err(Error::Parse("RULE lines after the last CORRECT".into()));
        }
        let idle_op = ops.iter().rposition(|op| matches!(op, Op::Correct(_)));
        let mut site_offsets = Vec::with_capacity(ops.len());
        let mut num_sites = 0;
        for (i, op) in ops.iter().enumerate() {
            site_offsets.push(num_sites);
            num_sites += match op {
                Op::Gate(_) => 1,
                Op::Correct(_) if Some(i) == idle_op => code.n,
                Op::Correct(_) => 0,
            };
        }
        Ok(QecCircuit {
            code,
            mode,
            roles,
            ops,
            manifest,
            site_offsets,
            num_sites,
            idle_op,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        QecCircuit::from_manifest(text.parse()?)
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub(crate) fn site_offset(&self, op: usize) -> usize {
        self.site_offsets[op]
    }

    pub fn data_qubits(&self) -> Vec<usize> {
        (0..self.code.n).collect()
    }

    pub fn gates(&self) -> impl Iterator<Item = &GateOp> {
        self.ops.iter().filter_map(|o| match o {
            Op::Gate(g) => Some(g),
            Op::Correct(_) => None,
        })
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut c = GateCounts {
            qubits: self.num_qubits(),
            ..GateCounts::default()
        };
        for g in self.gates() {
            match g.kind() {
                GateKind::Reset => c.resets += 1,
                GateKind::Measure => c.measurements += 1,
                GateKind::X | GateKind::H => c.single += 1,
                GateKind::CX | GateKind::CZ => c.two += 1,
                GateKind::CCX | GateKind::CCZ => c.three += 1,
            }
        }
        c
    }

    /// Fault sites in execution order.
    pub fn sites(&self) -> Vec<Site> {
        let mut out = Vec::new();
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                Op::Gate(g) => {
                    let kind = match g.kind() {
                        GateKind::Reset => SiteKind::Init,
                        GateKind::Measure => SiteKind::Measure,
                        _ => SiteKind::Gate,
                    };
                    out.push(Site {
                        op: i,
                        kind,
                        gate: Some(g.kind()),
                        qubits: g.qubits().to_vec(),
                    });
                }
                Op::Correct(_) if Some(i) == self.idle_op => {
                    for q in self.data_qubits() {
                        out.push(Site {
                            op: i,
                            kind: SiteKind::Idle,
                            gate: None,
                            qubits: vec![q],
                        });
                    }
                }
                Op::Correct(_) => {}
            }
        }
        out
    }

    /// Whether the data qubits idle at op `i`.
    pub fn idles_at(&self, i: usize) -> bool {
        self.idle_op == Some(i)
    }

    /// Sites with the channels of `model`.
    pub fn fault_locations(&self, model: &NoiseModel) -> Result<Vec<FaultLocation>> {
        model.validate()?;
        let x = PauliString::x_on(1, &[0])?;
        self.sites()
            .into_iter()
            .enumerate()
            .map(|(index, site)| {
                let channel = match site.kind {
                    SiteKind::Gate => model.gate_channel(site.gate.expect("gate site"))?,
                    SiteKind::Init => model.init_channel()?,
                    SiteKind::Measure => PauliChannel::new(1, vec![(x, model.p_meas())])?,
                    SiteKind::Idle => crate::noise::idle_channel(model.p_idle)?,
                };
                Ok(FaultLocation { index, site, channel })
            })
            .collect()
    }
}

/// Manifest text for the built-in circuits.
pub fn manifest_text(code: CodeName, mode: Mode) -> &'static str {
    match (code, mode) {
        (CodeName::BaconShor, Mode::MeasurementFree) => include_str!("../../circuits/bacon_shor_mf.qec"),
        (CodeName::BaconShor, Mode::FeedForward) => include_str!("../../circuits/bacon_shor_ff.qec"),
        (CodeName::Shor, Mode::MeasurementFree) => include_str!("../../circuits/shor_mf.qec"),
        (CodeName::Shor, Mode::FeedForward) => include_str!("../../circuits/shor_ff.qec"),
        (CodeName::Surface, Mode::MeasurementFree) => include_str!("../../circuits/surface_mf.qec"),
        (CodeName::Surface, Mode::FeedForward) => include_str!("../../circuits/surface_ff.qec"),
        (CodeName::Steane, Mode::MeasurementFree) => include_str!("../../circuits/steane_mf.qec"),
        (CodeName::Steane, Mode::FeedForward) => include_str!("../../circuits/steane_ff.qec"),
    }
}

/// The built-in circuit for `code` in `mode`.
pub fn build_circuit(code: CodeName, mode: Mode) -> Result<QecCircuit> {
    let circ = QecCircuit::parse(manifest_text(code, mode))?;
    if circ.code.name != code || circ.mode != mode {
        return Err(Error::Parse(format!("manifest for {code} {mode} declares {} {}", circ.code.name, circ.mode)));
    }
    Ok(circ)
}
