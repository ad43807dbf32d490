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


//! Structural checks for the three configurations that spread single faults
//! onto several data qubits.

use serde::Serialize;

use super::{QecCircuit, Role};
use crate::sim_core::{GateKind, GateOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Guideline {
    /// A gate touching more than one data qubit.
    A,
    /// An extraction gate on one data qubit and several other qubits.
    B,
    /// A later data-acting gate whose one-controls all sit on an earlier one.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LintViolation {
    pub guideline: Guideline,
    /// Index into the circuit's gate list.
    pub gate: usize,
    /// Earlier gate involved, for guideline C.
    pub earlier: Option<usize>,
    pub text: String,
}

/// A qubit between two resets.
type Wire = (usize, usize);

#[derive(Clone, Copy, Default)]
struct WireState {
    generation: usize,
    /// Odd number of Hadamards since the last reset.
    x_basis: bool,
    /// Odd number of `X` gates since the last reset.
    negated: bool,
}

struct Correction {
    gate: usize,
    data: usize,
    operands: Vec<Wire>,
}

fn data_target(g: &GateOp, roles: &[Role]) -> Option<usize> {
    let data: Vec<usize> = g.qubits().iter().copied().filter(|&q| roles[q] == Role::Data).collect();
    if data.len() != 1 {
        return None;
    }
    match g.kind() {
        GateKind::CX | GateKind::CCX if g.target() != data[0] => None,
        GateKind::CX | GateKind::CCX | GateKind::CZ | GateKind::CCZ => Some(data[0]),
        _ => None,
    }
}

/// Violations of the three guidelines, in gate order.
pub fn lint_guidelines(circ: &QecCircuit) -> Vec<LintViolation> {
    let roles = &circ.roles;
    let mut wires = vec![WireState::default(); roles.len()];
    let mut corrections: Vec<Correction> = Vec::new();
    let mut out = Vec::new();
    for (i, g) in circ.gates().enumerate() {
        let qs = g.qubits();
        let data_count = qs.iter().filter(|&&q| roles[q] == Role::Data).count();
        let others: Vec<usize> = qs.iter().copied().filter(|&q| roles[q] != Role::Data).collect();
        match g.kind() {
            GateKind::Reset => {
                let w = &mut wires[qs[0]];
                *w = WireState {
                    generation: w.generation + 1,
                    ..WireState::default()
                };
                continue;
            }
            GateKind::H => {
                wires[qs[0]].x_basis ^= true;
                continue;
            }
            GateKind::X => {
                wires[qs[0]].negated ^= true;
                continue;
            }
            GateKind::Measure => continue,
            _ => {}
        }
        if data_count >= 2 {
            out.push(LintViolation {
                guideline: Guideline::A,
                gate: i,
                earlier: None,
                text: g.to_string(),
            });
            continue;
        }
        if data_count == 0 {
            continue;
        }
        let extraction = others.iter().any(|&q| wires[q].x_basis)
            || (matches!(g.kind(), GateKind::CX | GateKind::CCX) && roles[g.target()] != Role::Data);
        if extraction {
            if others.len() >= 2 {
                out.push(LintViolation {
                    guideline: Guideline::B,
                    gate: i,
                    earlier: None,
                    text: g.to_string(),
                });
            }
            continue;
        }
        let Some(data) = data_target(g, roles) else { continue };
        let operands: Vec<Wire> = others.iter().map(|&q| (q, wires[q].generation)).collect();
        let one_controls: Vec<Wire> = others
            .iter()
            .filter(|&&q| !wires[q].negated)
            .map(|&q| (q, wires[q].generation))
            .collect();
        if !one_controls.is_empty() {
            if let Some(prev) = corrections
                .iter()
                .find(|c| c.data != data && one_controls.iter().all(|w| c.operands.contains(w)))
            {
                out.push(LintViolation {
                    guideline: Guideline::C,
                    gate: i,
                    earlier: Some(prev.gate),
                    text: g.to_string(),
                });
            }
        }
        corrections.push(Correction { gate: i, data, operands });
    }
    out
}
