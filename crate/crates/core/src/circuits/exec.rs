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


use rand::Rng;

use super::{FaultLocation, Op, QecCircuit, Role, SiteKind};
use crate::noise::NoiseModel;
use crate::sim_core::{GateKind, PauliString, Register, StateVector};
use crate::{Error, Result};

/// Fault injected at one site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fault {
    /// Pauli on the site's qubits, in site order.
    Pauli(PauliString),
    /// Flipped measurement outcome.
    Flip,
}

impl Fault {
    /// Interprets a channel term drawn at a site of `kind`.
    pub fn from_term(kind: SiteKind, pauli: &PauliString) -> Fault {
        match kind {
            SiteKind::Measure => Fault::Flip,
            _ => Fault::Pauli(*pauli),
        }
    }
}

/// Faults indexed by site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultPlan {
    faults: Vec<Option<Fault>>,
}

impl FaultPlan {
    pub fn none(num_sites: usize) -> Self {
        FaultPlan {
            faults: vec![None; num_sites],
        }
    }

    pub fn single(num_sites: usize, site: usize, fault: Fault) -> Self {
        let mut p = FaultPlan::none(num_sites);
        p.faults[site] = Some(fault);
        p
    }

    pub fn set(&mut self, site: usize, fault: Fault) {
        self.faults[site] = Some(fault);
    }

    pub fn get(&self, site: usize) -> Option<&Fault> {
        self.faults.get(site).and_then(|f| f.as_ref())
    }

    pub fn len(&self) -> usize {
        self.faults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faults.is_empty()
    }

    pub fn count(&self) -> usize {
        self.faults.iter().filter(|f| f.is_some()).count()
    }
}

/// Draws an independent fault at every location.
pub fn sample_fault_plan<R: Rng + ?Sized>(locations: &[FaultLocation], rng: &mut R) -> FaultPlan {
    let mut plan = FaultPlan::none(locations.len());
    for loc in locations {
        if let Some(p) = loc.channel.sample(rng) {
            plan.set(loc.index, Fault::from_term(loc.site.kind, p));
        }
    }
    plan
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub data: StateVector,
    /// Measurement outcomes as recorded, after readout faults.
    pub record: Vec<bool>,
}

/// Step-wise execution that stops whenever a reset or measurement has a
/// random outcome, so that callers can sample or branch.
#[derive(Clone)]
pub struct Exec<'a> {
    circ: &'a QecCircuit,
    plan: &'a FaultPlan,
    reg: Register,
    record: Vec<bool>,
    block_start: usize,
    pc: usize,
    /// Cursor over non-data qubits discarded after the last op.
    discard: usize,
    ancillas: Vec<usize>,
}

impl<'a> Exec<'a> {
    pub fn new(circ: &'a QecCircuit, input: &StateVector, plan: &'a FaultPlan) -> Result<Self> {
        if input.num_qubits() != circ.code.n {
            return Err(Error::SizeMismatch {
                expected: circ.code.n,
                found: input.num_qubits(),
            });
        }
        if plan.len() != circ.num_sites() {
            return Err(Error::SizeMismatch {
                expected: circ.num_sites(),
                found: plan.len(),
            });
        }
        let reg = Register::with_input(circ.num_qubits(), input, &circ.data_qubits())?;
        let ancillas = (0..circ.num_qubits()).filter(|&q| circ.roles[q] != Role::Data).collect();
        Ok(Exec {
            circ,
            plan,
            reg,
            record: Vec::new(),
            block_start: 0,
            pc: 0,
            discard: 0,
            ancillas,
        })
    }

    pub fn register(&self) -> &Register {
        &self.reg
    }

    pub fn record(&self) -> &[bool] {
        &self.record
    }

    pub fn prob_one(&self, q: usize) -> f64 {
        self.reg.prob_one(q)
    }

    fn inject(&mut self, site: usize, qubits: &[usize]) -> Result<bool> {
        match self.plan.get(site) {
            None => Ok(false),
            Some(Fault::Flip) => Ok(true),
            Some(Fault::Pauli(p)) => {
                let full = p.remapped(self.circ.num_qubits(), qubits)?;
                self.reg.apply_pauli(&full)?;
                Ok(false)
            }
        }
    }

    fn outcome_qubit(&self) -> Option<usize> {
        if self.pc < self.circ.ops.len() {
            match &self.circ.ops[self.pc] {
                Op::Gate(g) if matches!(g.kind(), GateKind::Reset | GateKind::Measure) => Some(g.qubits()[0]),
                _ => None,
            }
        } else {
            self.ancillas.get(self.discard).copied()
        }
    }

    /// Runs until an outcome is random; returns that qubit, or `None` once the
    /// circuit and the final discards are done.
    pub fn advance(&mut self) -> Result<Option<usize>> {
        loop {
            if self.pc >= self.circ.ops.len() && self.discard >= self.ancillas.len() {
                return Ok(None);
            }
            match self.outcome_qubit() {
                Some(q) => {
                    if self.reg.is_superposed(q) {
                        return Ok(Some(q));
                    }
                    let v = self.reg.prob_one(q) > 0.5;
                    self.resolve(v)?;
                }
                None => self.step_unitary()?,
            }
        }
    }

    /// Completes the pending reset or measurement with `outcome`.
    pub fn resolve(&mut self, outcome: bool) -> Result<()> {
        if self.pc >= self.circ.ops.len() {
            let q = self.ancillas[self.discard];
            if self.reg.reset_forced(q, outcome) == 0.0 {
                return Err(Error::InvalidArgument(format!("impossible outcome on qubit {q}")));
            }
            self.discard += 1;
            return Ok(());
        }
        let site = self.circ.site_offset(self.pc);
        let Op::Gate(g) = &self.circ.ops[self.pc] else {
            return Err(Error::InvalidArgument("no pending outcome".into()));
        };
        let q = g.qubits()[0];
        match g.kind() {
            GateKind::Reset => {
                if self.reg.reset_forced(q, outcome) == 0.0 {
                    return Err(Error::InvalidArgument(format!("impossible reset outcome on qubit {q}")));
                }
                self.inject(site, &[q])?;
            }
            GateKind::Measure => {
                if self.reg.collapse(q, outcome) == 0.0 {
                    return Err(Error::InvalidArgument(format!("impossible measurement outcome on qubit {q}")));
                }
                let flip = self.inject(site, &[q])?;
                self.record.push(outcome ^ flip);
            }
            _ => return Err(Error::InvalidArgument("no pending outcome".into())),
        }
        self.pc += 1;
        Ok(())
    }

    fn step_unitary(&mut self) -> Result<()> {
        let site = self.circ.site_offset(self.pc);
        match &self.circ.ops[self.pc] {
            Op::Gate(g) => {
                let q = g.qubits();
                match g.kind() {
                    GateKind::X => self.reg.x(q[0]),
                    GateKind::H => self.reg.h(q[0]),
                    GateKind::CX => self.reg.cx(q[0], q[1]),
                    GateKind::CZ => self.reg.cz(q[0], q[1]),
                    GateKind::CCX => self.reg.ccx(q[0], q[1], q[2]),
                    GateKind::CCZ => self.reg.ccz(q[0], q[1], q[2]),
                    GateKind::Reset | GateKind::Measure => unreachable!("handled by resolve"),
                }
                self.inject(site, q)?;
            }
            Op::Correct(table) => {
                if self.circ.idles_at(self.pc) {
                    for (i, q) in self.circ.data_qubits().into_iter().enumerate() {
                        self.inject(site + i, &[q])?;
                    }
                }
                let correction = table.decode(&self.record[self.block_start..])?;
                self.reg.apply_pauli(&correction.resized(self.circ.num_qubits()))?;
                self.block_start = self.record.len();
            }
        }
        self.pc += 1;
        Ok(())
    }

    pub fn finish(self) -> Result<RunOutput> {
        if self.pc < self.circ.ops.len() || self.discard < self.ancillas.len() {
            return Err(Error::InvalidArgument("execution not finished".into()));
        }
        Ok(RunOutput {
            data: self.reg.extract(&self.circ.data_qubits())?,
            record: self.record,
        })
    }
}

/// Runs `circ` on `input` with the faults of `plan`, sampling random
/// outcomes from `rng`. Non-data qubits are discarded at the end.
pub fn run_circuit<R: Rng + ?Sized>(
    circ: &QecCircuit,
    input: &StateVector,
    plan: &FaultPlan,
    rng: &mut R,
) -> Result<RunOutput> {
    let mut exec = Exec::new(circ, input, plan)?;
    while let Some(q) = exec.advance()? {
        let outcome = rng.gen::<f64>() < exec.prob_one(q);
        exec.resolve(outcome)?;
    }
    exec.finish()
}

/// Runs with faults drawn independently from `model` at every site.
pub fn run_noisy<R: Rng + ?Sized>(
    circ: &QecCircuit,
    input: &StateVector,
    model: &NoiseModel,
    rng: &mut R,
) -> Result<RunOutput> {
    let locations = circ.fault_locations(model)?;
    let plan = sample_fault_plan(&locations, rng);
    run_circuit(circ, input, &plan, rng)
}
