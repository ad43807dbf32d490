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

//! A register that keeps qubits in computational basis states outside the
//! dense vector.
//!
//! Ancillas in QEC circuits spend most of their life in a definite Z state
//! (freshly reset, or holding a syndrome bit). Tracking those as classical
//! bits keeps the dense part near the size of the data register, while the
//! semantics stay exactly those of [`StateVector`] up to a global phase.

use num_complex::Complex64;
use rand::Rng;

use super::gate::{GateKind, GateOp};
use super::pauli::PauliString;
use super::state::{sample_outcome, StateVector, DETERMINISTIC_EPS, MAX_QUBITS};
use crate::error::{Error, Result};

/// Weight below which a qubit is considered to be in a basis state and gets
/// moved out of the dense vector.
const FACTOR_EPS: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct Register {
    num_qubits: usize,
    /// Dense position of each physical qubit, if live.
    pos: Vec<Option<usize>>,
    /// Physical qubit at each dense position.
    live: Vec<usize>,
    /// Value of each non-live qubit.
    bits: Vec<bool>,
    /// Qubits never moved out of the dense vector.
    pinned: Vec<bool>,
    state: StateVector,
}

impl Register {
    /// All qubits in `|0>`, classical.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit"
            )));
        }
        Ok(Register {
            num_qubits,
            pos: vec![None; num_qubits],
            live: Vec::new(),
            bits: vec![false; num_qubits],
            pinned: vec![false; num_qubits],
            state: StateVector::zeros(0)?,
        })
    }

    /// Places `input` on the qubits `targets` (input qubit `i` goes to
    /// `targets[i]`); every other qubit starts in `|0>`. Target qubits are
    /// pinned to the dense vector.
    pub fn with_input(num_qubits: usize, input: &StateVector, targets: &[usize]) -> Result<Self> {
        if targets.len() != input.num_qubits() {
            return Err(Error::SizeMismatch {
                expected: targets.len(),
                found: input.num_qubits(),
            });
        }
        let mut reg = Register::new(num_qubits)?;
        for (i, &t) in targets.iter().enumerate() {
            if t >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: t, num_qubits });
            }
            if reg.pos[t].is_some() {
                return Err(Error::DuplicateQubit(t));
            }
            reg.pos[t] = Some(i);
            reg.pinned[t] = true;
        }
        reg.live = targets.to_vec();
        reg.state = input.clone();
        Ok(reg)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of qubits currently held in the dense vector.
    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    pub fn is_live(&self, q: usize) -> bool {
        self.pos[q].is_some()
    }

    /// Classical value of `q`, if it is not live.
    pub fn classical_value(&self, q: usize) -> Option<bool> {
        match self.pos[q] {
            None => Some(self.bits[q]),
            Some(_) => None,
        }
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Moves `q` into the dense vector (no-op when live).
    fn activate(&mut self, q: usize) -> usize {
        if let Some(p) = self.pos[q] {
            return p;
        }
        let p = self.live.len();
        let old = std::mem::take(self.state.amplitudes_mut_vec());
        let half = old.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); half * 2];
        let offset = if self.bits[q] { half } else { 0 };
        amps[offset..offset + half].copy_from_slice(&old);
        self.state = StateVector::from_raw(amps);
        self.live.push(q);
        self.pos[q] = Some(p);
        p
    }

    /// Removes live qubit `q`, assumed to be (numerically) in basis state
    /// `value`.
    fn deactivate(&mut self, q: usize, value: bool) {
        let p = self.pos[q].expect("deactivate on classical qubit");
        let top = self.live.len() - 1;
        if p != top {
            self.state.swap_qubits(p, top);
            let moved = self.live[top];
            self.live[p] = moved;
            self.pos[moved] = Some(p);
        }
        self.live.pop();
        self.pos[q] = None;
        self.bits[q] = value;
        let amps = self.state.amplitudes_mut_vec();
        let half = amps.len() / 2;
        if value {
            amps.drain(..half);
        } else {
            amps.truncate(half);
        }
        let mut s = StateVector::from_raw(std::mem::take(amps));
        let n = s.norm();
        s.scale(1.0 / n);
        self.state = s;
    }

    /// Moves `q` out of the dense vector if it is in a basis state.
    fn try_factor(&mut self, q: usize) {
        if self.pinned[q] {
            return;
        }
        if let Some(p) = self.pos[q] {
            let p1 = self.state.prob_one(p);
            if p1 < FACTOR_EPS {
                self.deactivate(q, false);
            } else if p1 > 1.0 - FACTOR_EPS {
                self.deactivate(q, true);
            }
        }
    }

    pub fn x(&mut self, q: usize) {
        match self.pos[q] {
            Some(p) => self.state.x(p),
            None => self.bits[q] = !self.bits[q],
        }
    }

    pub fn z(&mut self, q: usize) {
        if let Some(p) = self.pos[q] {
            self.state.z(p);
        }
    }

    pub fn h(&mut self, q: usize) {
        let p = self.activate(q);
        self.state.h(p);
        self.try_factor(q);
    }

    pub fn cx(&mut self, c: usize, t: usize) {
        match self.pos[c] {
            None => {
                if self.bits[c] {
                    self.x(t);
                }
            }
            Some(pc) => {
                let pt = self.activate(t);
                self.state.cx(pc, pt);
                self.try_factor(t);
                self.try_factor(c);
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        match (self.pos[a], self.pos[b]) {
            (Some(pa), Some(pb)) => self.state.cz(pa, pb),
            (None, _) => {
                if self.bits[a] {
                    self.z(b);
                }
            }
            (_, None) => {
                if self.bits[b] {
                    self.z(a);
                }
            }
        }
    }

    pub fn ccx(&mut self, c1: usize, c2: usize, t: usize) {
        let mut controls = Vec::with_capacity(2);
        for c in [c1, c2] {
            match self.pos[c] {
                None if !self.bits[c] => return,
                None => {}
                Some(_) => controls.push(c),
            }
        }
        match controls[..] {
            [] => self.x(t),
            [c] => self.cx(c, t),
            _ => {
                let pt = self.activate(t);
                let (p1, p2) = (self.pos[c1].unwrap(), self.pos[c2].unwrap());
                self.state.ccx(p1, p2, pt);
                self.try_factor(t);
                self.try_factor(c1);
                self.try_factor(c2);
            }
        }
    }

    pub fn ccz(&mut self, a: usize, b: usize, c: usize) {
        let mut rest = Vec::with_capacity(3);
        for q in [a, b, c] {
            match self.pos[q] {
                None if !self.bits[q] => return,
                None => {}
                Some(_) => rest.push(q),
            }
        }
        match rest[..] {
            [] => {}
            [q] => self.z(q),
            [q, r] => self.cz(q, r),
            _ => self.state.ccz(
                self.pos[a].unwrap(),
                self.pos[b].unwrap(),
                self.pos[c].unwrap(),
            ),
        }
    }

    pub fn prob_one(&self, q: usize) -> f64 {
        match self.pos[q] {
            Some(p) => self.state.prob_one(p),
            None => {
                if self.bits[q] {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Projects `q` onto `outcome`; returns the branch probability (0 means
    /// the branch is impossible and nothing changed).
    pub fn collapse(&mut self, q: usize, outcome: bool) -> f64 {
        match self.pos[q] {
            None => {
                if self.bits[q] == outcome {
                    1.0
                } else {
                    0.0
                }
            }
            Some(p) => {
                let prob = self.state.collapse(p, outcome);
                if prob > 0.0 && !self.pinned[q] {
                    self.deactivate(q, outcome);
                }
                prob
            }
        }
    }

    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let outcome = sample_outcome(self.prob_one(q), rng);
        self.collapse(q, outcome);
        outcome
    }

    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let outcome = self.measure(q, rng);
        if outcome {
            self.x(q);
        }
        outcome
    }

    /// Resets `q` along a chosen branch. Returns the branch probability.
    pub fn reset_forced(&mut self, q: usize, outcome: bool) -> f64 {
        let prob = self.collapse(q, outcome);
        if prob > 0.0 && outcome {
            self.x(q);
        }
        prob
    }

    /// True when both reset outcomes of `q` have non-negligible weight.
    pub fn is_superposed(&self, q: usize) -> bool {
        let p1 = self.prob_one(q);
        (DETERMINISTIC_EPS..=1.0 - DETERMINISTIC_EPS).contains(&p1)
    }

    pub fn apply_gate<R: Rng + ?Sized>(&mut self, gate: &GateOp, rng: &mut R) -> Result<Option<bool>> {
        gate.check_bounds(self.num_qubits)?;
        let q = gate.qubits();
        match gate.kind() {
            GateKind::X => self.x(q[0]),
            GateKind::H => self.h(q[0]),
            GateKind::CX => self.cx(q[0], q[1]),
            GateKind::CZ => self.cz(q[0], q[1]),
            GateKind::CCX => self.ccx(q[0], q[1], q[2]),
            GateKind::CCZ => self.ccz(q[0], q[1], q[2]),
            GateKind::Reset => return Ok(Some(self.reset(q[0], rng))),
            GateKind::Measure => return Ok(Some(self.measure(q[0], rng))),
        }
        Ok(None)
    }

    /// Applies a Pauli string over the full register (global phase dropped).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: p.num_qubits(),
            });
        }
        let (mut x, mut z) = (0usize, 0usize);
        let mut support = p.support();
        while support != 0 {
            let q = support.trailing_zeros() as usize;
            support &= support - 1;
            let has_x = (p.x_mask() >> q) & 1 == 1;
            let has_z = (p.z_mask() >> q) & 1 == 1;
            match self.pos[q] {
                Some(pq) => {
                    if has_x {
                        x |= 1 << pq;
                    }
                    if has_z {
                        z |= 1 << pq;
                    }
                }
                None => {
                    if has_x {
                        self.bits[q] = !self.bits[q];
                    }
                }
            }
        }
        self.state.apply_xz(x, z);
        Ok(())
    }

    /// Dense state over the listed qubits (qubit `qubits[i]` becomes bit `i`).
    /// Every other qubit must be classical; their values are dropped.
    pub fn extract(&self, qubits: &[usize]) -> Result<StateVector> {
        for &q in qubits {
            self.check(q)?;
        }
        for (q, p) in self.pos.iter().enumerate() {
            if p.is_some() && !qubits.contains(&q) {
                return Err(Error::InvalidArgument(format!(
                    "qubit {q} is still entangled with the extracted register"
                )));
            }
        }
        let mut out = StateVector::zeros(qubits.len())?;
        let amps = out.amplitudes_mut();
        amps[0] = Complex64::new(0.0, 0.0);
        let mut fixed = 0usize;
        for (i, &q) in qubits.iter().enumerate() {
            if self.pos[q].is_none() && self.bits[q] {
                fixed |= 1 << i;
            }
        }
        let src = self.state.amplitudes();
        for (k, a) in src.iter().enumerate() {
            let mut idx = fixed;
            for (p, &q) in self.live.iter().enumerate() {
                if (k >> p) & 1 == 1 {
                    let i = qubits.iter().position(|&x| x == q).unwrap();
                    idx |= 1 << i;
                }
            }
            amps[idx] = *a;
        }
        Ok(out)
    }

    /// The full register as a dense state.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        let all: Vec<usize> = (0..self.num_qubits).collect();
        self.extract(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> GateOp {
        let kind = GateKind::ALL[rng.gen_range(0..GateKind::ALL.len())];
        let mut qs: Vec<usize> = Vec::new();
        while qs.len() < kind.arity() {
            let q = rng.gen_range(0..n);
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
        GateOp::new(kind, &qs).unwrap()
    }

    #[test]
    fn matches_dense_simulation_up_to_phase() {
        let n = 6;
        for seed in 0..40 {
            let mut gen = ChaCha8Rng::seed_from_u64(seed);
            let mut dense = StateVector::zeros(n).unwrap();
            let mut reg = Register::new(n).unwrap();
            let mut r1 = ChaCha8Rng::seed_from_u64(1000 + seed);
            let mut r2 = ChaCha8Rng::seed_from_u64(1000 + seed);
            for _ in 0..120 {
                let g = random_gate(&mut gen, n);
                let a = dense.apply_gate(&g, &mut r1).unwrap();
                let b = reg.apply_gate(&g, &mut r2).unwrap();
                assert_eq!(a, b, "outcome differs at {g}");
            }
            let f = dense.fidelity(&reg.to_state_vector().unwrap()).unwrap();
            assert!((f - 1.0).abs() < 1e-9, "seed {seed}: fidelity {f}");
        }
    }

    #[test]
    fn ancilla_leaves_dense_vector_when_in_basis_state() {
        let mut input = StateVector::zeros(2).unwrap();
        input.h(0);
        let mut reg = Register::with_input(4, &input, &[0, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        reg.h(2);
        assert_eq!(reg.live_count(), 3);
        reg.h(2);
        assert_eq!(reg.live_count(), 2);
        reg.cx(0, 3);
        assert_eq!(reg.live_count(), 3);
        reg.reset(3, &mut rng);
        assert_eq!(reg.live_count(), 2);
        assert_eq!(reg.classical_value(3), Some(false));
        // pinned qubits stay live even in basis states
        reg.cx(1, 2);
        assert_eq!(reg.live_count(), 2);
        assert!(reg.is_live(1));
    }
}
