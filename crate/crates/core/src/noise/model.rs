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


use serde::{Deserialize, Serialize};

use super::{check_probability, depolarizing_channel, z_type_channel, PauliChannel};
use crate::sim_core::{GateKind, PauliString};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Depolarizing,
    NeutralAtom,
}

impl std::fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::NeutralAtom => "neutral_atom",
        })
    }
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "depolarizing" | "fdn" => Ok(NoiseKind::Depolarizing),
            "neutral_atom" | "rdn" | "neutral" => Ok(NoiseKind::NeutralAtom),
            _ => Err(Error::Config(format!("unknown noise model {s:?}"))),
        }
    }
}

/// Noise model with a single base rate.
///
/// Depolarizing: every gate, initialization and measurement fails with
/// `p_phys`. Neutral atom: `p_phys` is the two-qubit rate and the others
/// follow the fixed ratios below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub p_phys: f64,
    #[serde(default)]
    pub p_idle: f64,
}

impl NoiseModel {
    pub fn depolarizing(p: f64) -> Self {
        NoiseModel {
            kind: NoiseKind::Depolarizing,
            p_phys: p,
            p_idle: 0.0,
        }
    }

    pub fn neutral_atom(p2: f64) -> Self {
        NoiseModel {
            kind: NoiseKind::NeutralAtom,
            p_phys: p2,
            p_idle: 0.0,
        }
    }

    pub fn with_idle(mut self, p_idle: f64) -> Self {
        self.p_idle = p_idle;
        self
    }

    pub fn with_p_phys(mut self, p: f64) -> Self {
        self.p_phys = p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p_phys", self.p_phys)?;
        if !(0.0..0.5).contains(&self.p_idle) {
            return Err(Error::ProbabilityOutOfRange {
                what: "p_idle",
                value: self.p_idle,
            });
        }
        if self.kind == NoiseKind::NeutralAtom {
            check_probability("p3 = 4 p2", self.p3())?;
        }
        Ok(())
    }

    /// Single-qubit gate rate.
    pub fn p1(&self) -> f64 {
        match self.kind {
            NoiseKind::Depolarizing => self.p_phys,
            NoiseKind::NeutralAtom => self.p_phys / 5.0,
        }
    }

    pub fn p2(&self) -> f64 {
        self.p_phys
    }

    pub fn p3(&self) -> f64 {
        match self.kind {
            NoiseKind::Depolarizing => self.p_phys,
            NoiseKind::NeutralAtom => 4.0 * self.p_phys,
        }
    }

    /// Error probability of an initialization.
    pub fn p_init(&self) -> f64 {
        match self.kind {
            NoiseKind::Depolarizing => self.p_phys,
            NoiseKind::NeutralAtom => self.p1() / 2.0,
        }
    }

    /// Probability that a measurement outcome is flipped.
    pub fn p_meas(&self) -> f64 {
        match self.kind {
            NoiseKind::Depolarizing => self.p_phys,
            NoiseKind::NeutralAtom => self.p2() / 2.0,
        }
    }

    /// Channel applied after a unitary gate of `kind`, with qubits ordered as the
    /// gate's operands.
    pub fn gate_channel(&self, kind: GateKind) -> Result<PauliChannel> {
        match self.kind {
            NoiseKind::Depolarizing => match kind {
                GateKind::X | GateKind::H => depolarizing_channel(1, self.p1()),
                GateKind::CX | GateKind::CZ => depolarizing_channel(2, self.p2()),
                GateKind::CCX | GateKind::CCZ => depolarizing_channel(3, self.p3()),
                other => Err(Error::UnsupportedGate(other.name().to_string())),
            },
            NoiseKind::NeutralAtom => neutral_atom_channel(kind, self),
        }
    }

    /// Channel after a reset: single-qubit depolarizing, or a bit flip with
    /// `p_init` for neutral atoms.
    pub fn init_channel(&self) -> Result<PauliChannel> {
        match self.kind {
            NoiseKind::Depolarizing => depolarizing_channel(1, self.p_init()),
            NoiseKind::NeutralAtom => PauliChannel::new(1, vec![(PauliString::x_on(1, &[0])?, self.p_init())]),
        }
    }
}

/// Twirled neutral-atom channel for `kind`. Controlled-`X` gates use the
/// controlled-`Z` channel with the target's `Z` replaced by `X`.
pub fn neutral_atom_channel(kind: GateKind, model: &NoiseModel) -> Result<PauliChannel> {
    let p1 = model.p1();
    let x = PauliString::x_on(1, &[0])?;
    let z = PauliString::z_on(1, &[0])?;
    match kind {
        GateKind::X => PauliChannel::new(1, vec![(x, p1 / 2.0), (z, p1 / 2.0)]),
        GateKind::H => PauliChannel::new(1, vec![(x, 3.0 * p1 / 8.0), (z, 3.0 * p1 / 8.0)]),
        GateKind::CZ => z_type_channel(2, model.p2()),
        GateKind::CCZ => z_type_channel(3, model.p3()),
        GateKind::CX => Ok(target_to_x(&z_type_channel(2, model.p2())?, 1)),
        GateKind::CCX => Ok(target_to_x(&z_type_channel(3, model.p3())?, 2)),
        other => Err(Error::UnsupportedGate(other.name().to_string())),
    }
}

/// Conjugates a channel by `H` on `target`.
fn target_to_x(c: &PauliChannel, target: usize) -> PauliChannel {
    let bit = 1u64 << target;
    let terms = c
        .terms()
        .iter()
        .map(|t| {
            let (x, z) = (t.pauli.x_mask(), t.pauli.z_mask());
            let nx = (x & !bit) | (z & bit);
            let nz = (z & !bit) | (x & bit);
            (PauliString::from_masks(c.arity(), nx, nz).expect("same arity"), t.p)
        })
        .collect();
    PauliChannel::new(c.arity(), terms).expect("conjugation preserves validity")
}

/// Measurement duration and dephasing time, both in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdleParams {
    pub t_meas: f64,
    pub t2: f64,
}

impl IdleParams {
    pub fn p_idle(&self) -> Result<f64> {
        if !(self.t_meas >= 0.0 && self.t2 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "idle times must satisfy t >= 0 and T2 > 0, got t={} T2={}",
                self.t_meas, self.t2
            )));
        }
        Ok(0.5 * (1.0 - (-self.t_meas / self.t2).exp()))
    }
}
