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


//! The four distance-3 CSS codes: stabilizers, logicals, gauge group,
//! lookup decoders and codeword utilities.

mod decoder;
mod logical;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sim_core::PauliString;
use crate::{Error, Result};

pub use decoder::{brute_force_decoder, reference_decoder, surface_decoder_table, DecoderRule, DecoderTable};
pub use logical::{is_logically_correct, prepare_codeword, LogicalState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeName {
    BaconShor,
    Shor,
    Surface,
    Steane,
}

impl CodeName {
    pub const ALL: [CodeName; 4] = [CodeName::BaconShor, CodeName::Shor, CodeName::Surface, CodeName::Steane];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeName::BaconShor => "bacon_shor",
            CodeName::Shor => "shor",
            CodeName::Surface => "surface",
            CodeName::Steane => "steane",
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "bacon_shor" | "baconshor" | "bs" => Ok(CodeName::BaconShor),
            "shor" => Ok(CodeName::Shor),
            "surface" | "rotated_surface" => Ok(CodeName::Surface),
            "steane" => Ok(CodeName::Steane),
            _ => Err(Error::UnknownCode(s.to_string())),
        }
    }
}

/// Pauli type of a stabilizer. `Z`-type stabilizers detect bit flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerType {
    X,
    Z,
}

impl StabilizerType {
    pub fn other(self) -> StabilizerType {
        match self {
            StabilizerType::X => StabilizerType::Z,
            StabilizerType::Z => StabilizerType::X,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub label: String,
    pub pauli: PauliString,
    pub redundant: bool,
}

/// Static description of a code. Stabilizers are listed in extraction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub name: CodeName,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub x_stabilizers: Vec<Stabilizer>,
    pub z_stabilizers: Vec<Stabilizer>,
    pub logical_x: PauliString,
    pub logical_z: PauliString,
    #[serde(default)]
    pub gauge_generators: Vec<PauliString>,
}

fn stab(n: usize, label: &str, kind: StabilizerType, one_based: &[usize], redundant: bool) -> Stabilizer {
    let qubits: Vec<usize> = one_based.iter().map(|q| q - 1).collect();
    let pauli = match kind {
        StabilizerType::X => PauliString::x_on(n, &qubits),
        StabilizerType::Z => PauliString::z_on(n, &qubits),
    }
    .expect("static stabilizer in range");
    Stabilizer {
        label: label.to_string(),
        pauli,
        redundant,
    }
}

fn pauli_on(n: usize, kind: StabilizerType, one_based: &[usize]) -> PauliString {
    stab(n, "", kind, one_based, false).pauli
}

/// Returns the static definition of `name`.
pub fn code_spec(name: CodeName) -> CodeSpec {
    use StabilizerType::{X, Z};
    match name {
        CodeName::BaconShor => {
            let n = 9;
            let mut gauge = Vec::new();
            // X pairs share a column of the 3x3 grid, Z pairs share a row.
            for &(a, b) in &[(1, 4), (4, 7), (2, 5), (5, 8), (3, 6), (6, 9)] {
                gauge.push(pauli_on(n, X, &[a, b]));
            }
            for &(a, b) in &[(1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9)] {
                gauge.push(pauli_on(n, Z, &[a, b]));
            }
            CodeSpec {
                name,
                n,
                k: 1,
                d: 3,
                x_stabilizers: vec![
                    stab(n, "S1X", X, &[1, 2, 3, 4, 5, 6], false),
                    stab(n, "S2X", X, &[4, 5, 6, 7, 8, 9], false),
                    stab(n, "S3X", X, &[1, 2, 3, 7, 8, 9], true),
                ],
                z_stabilizers: vec![
                    stab(n, "S1Z", Z, &[1, 2, 4, 5, 7, 8], false),
                    stab(n, "S2Z", Z, &[2, 3, 5, 6, 8, 9], false),
                    stab(n, "S3Z", Z, &[1, 3, 4, 6, 7, 9], true),
                ],
                logical_x: pauli_on(n, X, &[1, 2, 3]),
                logical_z: pauli_on(n, Z, &[1, 4, 7]),
                gauge_generators: gauge,
            }
        }
        CodeName::Shor => {
            let n = 9;
            let mut z_stabilizers = Vec::new();
            for (t, base) in [(1, 0), (2, 3), (3, 6)] {
                let (a, b, c) = (base + 1, base + 2, base + 3);
                z_stabilizers.push(stab(n, &format!("A{t}1"), Z, &[a, b], false));
                z_stabilizers.push(stab(n, &format!("A{t}2"), Z, &[b, c], false));
                z_stabilizers.push(stab(n, &format!("A{t}3"), Z, &[a, c], true));
            }
            CodeSpec {
                name,
                n,
                k: 1,
                d: 3,
                x_stabilizers: vec![
                    stab(n, "S1X", X, &[1, 2, 3, 4, 5, 6], false),
                    stab(n, "S2X", X, &[4, 5, 6, 7, 8, 9], false),
                    stab(n, "S3X", X, &[1, 2, 3, 7, 8, 9], true),
                ],
                z_stabilizers,
                logical_x: pauli_on(n, X, &[1, 2, 3]),
                logical_z: pauli_on(n, Z, &[1, 4, 7]),
                gauge_generators: Vec::new(),
            }
        }
        CodeName::Surface => {
            let n = 9;
            CodeSpec {
                name,
                n,
                k: 1,
                d: 3,
                x_stabilizers: vec![
                    stab(n, "S1X", X, &[8, 9], false),
                    stab(n, "S2X", X, &[5, 6, 7, 8], false),
                    stab(n, "S3X", X, &[2, 3, 4, 5], false),
                    stab(n, "S4X", X, &[1, 2], false),
                    stab(n, "S12X", X, &[5, 6, 7, 9], true),
                    stab(n, "S34X", X, &[1, 3, 4, 5], true),
                ],
                z_stabilizers: vec![
                    stab(n, "S1Z", Z, &[6, 7], false),
                    stab(n, "S2Z", Z, &[1, 2, 5, 6], false),
                    stab(n, "S3Z", Z, &[4, 5, 8, 9], false),
                    stab(n, "S4Z", Z, &[3, 4], false),
                    stab(n, "S12Z", Z, &[1, 2, 5, 7], true),
                    stab(n, "S34Z", Z, &[3, 5, 8, 9], true),
                ],
                logical_x: pauli_on(n, X, &[1, 6, 7]),
                logical_z: pauli_on(n, Z, &[1, 2, 3]),
                gauge_generators: Vec::new(),
            }
        }
        CodeName::Steane => {
            let n = 7;
            let make = |kind: StabilizerType| {
                let s = if kind == X { "X" } else { "Z" };
                vec![
                    stab(n, &format!("S1{s}"), kind, &[4, 5, 6, 7], false),
                    stab(n, &format!("S2{s}"), kind, &[2, 3, 6, 7], false),
                    stab(n, &format!("S3{s}"), kind, &[1, 3, 5, 7], false),
                    stab(n, &format!("S12{s}"), kind, &[2, 3, 4, 5], true),
                    stab(n, &format!("S23{s}"), kind, &[1, 2, 5, 6], true),
                ]
            };
            CodeSpec {
                name,
                n,
                k: 1,
                d: 3,
                x_stabilizers: make(X),
                z_stabilizers: make(Z),
                logical_x: pauli_on(n, X, &[1, 2, 3]),
                logical_z: pauli_on(n, Z, &[1, 2, 3]),
                gauge_generators: Vec::new(),
            }
        }
    }
}

/// Incremental GF(2) basis over `u64` bit vectors.
#[derive(Debug, Clone, Default)]
pub struct Gf2Basis {
    rows: Vec<u64>,
}

impl Gf2Basis {
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let pivot = 1u64 << (63 - r.leading_zeros());
            if v & pivot != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pivot = 1u64 << (63 - v.leading_zeros());
        for r in &mut self.rows {
            if *r & pivot != 0 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

impl CodeSpec {
    pub fn stabilizers(&self, kind: StabilizerType) -> &[Stabilizer] {
        match kind {
            StabilizerType::X => &self.x_stabilizers,
            StabilizerType::Z => &self.z_stabilizers,
        }
    }

    /// Non-redundant stabilizers of one type, in extraction order.
    pub fn generators(&self, kind: StabilizerType) -> Vec<&Stabilizer> {
        self.stabilizers(kind).iter().filter(|s| !s.redundant).collect()
    }

    pub fn all_generators(&self) -> Vec<&Stabilizer> {
        let mut v = self.generators(StabilizerType::X);
        v.extend(self.generators(StabilizerType::Z));
        v
    }

    pub fn logical(&self, kind: StabilizerType) -> &PauliString {
        match kind {
            StabilizerType::X => &self.logical_x,
            StabilizerType::Z => &self.logical_z,
        }
    }

    /// `Y_L = i X_L Z_L` equals `sign * P` where `P` is the Hermitian string with
    /// `Y` on the overlap of the two supports.
    pub fn logical_y(&self) -> (PauliString, f64) {
        let p = self.logical_x.mul(&self.logical_z).expect("logicals share a length");
        let overlap = (self.logical_x.x_mask() & self.logical_z.z_mask()).count_ones();
        // i * (-i)^w with w odd is real.
        let sign = match (1 + 3 * overlap) % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => unreachable!("logicals must anticommute"),
        };
        (p, sign)
    }

    /// Bit `i` is set when `error` anticommutes with stabilizer `i` of `kind`.
    pub fn syndrome_of(&self, error: &PauliString, kind: StabilizerType) -> Result<Vec<bool>> {
        self.stabilizers(kind)
            .iter()
            .map(|s| Ok(!s.pauli.commutes_with(error)?))
            .collect()
    }

    /// Syndrome restricted to the generators of `kind`.
    pub fn generator_syndrome(&self, error: &PauliString, kind: StabilizerType) -> Result<Vec<bool>> {
        self.generators(kind)
            .into_iter()
            .map(|s| Ok(!s.pauli.commutes_with(error)?))
            .collect()
    }

    fn group_basis(&self, with_gauge: bool) -> (Gf2Basis, Gf2Basis) {
        let mut xb = Gf2Basis::default();
        let mut zb = Gf2Basis::default();
        for s in self.x_stabilizers.iter().chain(&self.z_stabilizers) {
            xb.insert(s.pauli.x_mask());
            zb.insert(s.pauli.z_mask());
        }
        if with_gauge {
            for g in &self.gauge_generators {
                xb.insert(g.x_mask());
                zb.insert(g.z_mask());
            }
        }
        (xb, zb)
    }

    /// True when `p` lies in the group generated by stabilizers and gauge operators,
    /// up to phase. Valid for the CSS codes here since every generator is pure X or Z.
    pub fn is_trivial(&self, p: &PauliString) -> bool {
        let (xb, zb) = self.group_basis(true);
        xb.contains(p.x_mask()) && zb.contains(p.z_mask())
    }

    pub fn in_stabilizer_group(&self, p: &PauliString) -> bool {
        let (xb, zb) = self.group_basis(false);
        xb.contains(p.x_mask()) && zb.contains(p.z_mask())
    }

    /// True when `p` commutes with every stabilizer yet acts nontrivially on the
    /// logical qubit.
    pub fn is_logical_operator(&self, p: &PauliString) -> bool {
        let commutes = self
            .x_stabilizers
            .iter()
            .chain(&self.z_stabilizers)
            .all(|s| s.pauli.anticommute_parity(p) == 0);
        commutes
            && (self.logical_x.anticommute_parity(p) == 1 || self.logical_z.anticommute_parity(p) == 1)
    }

    /// Checks commutation, redundancy and gauge invariants.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidArgument(format!("{}: {msg}", self.name)));
        let all: Vec<&Stabilizer> = self.x_stabilizers.iter().chain(&self.z_stabilizers).collect();
        for s in &all {
            if s.pauli.num_qubits() != self.n {
                return fail(format!("{} has wrong length", s.label));
            }
        }
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if !a.pauli.commutes_with(&b.pauli)? {
                    return fail(format!("{} and {} anticommute", a.label, b.label));
                }
            }
            for l in [&self.logical_x, &self.logical_z] {
                if !a.pauli.commutes_with(l)? {
                    return fail(format!("{} anticommutes with a logical", a.label));
                }
            }
        }
        if self.logical_x.commutes_with(&self.logical_z)? {
            return fail("logical X and Z commute".into());
        }
        for kind in [StabilizerType::X, StabilizerType::Z] {
            let mut basis = Gf2Basis::default();
            let mask = |p: &PauliString| match kind {
                StabilizerType::X => p.x_mask(),
                StabilizerType::Z => p.z_mask(),
            };
            for s in self.generators(kind) {
                if !basis.insert(mask(&s.pauli)) {
                    return fail(format!("generator {} is dependent", s.label));
                }
            }
            for s in self.stabilizers(kind).iter().filter(|s| s.redundant) {
                if !basis.contains(mask(&s.pauli)) {
                    return fail(format!("{} is not a product of generators", s.label));
                }
            }
        }
        let generators = self.all_generators().len();
        if generators + self.k != self.n && self.gauge_generators.is_empty() {
            return fail("generator count does not match n - k".into());
        }
        for g in &self.gauge_generators {
            for s in &all {
                if !g.commutes_with(&s.pauli)? {
                    return fail(format!("gauge {g} anticommutes with {}", s.label));
                }
            }
            for l in [&self.logical_x, &self.logical_z] {
                if !g.commutes_with(l)? {
                    return fail(format!("gauge {g} anticommutes with a logical"));
                }
            }
        }
        Ok(())
    }

    /// Minimum weight over logical operators, found by enumerating strings of
    /// weight up to `max_weight`. `None` when none is that light.
    pub fn min_logical_weight(&self, max_weight: usize) -> Option<usize> {
        let n = self.n;
        let mut best = None;
        let mut idx = vec![0usize; max_weight];
        for w in 1..=max_weight {
            // Supports of size w, each factor one of X, Y, Z.
            let mut found = false;
            for_each_subset(n, w, &mut idx, &mut |support| {
                if found {
                    return;
                }
                for code in 0..3usize.pow(w as u32) {
                    let mut p = PauliString::identity(n);
                    let mut c = code;
                    for &q in support {
                        let pauli = [crate::sim_core::Pauli::X, crate::sim_core::Pauli::Y, crate::sim_core::Pauli::Z][c % 3];
                        c /= 3;
                        p.set(q, pauli).expect("in range");
                    }
                    if self.is_logical_operator(&p) && !self.is_trivial(&p) {
                        found = true;
                        return;
                    }
                }
            });
            if found {
                best = Some(w);
                break;
            }
        }
        best
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<CodeSpec> {
        let spec: CodeSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Calls `f` with every increasing `k`-subset of `0..n`.
pub fn for_each_subset(n: usize, k: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        for i in start..n {
            buf.push(i);
            rec(i + 1, n, k, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    rec(0, n, k, buf, f);
}
