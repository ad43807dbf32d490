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

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    CX,
    CZ,
    CCX,
    CCZ,
    Reset,
    Measure,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::X,
        GateKind::H,
        GateKind::CX,
        GateKind::CZ,
        GateKind::CCX,
        GateKind::CCZ,
        GateKind::Reset,
        GateKind::Measure,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::H | GateKind::Reset | GateKind::Measure => 1,
            GateKind::CX | GateKind::CZ => 2,
            GateKind::CCX | GateKind::CCZ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::CCX => "CCX",
            GateKind::CCZ => "CCZ",
            GateKind::Reset => "R",
            GateKind::Measure => "M",
        }
    }

    /// Unitary gates (everything except reset and measurement).
    pub fn is_unitary(self) -> bool {
        !matches!(self, GateKind::Reset | GateKind::Measure)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "X" => GateKind::X,
            "H" => GateKind::H,
            "CX" | "CNOT" => GateKind::CX,
            "CZ" => GateKind::CZ,
            "CCX" | "TOFFOLI" => GateKind::CCX,
            "CCZ" => GateKind::CCZ,
            "R" | "RESET" => GateKind::Reset,
            "M" | "MEASURE" => GateKind::Measure,
            other => return Err(Error::Parse(format!("unknown gate kind {other:?}"))),
        })
    }
}

/// A gate with its qubits; controls come first for controlled gates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateOp {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::Arity {
                kind: kind.name(),
                expected: kind.arity(),
                found: qubits.len(),
            });
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(GateOp {
            kind,
            qubits: qubits.to_vec(),
        })
    }

    pub fn x(q: usize) -> Self {
        GateOp::new(GateKind::X, &[q]).unwrap()
    }

    pub fn h(q: usize) -> Self {
        GateOp::new(GateKind::H, &[q]).unwrap()
    }

    pub fn cx(c: usize, t: usize) -> Result<Self> {
        GateOp::new(GateKind::CX, &[c, t])
    }

    pub fn cz(a: usize, b: usize) -> Result<Self> {
        GateOp::new(GateKind::CZ, &[a, b])
    }

    pub fn ccx(c1: usize, c2: usize, t: usize) -> Result<Self> {
        GateOp::new(GateKind::CCX, &[c1, c2, t])
    }

    pub fn ccz(a: usize, b: usize, c: usize) -> Result<Self> {
        GateOp::new(GateKind::CCZ, &[a, b, c])
    }

    pub fn reset(q: usize) -> Self {
        GateOp::new(GateKind::Reset, &[q]).unwrap()
    }

    pub fn measure(q: usize) -> Self {
        GateOp::new(GateKind::Measure, &[q]).unwrap()
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Controls of CX/CCX; for the symmetric CZ/CCZ every qubit but the last.
    pub fn controls(&self) -> &[usize] {
        match self.kind {
            GateKind::CX | GateKind::CZ | GateKind::CCX | GateKind::CCZ => {
                &self.qubits[..self.qubits.len() - 1]
            }
            _ => &[],
        }
    }

    pub fn target(&self) -> usize {
        *self.qubits.last().expect("gates have at least one qubit")
    }

    pub fn check_bounds(&self, num_qubits: usize) -> Result<()> {
        for &q in &self.qubits {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_enforced() {
        assert!(GateOp::new(GateKind::CX, &[0]).is_err());
        assert!(GateOp::new(GateKind::CCZ, &[0, 1, 2]).is_ok());
        assert!(matches!(
            GateOp::new(GateKind::CCX, &[0, 1, 1]),
            Err(Error::DuplicateQubit(1))
        ));
    }

    #[test]
    fn kind_round_trips_through_text() {
        for k in GateKind::ALL {
            assert_eq!(k.name().parse::<GateKind>().unwrap(), k);
        }
    }
}
