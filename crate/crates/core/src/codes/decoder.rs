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

use serde::{Deserialize, Serialize};

use super::{for_each_subset, CodeName, CodeSpec, StabilizerType};
use crate::sim_core::{Pauli, PauliString};
use crate::{Error, Result};

/// Syndrome pattern over `0`, `1` and the wildcard `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Pattern(Vec<Option<bool>>);

impl Pattern {
    pub fn matches(&self, bits: &[bool]) -> bool {
        self.0.len() == bits.len() && self.0.iter().zip(bits).all(|(p, b)| p.is_none_or(|v| v == *b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<String> for Pattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.to_string()
    }
}

impl std::str::FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                'x' | 'X' | '*' | '?' => Ok(None),
                other => Err(Error::Parse(format!("bad syndrome pattern character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Pattern)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(match b {
                Some(false) => "0",
                Some(true) => "1",
                None => "x",
            })?;
        }
        Ok(())
    }
}

/// A correction applied when `pattern` matches and no `excluding` pattern does.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderRule {
    pub pattern: Pattern,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluding: Vec<Pattern>,
    pub correction: PauliString,
}

impl DecoderRule {
    pub fn fires(&self, bits: &[bool]) -> bool {
        self.pattern.matches(bits) && !self.excluding.iter().any(|e| e.matches(bits))
    }
}

/// Lookup decoder. The correction for a syndrome is the product of the
/// corrections of every rule that fires, so composite corrections arise from
/// overlapping wildcard rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderTable {
    pub width: usize,
    pub num_qubits: usize,
    pub rules: Vec<DecoderRule>,
}

impl DecoderTable {
    pub fn new(width: usize, num_qubits: usize) -> Self {
        DecoderTable {
            width,
            num_qubits,
            rules: Vec::new(),
        }
    }

    pub fn push(&mut self, pattern: &str, excluding: &[&str], correction: PauliString) -> Result<()> {
        let pattern: Pattern = pattern.parse()?;
        let excluding = excluding.iter().map(|e| e.parse()).collect::<Result<Vec<Pattern>>>()?;
        if pattern.len() != self.width || excluding.iter().any(|e| e.len() != self.width) {
            return Err(Error::SizeMismatch {
                expected: self.width,
                found: pattern.len(),
            });
        }
        if correction.num_qubits() != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: correction.num_qubits(),
            });
        }
        self.rules.push(DecoderRule {
            pattern,
            excluding,
            correction,
        });
        Ok(())
    }

    pub fn decode(&self, bits: &[bool]) -> Result<PauliString> {
        if bits.len() != self.width {
            return Err(Error::SizeMismatch {
                expected: self.width,
                found: bits.len(),
            });
        }
        let mut out = PauliString::identity(self.num_qubits);
        for r in self.rules.iter().filter(|r| r.fires(bits)) {
            out = out.mul(&r.correction)?;
        }
        Ok(out)
    }
}

/// Bit pattern of `index` over `width` bits, first bit most significant.
pub(crate) fn index_bits(index: usize, width: usize) -> Vec<bool> {
    (0..width).map(|i| index >> (width - 1 - i) & 1 == 1).collect()
}

fn single(kind: Pauli, one_based: usize) -> PauliString {
    PauliString::single(9, one_based - 1, kind).expect("static qubit in range")
}

/// Optimal one-round surface-code decoder over the four generator bits
/// `(S1, S2, S3, S4)` of the stabilizers of type `syndrome_type`.
/// `Z`-type syndromes give `X` corrections and vice versa.
pub fn surface_decoder_table(syndrome_type: StabilizerType) -> DecoderTable {
    // (pattern, exclusion, X target, Z target)
    const ROWS: [(&str, &[&str], usize, usize); 7] = [
        ("01xx", &["xx10"], 2, 6),
        ("xx01", &[], 3, 1),
        ("xx11", &[], 4, 2),
        ("0110", &[], 5, 5),
        ("11xx", &[], 6, 8),
        ("10xx", &[], 7, 9),
        ("xx10", &["01xx"], 8, 4),
    ];
    let mut t = DecoderTable::new(4, 9);
    for (pattern, excluding, xq, zq) in ROWS {
        let correction = match syndrome_type {
            StabilizerType::Z => single(Pauli::X, xq),
            StabilizerType::X => single(Pauli::Z, zq),
        };
        t.push(pattern, excluding, correction).expect("static table");
    }
    t
}

/// Minimum-weight lookup over the generator syndrome of `syndrome_type`, covering
/// every syndrome produced by an error of weight at most two. Ties go to the
/// error found first in lexicographic support order.
pub fn brute_force_decoder(spec: &CodeSpec, syndrome_type: StabilizerType) -> DecoderTable {
    let width = spec.generators(syndrome_type).len();
    let error_pauli = match syndrome_type {
        StabilizerType::Z => Pauli::X,
        StabilizerType::X => Pauli::Z,
    };
    let mut best: Vec<Option<PauliString>> = vec![None; 1 << width];
    best[0] = Some(PauliString::identity(spec.n));
    let mut buf = Vec::new();
    for w in 1..=2 {
        for_each_subset(spec.n, w, &mut buf, &mut |support| {
            let mut e = PauliString::identity(spec.n);
            for &q in support {
                e.set(q, error_pauli).expect("in range");
            }
            let bits = spec.generator_syndrome(&e, syndrome_type).expect("sizes match");
            let idx = bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
            if best[idx].is_none() {
                best[idx] = Some(e);
            }
        });
    }
    let mut t = DecoderTable::new(width, spec.n);
    for (idx, c) in best.into_iter().enumerate() {
        if let Some(c) = c.filter(|c| !c.is_identity()) {
            let pattern: String = index_bits(idx, width).iter().map(|&b| if b { '1' } else { '0' }).collect();
            t.push(&pattern, &[], c).expect("widths agree");
        }
    }
    t
}

/// Decoder used for the ideal correction round when judging outputs: the
/// optimal table for the surface code, minimum-weight lookup otherwise.
pub fn reference_decoder(spec: &CodeSpec, syndrome_type: StabilizerType) -> DecoderTable {
    match spec.name {
        CodeName::Surface => surface_decoder_table(syndrome_type),
        _ => brute_force_decoder(spec, syndrome_type),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::code_spec;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn surface_table_examples() {
        let t = surface_decoder_table(StabilizerType::Z);
        assert_eq!(t.decode(&bits("1101")).unwrap().to_string(), "IIXIIXIII");
        assert!(t.decode(&bits("0000")).unwrap().is_identity());
        assert_eq!(t.decode(&bits("0110")).unwrap().to_string(), "IIIIXIIII");
        let tz = surface_decoder_table(StabilizerType::X);
        assert_eq!(tz.decode(&bits("0110")).unwrap().to_string(), "IIIIZIIII");
    }

    #[test]
    fn weight_one_errors_are_corrected() {
        for name in CodeName::ALL {
            let spec = code_spec(name);
            for kind in [StabilizerType::X, StabilizerType::Z] {
                let t = reference_decoder(&spec, kind);
                let p = if kind == StabilizerType::Z { Pauli::X } else { Pauli::Z };
                for q in 0..spec.n {
                    let e = PauliString::single(spec.n, q, p).unwrap();
                    let s = spec.generator_syndrome(&e, kind).unwrap();
                    let c = t.decode(&s).unwrap();
                    assert!(spec.is_trivial(&c.mul(&e).unwrap()), "{name} {kind:?} q{q}");
                }
            }
        }
    }

    #[test]
    fn surface_table_agrees_with_brute_force() {
        let spec = code_spec(CodeName::Surface);
        for kind in [StabilizerType::X, StabilizerType::Z] {
            let table = surface_decoder_table(kind);
            let brute = brute_force_decoder(&spec, kind);
            for idx in 0..16 {
                let b = index_bits(idx, 4);
                let a = table.decode(&b).unwrap();
                let c = brute.decode(&b).unwrap();
                assert!(spec.in_stabilizer_group(&a.mul(&c).unwrap()), "{kind:?} {idx:04b}: {a} vs {c}");
            }
        }
    }

    #[test]
    fn brute_force_identity_on_trivial_syndrome() {
        for name in CodeName::ALL {
            let spec = code_spec(name);
            let t = brute_force_decoder(&spec, StabilizerType::Z);
            assert!(t.decode(&vec![false; t.width]).unwrap().is_identity());
        }
    }

    #[test]
    fn pattern_round_trip() {
        let p: Pattern = "01x1".parse().unwrap();
        assert_eq!(p.to_string(), "01x1");
        assert!(p.matches(&bits("0111")));
        assert!(!p.matches(&bits("1101")));
        assert!("01a".parse::<Pattern>().is_err());
    }
}
