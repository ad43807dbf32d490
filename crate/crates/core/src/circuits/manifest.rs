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


//! Line-oriented circuit manifests.
//!
//! ```text
//! # comment
//! CODE bacon_shor
//! MODE MF
//! ROLE 9 ancilla
//! GATE CX 0 9
//! RULE 01xx !xx10 IXIIIIIII
//! CORRECT
//! ```
//!
//! `RULE` lines give the feed-forward lookup for the measurements taken since
//! the previous `CORRECT`; the correction string covers the data qubits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codes::{CodeName, DecoderRule};
use crate::sim_core::{GateKind, GateOp, PauliString};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "MF", alias = "mf")]
    MeasurementFree,
    #[serde(rename = "FF", alias = "ff")]
    FeedForward,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::MeasurementFree => "MF",
            Mode::FeedForward => "FF",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "MF" | "MEASUREMENT_FREE" => Ok(Mode::MeasurementFree),
            "FF" | "FEED_FORWARD" => Ok(Mode::FeedForward),
            _ => Err(Error::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Data,
    Ancilla,
    Flag,
    Intermediary,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Data => "data",
            Role::Ancilla => "ancilla",
            Role::Flag => "flag",
            Role::Intermediary => "intermediary",
        })
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "data" => Ok(Role::Data),
            "ancilla" => Ok(Role::Ancilla),
            "flag" => Ok(Role::Flag),
            "intermediary" => Ok(Role::Intermediary),
            _ => Err(Error::Parse(format!("unknown role {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifestLine {
    Blank,
    /// Full comment line, including the leading `#`.
    Comment(String),
    Code(CodeName),
    Mode(Mode),
    Role(usize, Role),
    Gate(GateOp),
    Rule(DecoderRule),
    Correct,
}

impl fmt::Display for ManifestLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifestLine::Blank => Ok(()),
            ManifestLine::Comment(c) => f.write_str(c),
            ManifestLine::Code(c) => write!(f, "CODE {c}"),
            ManifestLine::Mode(m) => write!(f, "MODE {m}"),
            ManifestLine::Role(q, r) => write!(f, "ROLE {q} {r}"),
            ManifestLine::Gate(g) => write!(f, "GATE {g}"),
            ManifestLine::Rule(r) => {
                write!(f, "RULE {}", r.pattern)?;
                for e in &r.excluding {
                    write!(f, " !{e}")?;
                }
                write!(f, " {}", r.correction)
            }
            ManifestLine::Correct => f.write_str("CORRECT"),
        }
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<ManifestLine> {
    let err = |msg: String| Error::Parse(format!("line {lineno}: {msg}"));
    let trimmed = line.trim();
    if trimmed.is_empty() {
        return Ok(ManifestLine::Blank);
    }
    if trimmed.starts_with('#') {
        return Ok(ManifestLine::Comment(line.trim_end().to_string()));
    }
    let mut words = trimmed.split_whitespace();
    let head = words.next().unwrap_or_default();
    let rest: Vec<&str> = words.collect();
    let one = |what: &str| -> Result<&str> {
        match rest[..] {
            [w] => Ok(w),
            _ => Err(err(format!("{what} takes one argument"))),
        }
    };
    match head.to_ascii_uppercase().as_str() {
        "CODE" => Ok(ManifestLine::Code(one("CODE")?.parse()?)),
        "MODE" => Ok(ManifestLine::Mode(one("MODE")?.parse()?)),
        "ROLE" => match rest[..] {
            [q, r] => Ok(ManifestLine::Role(
                q.parse().map_err(|_| err(format!("bad qubit {q:?}")))?,
                r.parse()?,
            )),
            _ => Err(err("ROLE takes a qubit and a role".into())),
        },
        "GATE" => {
            let (kind, qs) = rest.split_first().ok_or_else(|| err("GATE needs a kind".into()))?;
            let kind: GateKind = kind.parse()?;
            let qubits = qs
                .iter()
                .map(|q| q.parse::<usize>().map_err(|_| err(format!("bad qubit {q:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(ManifestLine::Gate(GateOp::new(kind, &qubits).map_err(|e| err(e.to_string()))?))
        }
        "RULE" => {
            if rest.len() < 2 {
                return Err(err("RULE needs a pattern and a correction".into()));
            }
            let pattern = rest[0].parse()?;
            let correction: PauliString = rest[rest.len() - 1].parse()?;
            let excluding = rest[1..rest.len() - 1]
                .iter()
                .map(|e| {
                    e.strip_prefix('!')
                        .ok_or_else(|| err(format!("exclusion {e:?} must start with '!'")))?
                        .parse()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ManifestLine::Rule(DecoderRule {
                pattern,
                excluding,
                correction,
            }))
        }
        "CORRECT" if rest.is_empty() => Ok(ManifestLine::Correct),
        other => Err(err(format!("unknown directive {other:?}"))),
    }
}

/// Parsed manifest, kept line by line so that printing reproduces the input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Manifest {
    pub lines: Vec<ManifestLine>,
}

impl Manifest {
    pub fn push(&mut self, line: ManifestLine) {
        self.lines.push(line);
    }
}

impl FromStr for Manifest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| parse_line(l, i + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Manifest { lines })
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
