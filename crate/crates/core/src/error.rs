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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("size mismatch: expected {expected} qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{kind} expects {expected} qubit(s), got {found}")]
    Arity {
        kind: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("duplicate qubit {0} in gate")]
    DuplicateQubit(usize),

    #[error("probability {value} out of range for {what}")]
    ProbabilityOutOfRange { what: &'static str, value: f64 },

    #[error("unsupported gate for this noise model: {0}")]
    UnsupportedGate(String),

    #[error("channel is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("unknown code {0:?}")]
    UnknownCode(String),

    #[error("unknown mode {0:?}")]
    UnknownMode(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search space of {size} permutations exceeds cap {cap}")]
    SearchCapExceeded { size: u128, cap: u128 },

    #[error("no pseudo-threshold in range [{lo:e}, {hi:e}]")]
    NoPseudoThreshold { lo: f64, hi: f64 },

    #[error("two-or-more-fault probability is zero; nothing to sample")]
    NoFaultMass,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
