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

//! Dense state-vector simulation of the gate set `{X, H, CX, CZ, CCX, CCZ}`
//! plus reset and Z measurement.

mod gate;
mod pauli;
mod register;
mod state;

pub use gate::{GateKind, GateOp};
pub use pauli::{Pauli, PauliString, MAX_PAULI_QUBITS};
pub use register::Register;
pub use state::{StateVector, DETERMINISTIC_EPS, MAX_QUBITS};


