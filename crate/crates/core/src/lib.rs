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

//! Simulation and verification of measurement-free (MF) and feed-forward (FF)
//! fault-tolerant error correction on distance-3 CSS codes.

pub mod circuits;
pub mod cli;
pub mod codes;
pub mod error;
pub mod ftcheck;
pub mod montecarlo;
pub mod noise;
pub mod sim_core;

pub use error::{Error, Result};
