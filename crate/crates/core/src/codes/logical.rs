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


use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{reference_decoder, CodeSpec, StabilizerType};
use crate::sim_core::StateVector;
use crate::{Error, Result};

/// Input logical state of a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalState {
    Zero,
    Plus,
    PlusI,
}

impl LogicalState {
    pub const ALL: [LogicalState; 3] = [LogicalState::Zero, LogicalState::Plus, LogicalState::PlusI];
}

const TOLERANCE: f64 = 1e-8;
const BRANCH_WEIGHT: f64 = 1e-12;

fn normalize(amps: &mut [Complex64]) -> f64 {
    let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for a in amps.iter_mut() {
            *a /= n;
        }
    }
    n
}

/// Projects onto the +1 eigenspace of an `X`-type operator with support `x`.
fn project_x(amps: &mut [Complex64], x: usize) {
    let old = amps.to_vec();
    for (i, a) in amps.iter_mut().enumerate() {
        *a = (old[i] + old[i ^ x]) * 0.5;
    }
}

fn project_z(amps: &mut [Complex64], z: usize) {
    for (i, a) in amps.iter_mut().enumerate() {
        if (i & z).count_ones() & 1 == 1 {
            *a = Complex64::new(0.0, 0.0);
        }
    }
}

/// Ideal codeword built by projecting a product state onto the stabilizer group.
pub fn prepare_codeword(spec: &CodeSpec, state: LogicalState) -> Result<StateVector> {
    let n = spec.n;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    match state {
        LogicalState::Zero | LogicalState::PlusI => {
            amps[0] = Complex64::new(1.0, 0.0);
            for s in spec.generators(StabilizerType::X) {
                project_x(&mut amps, s.pauli.x_mask() as usize);
            }
        }
        LogicalState::Plus => {
            amps.fill(Complex64::new(1.0, 0.0));
            for s in spec.generators(StabilizerType::Z) {
                project_z(&mut amps, s.pauli.z_mask() as usize);
            }
        }
    }
    if normalize(&mut amps) == 0.0 {
        return Err(Error::InvalidArgument(format!("{}: empty code space", spec.name)));
    }
    if state == LogicalState::PlusI {
        let x = spec.logical_x.x_mask() as usize;
        let zero = amps.clone();
        for (i, a) in amps.iter_mut().enumerate() {
            *a = zero[i] + Complex64::new(0.0, 1.0) * zero[i ^ x];
        }
        normalize(&mut amps);
    }
    StateVector::from_amplitudes(amps)
}

fn hadamard_all(amps: &mut [Complex64], n: usize) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for q in 0..n {
        let bit = 1usize << q;
        for i in 0..amps.len() {
            if i & bit == 0 {
                let (a, b) = (amps[i], amps[i | bit]);
                amps[i] = (a + b) * s;
                amps[i | bit] = (a - b) * s;
            }
        }
    }
}

fn parity(i: usize, mask: u64) -> bool {
    (i & mask as usize).count_ones() & 1 == 1
}

/// Splits `amps` into sectors of equal parity against `masks` and returns the
/// non-negligible ones with their syndrome bits.
fn split_sectors(amps: &[Complex64], masks: &[u64]) -> Vec<(Vec<bool>, Vec<Complex64>)> {
    let mut out: Vec<(Vec<bool>, Vec<Complex64>)> = Vec::new();
    for (i, a) in amps.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let bits: Vec<bool> = masks.iter().map(|&m| parity(i, m)).collect();
        let slot = match out.iter().position(|(b, _)| *b == bits) {
            Some(p) => p,
            None => {
                out.push((bits, vec![Complex64::new(0.0, 0.0); amps.len()]));
                out.len() - 1
            }
        };
        out[slot].1[i] = *a;
    }
    out.retain(|(_, v)| v.iter().map(|a| a.norm_sqr()).sum::<f64>() > BRANCH_WEIGHT);
    out
}

/// True when an ideal data-only correction round maps `state` back to the input
/// codeword: every branch afterwards has all stabilizers and the input logical
/// at +1.
pub fn is_logically_correct(state: &StateVector, spec: &CodeSpec, input: LogicalState) -> Result<bool> {
    let n = spec.n;
    if state.num_qubits() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: state.num_qubits(),
        });
    }
    let x_fix = reference_decoder(spec, StabilizerType::Z);
    let z_fix = reference_decoder(spec, StabilizerType::X);
    let z_masks: Vec<u64> = spec.generators(StabilizerType::Z).iter().map(|s| s.pauli.z_mask()).collect();
    let x_masks: Vec<u64> = spec.generators(StabilizerType::X).iter().map(|s| s.pauli.x_mask()).collect();

    let (logical, sign) = match input {
        LogicalState::Zero => (spec.logical_z, 1.0),
        LogicalState::Plus => (spec.logical_x, 1.0),
        LogicalState::PlusI => spec.logical_y(),
    };

    for (zbits, mut branch) in split_sectors(state.amplitudes(), &z_masks) {
        // Bit-flip correction on this sector.
        let c = x_fix.decode(&zbits)?;
        let x = c.x_mask() as usize;
        if x != 0 {
            let old = branch.clone();
            for (i, a) in branch.iter_mut().enumerate() {
                *a = old[i ^ x];
            }
        }
        // X-type syndromes are Z parities after a global Hadamard.
        hadamard_all(&mut branch, n);
        for (xbits, mut sub) in split_sectors(&branch, &x_masks) {
            hadamard_all(&mut sub, n);
            let c = z_fix.decode(&xbits)?;
            let z = c.z_mask();
            for (i, a) in sub.iter_mut().enumerate() {
                if parity(i, z) {
                    *a = -*a;
                }
            }
            normalize(&mut sub);
            let sv = StateVector::from_amplitudes(sub)?;
            for s in spec.all_generators() {
                if sv.expectation(&s.pauli)? < 1.0 - TOLERANCE {
                    return Ok(false);
                }
            }
            if sign * sv.expectation(&logical)? < 1.0 - TOLERANCE {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{code_spec, CodeName};
    use crate::sim_core::{Pauli, PauliString};

    fn logical_expectation(spec: &CodeSpec, sv: &StateVector, input: LogicalState) -> f64 {
        match input {
            LogicalState::Zero => sv.expectation(&spec.logical_z).unwrap(),
            LogicalState::Plus => sv.expectation(&spec.logical_x).unwrap(),
            LogicalState::PlusI => {
                let (p, s) = spec.logical_y();
                s * sv.expectation(&p).unwrap()
            }
        }
    }

    #[test]
    fn codewords_are_stabilized() {
        for name in CodeName::ALL {
            let spec = code_spec(name);
            for input in LogicalState::ALL {
                let sv = prepare_codeword(&spec, input).unwrap();
                assert!((sv.norm() - 1.0).abs() < 1e-10);
                for s in spec.all_generators() {
                    assert!((sv.expectation(&s.pauli).unwrap() - 1.0).abs() < 1e-10, "{name} {input:?} {}", s.label);
                }
                assert!((logical_expectation(&spec, &sv, input) - 1.0).abs() < 1e-10, "{name} {input:?}");
            }
        }
    }

    #[test]
    fn ideal_codeword_is_correct_and_logical_flip_is_not() {
        for name in CodeName::ALL {
            let spec = code_spec(name);
            for input in LogicalState::ALL {
                let sv = prepare_codeword(&spec, input).unwrap();
                assert!(is_logically_correct(&sv, &spec, input).unwrap());
            }
            let mut sv = prepare_codeword(&spec, LogicalState::Zero).unwrap();
            sv.apply_pauli(&spec.logical_x).unwrap();
            assert!(!is_logically_correct(&sv, &spec, LogicalState::Zero).unwrap());
        }
    }

    #[test]
    fn single_errors_are_judged_correct() {
        for name in CodeName::ALL {
            let spec = code_spec(name);
            for input in LogicalState::ALL {
                let base = prepare_codeword(&spec, input).unwrap();
                for q in 0..spec.n {
                    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                        let mut sv = base.clone();
                        sv.apply_pauli(&PauliString::single(spec.n, q, p).unwrap()).unwrap();
                        assert!(is_logically_correct(&sv, &spec, input).unwrap(), "{name} {input:?} {p:?}{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn gauge_operators_do_not_matter() {
        let spec = code_spec(CodeName::BaconShor);
        for input in LogicalState::ALL {
            for g in &spec.gauge_generators {
                let mut sv = prepare_codeword(&spec, input).unwrap();
                sv.apply_pauli(g).unwrap();
                assert!(is_logically_correct(&sv, &spec, input).unwrap());
            }
        }
    }

    #[test]
    fn superposed_error_branches_are_each_checked() {
        // (I + X1 X2)/sqrt2 mixes a correctable branch with an uncorrectable one.
        let spec = code_spec(CodeName::Steane);
        let base = prepare_codeword(&spec, LogicalState::Zero).unwrap();
        let mut flipped = base.clone();
        flipped.apply_pauli(&PauliString::single(7, 0, Pauli::X).unwrap()).unwrap();
        flipped.apply_pauli(&PauliString::single(7, 1, Pauli::X).unwrap()).unwrap();
        let amps: Vec<Complex64> = base
            .amplitudes()
            .iter()
            .zip(flipped.amplitudes())
            .map(|(a, b)| (a + b) * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let sv = StateVector::from_amplitudes(amps).unwrap();
        assert!(!is_logically_correct(&sv, &spec, LogicalState::Zero).unwrap());
    }
}
