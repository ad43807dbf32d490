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


//! Built-in circuits: gate counts, manifests, noiseless behaviour and hooks.

use num_complex::Complex64;

use mfqec::circuits::{
    build_circuit, lint_guidelines, manifest_text, run_circuit, Fault, FaultPlan, Manifest, Mode, QecCircuit, Role,
};
use mfqec::codes::{is_logically_correct, prepare_codeword, CodeName, LogicalState};
use mfqec::ftcheck::check_r_plus_s;
use mfqec::montecarlo::shot_rng;
use mfqec::sim_core::{GateKind, PauliString, StateVector};

const MODES: [Mode; 2] = [Mode::MeasurementFree, Mode::FeedForward];

fn all_circuits() -> Vec<QecCircuit> {
    CodeName::ALL
        .iter()
        .flat_map(|&c| MODES.iter().map(move |&m| build_circuit(c, m).unwrap()))
        .collect()
}

#[test]
fn gate_counts_match_the_reference_table() {
    let table = [
        (CodeName::BaconShor, Mode::MeasurementFree, 12, (6, 6, 36, 6, 0)),
        (CodeName::BaconShor, Mode::FeedForward, 10, (6, 6, 36, 0, 6)),
        (CodeName::Shor, Mode::MeasurementFree, 14, (18, 6, 51, 15, 0)),
        (CodeName::Shor, Mode::FeedForward, 12, (18, 6, 48, 0, 18)),
        (CodeName::Surface, Mode::MeasurementFree, 17, (20, 24, 40, 22, 0)),
        (CodeName::Surface, Mode::FeedForward, 10, (12, 12, 40, 0, 12)),
        (CodeName::Steane, Mode::MeasurementFree, 14, (38, 26, 90, 32, 0)),
        (CodeName::Steane, Mode::FeedForward, 10, (30, 20, 90, 0, 30)),
    ];
    for (code, mode, qubits, gates) in table {
        let c = build_circuit(code, mode).unwrap().gate_counts();
        assert_eq!((c.qubits, c.tuple()), (qubits, gates), "{code} {mode}");
    }
}

#[test]
fn manifests_round_trip_byte_for_byte() {
    for code in CodeName::ALL {
        for mode in MODES {
            let text = manifest_text(code, mode);
            let parsed: Manifest = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text, "{code} {mode}");
        }
    }
}

#[test]
fn built_in_circuits_are_lint_clean() {
    for circ in all_circuits() {
        let v = lint_guidelines(&circ);
        assert!(v.is_empty(), "{} {}: {v:?}", circ.code.name, circ.mode);
    }
}

#[test]
fn weight_one_input_errors_are_corrected() {
    for circ in all_circuits() {
        let report = check_r_plus_s(&circ).unwrap();
        assert!(report.passed(), "{} {}: {:?}", circ.code.name, circ.mode, report.failures.first());
        assert_eq!(report.total_cases, 3 * (1 + 3 * circ.code.n));
    }
}

/// Embeds a data-register state into the full register with every other
/// qubit in `|0>`.
fn embed(data: &StateVector, total: usize) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << total];
    amps[..data.amplitudes().len()].copy_from_slice(data.amplitudes());
    StateVector::from_amplitudes(amps).unwrap()
}

#[test]
fn noiseless_mf_round_is_the_identity_and_leaves_ancillas_classical() {
    for code in CodeName::ALL {
        let circ = build_circuit(code, Mode::MeasurementFree).unwrap();
        let n = circ.code.n;
        for input in LogicalState::ALL {
            let codeword = prepare_codeword(&circ.code, input).unwrap();
            let mut sv = embed(&codeword, circ.num_qubits());
            let mut rng = shot_rng(11, 0, 0);
            for g in circ.gates() {
                sv.apply_gate(g, &mut rng).unwrap();
            }
            // Steane negates three syndrome ancillas per block to read
            // inverted decoder literals, so those end in |1>; all others
            // end in |0>. Either way no ancilla stays entangled with the data.
            let mut out = embed(&codeword, circ.num_qubits());
            let mut excited = 0;
            for q in n..circ.num_qubits() {
                let p = sv.prob_one(q);
                assert!(!(1e-12..=1.0 - 1e-12).contains(&p), "{code}: qubit {q} not in a basis state");
                if p > 0.5 {
                    out.x(q);
                    excited += 1;
                }
            }
            let expected = if code == CodeName::Steane { 3 } else { 0 };
            assert_eq!(excited, expected, "{code} {input:?}");
            assert!((sv.fidelity(&out).unwrap() - 1.0).abs() < 1e-9, "{code} {input:?}");
        }
    }
}

#[test]
fn noiseless_ff_round_is_the_identity() {
    for code in CodeName::ALL {
        let circ = build_circuit(code, Mode::FeedForward).unwrap();
        for input in LogicalState::ALL {
            let codeword = prepare_codeword(&circ.code, input).unwrap();
            for shot in 0..4 {
                let mut rng = shot_rng(12, 0, shot);
                let out = run_circuit(&circ, &codeword, &FaultPlan::none(circ.num_sites()), &mut rng).unwrap();
                assert!((out.data.fidelity(&codeword).unwrap() - 1.0).abs() < 1e-9, "{code} {input:?}");
                assert!(out.record.iter().all(|&b| !b), "{code}: nonzero record {:?}", out.record);
            }
        }
    }
}

#[test]
fn shor_corrects_bit_flips_in_separate_triplets() {
    for mode in MODES {
        let circ = build_circuit(CodeName::Shor, mode).unwrap();
        for qubits in [&[1usize, 4][..], &[0, 3, 8][..]] {
            let err = PauliString::x_on(9, qubits).unwrap();
            for input in LogicalState::ALL {
                let mut sv = prepare_codeword(&circ.code, input).unwrap();
                sv.apply_pauli(&err).unwrap();
                let mut rng = shot_rng(13, 0, 0);
                let out = run_circuit(&circ, &sv, &FaultPlan::none(circ.num_sites()), &mut rng).unwrap();
                assert!(is_logically_correct(&out.data, &circ.code, input).unwrap(), "{mode} {err} {input:?}");
            }
        }
    }
}

#[test]
fn steane_ff_flags_catch_a_hook_error() {
    let circ = build_circuit(CodeName::Steane, Mode::FeedForward).unwrap();
    // X on the ancilla after its second data coupling spreads to the last two
    // data qubits of the first extraction.
    let sites = circ.sites();
    let hook = sites
        .iter()
        .position(|s| s.gate == Some(GateKind::CX) && s.qubits == [7, 4])
        .unwrap();
    assert_eq!(circ.roles[7], Role::Ancilla);
    let mut plan = FaultPlan::none(circ.num_sites());
    plan.set(hook, Fault::Pauli(PauliString::x_on(2, &[0]).unwrap()));
    for input in LogicalState::ALL {
        let codeword = prepare_codeword(&circ.code, input).unwrap();
        let mut rng = shot_rng(14, 0, 0);
        let out = run_circuit(&circ, &codeword, &plan, &mut rng).unwrap();
        assert_eq!(&out.record[..3], &[false, true, true], "{input:?}");
        assert!(is_logically_correct(&out.data, &circ.code, input).unwrap(), "{input:?}");
    }
}

#[test]
fn mf_and_ff_agree_on_single_data_errors() {
    for code in CodeName::ALL {
        let mf = build_circuit(code, Mode::MeasurementFree).unwrap();
        let ff = build_circuit(code, Mode::FeedForward).unwrap();
        let n = mf.code.n;
        for q in 0..n {
            for err in [PauliString::x_on(n, &[q]).unwrap(), PauliString::z_on(n, &[q]).unwrap()] {
                let input = LogicalState::Plus;
                let mut sv = prepare_codeword(&mf.code, input).unwrap();
                sv.apply_pauli(&err).unwrap();
                let mut rng = shot_rng(15, 0, q as u64);
                let a = run_circuit(&mf, &sv, &FaultPlan::none(mf.num_sites()), &mut rng).unwrap();
                let b = run_circuit(&ff, &sv, &FaultPlan::none(ff.num_sites()), &mut rng).unwrap();
                assert!(is_logically_correct(&a.data, &mf.code, input).unwrap(), "{code} MF {err}");
                assert!(is_logically_correct(&b.data, &ff.code, input).unwrap(), "{code} FF {err}");
                // Bacon-Shor outputs may differ from each other by a gauge operator.
                if code != CodeName::BaconShor {
                    assert!((a.data.fidelity(&b.data).unwrap() - 1.0).abs() < 1e-9, "{code} {err}");
                }
            }
        }
    }
}

#[test]
fn ff_circuits_reject_quantum_controlled_corrections() {
    let text = manifest_text(CodeName::BaconShor, Mode::FeedForward).replace("CORRECT", "GATE CCX 9 8 0\nCORRECT");
    assert!(QecCircuit::parse(&text).is_err());
}
