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


//! Exhaustive single-fault checks and the mutation that must break them.

use mfqec::circuits::{build_circuit, Mode};
use mfqec::codes::{CodeName, LogicalState};
use mfqec::ftcheck::{enumerate_single_faults, expected_fault_cases, mutate, FtReport, Mutation};
use mfqec::noise::NoiseModel;

fn check(code: CodeName, mode: Mode, model: &NoiseModel) -> FtReport {
    let circ = build_circuit(code, mode).unwrap();
    enumerate_single_faults(&circ, model, &LogicalState::ALL).unwrap()
}

#[test]
fn case_count_covers_every_term_site_and_input() {
    let model = NoiseModel::depolarizing(1e-3);
    for mode in [Mode::MeasurementFree, Mode::FeedForward] {
        let circ = build_circuit(CodeName::BaconShor, mode).unwrap();
        let locations = circ.fault_locations(&model).unwrap();
        let report = enumerate_single_faults(&circ, &model, &LogicalState::ALL).unwrap();
        // One fault-free baseline per input precedes the faulty cases.
        assert_eq!(report.total_cases, expected_fault_cases(&locations, 3) + 3);
    }
}

#[test]
fn bacon_shor_mf_tolerates_every_single_fault() {
    let report = check(CodeName::BaconShor, Mode::MeasurementFree, &NoiseModel::depolarizing(1e-3));
    assert!(report.passed(), "{:?}", report.failures.first());
}

#[test]
fn swap_correction_breaks_every_circuit() {
    let model = NoiseModel::depolarizing(1e-3);
    for code in [CodeName::BaconShor, CodeName::Shor, CodeName::Surface, CodeName::Steane] {
        for mode in [Mode::MeasurementFree, Mode::FeedForward] {
            let circ = build_circuit(code, mode).unwrap();
            let bad = mutate(&circ, Mutation::SwapCorrection).unwrap();
            assert_eq!(bad.gate_counts(), circ.gate_counts());
            let report = enumerate_single_faults(&bad, &model, &LogicalState::ALL).unwrap();
            assert!(!report.passed(), "{code} {mode}: mutation went unnoticed");
        }
    }
}

#[test]
fn report_json_round_trips() {
    let circ = build_circuit(CodeName::Steane, Mode::FeedForward).unwrap();
    let bad = mutate(&circ, Mutation::SwapCorrection).unwrap();
    let report = enumerate_single_faults(&bad, &NoiseModel::depolarizing(1e-3), &LogicalState::ALL).unwrap();
    let back: FtReport = serde_json::from_str(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.code, "steane");
}

#[test]
fn mutation_names_parse() {
    assert_eq!("swap-correction".parse::<Mutation>().unwrap(), Mutation::SwapCorrection);
    assert!("shuffle".parse::<Mutation>().is_err());
}
