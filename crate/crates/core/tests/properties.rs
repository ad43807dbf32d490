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


//! Property tests for the invariants of the data types and the sampler.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mfqec::circuits::{build_circuit, Manifest, Mode};
use mfqec::codes::CodeName;
use mfqec::montecarlo::{
    count_distribution, estimate_point, fit_pseudo_threshold, read_csv, write_csv, ConditionedSampler, CsvRow, FaultCounts,
    FitPoint,
};
use mfqec::noise::{depolarizing_channel, NoiseModel};
use mfqec::sim_core::{GateKind, GateOp, PauliString, StateVector};

fn gate_strategy(n: usize) -> impl Strategy<Value = GateOp> {
    let kinds = prop_oneof![
        Just(GateKind::X),
        Just(GateKind::H),
        Just(GateKind::CX),
        Just(GateKind::CZ),
        Just(GateKind::CCX),
        Just(GateKind::CCZ),
        Just(GateKind::Reset),
        Just(GateKind::Measure),
    ];
    (kinds, Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(k, q)| GateOp::new(k, &q[..k.arity()]).unwrap())
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(x, z)| PauliString::from_masks(n, x & mask, z & mask).unwrap())
}

proptest! {
    #[test]
    fn gates_preserve_the_norm(gates in prop::collection::vec(gate_strategy(5), 1..40), seed in any::<u64>()) {
        let mut sv = StateVector::zeros(5).unwrap();
        sv.h(0);
        sv.h(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in &gates {
            sv.apply_gate(g, &mut rng).unwrap();
            prop_assert!((sv.norm() - 1.0).abs() < 1e-10);
        }
        prop_assert_eq!(sv.amplitudes().len(), 32);
    }

    #[test]
    fn pauli_weight_is_the_support_size(p in pauli_strategy(12)) {
        prop_assert_eq!(p.weight() as u32, (p.x_mask() | p.z_mask()).count_ones());
        prop_assert_eq!(p.to_string().parse::<PauliString>().unwrap(), p);
    }

    #[test]
    fn pauli_products_close_and_commutation_is_symmetric(a in pauli_strategy(9), b in pauli_strategy(9)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&b).unwrap(), a);
        prop_assert_eq!(a.commutes_with(&b).unwrap(), b.commutes_with(&a).unwrap());
        prop_assert!(a.commutes_with(&a).unwrap());
    }

    #[test]
    fn depolarizing_terms_share_the_rate_evenly(arity in 1usize..=3, p in 1e-9f64..0.9) {
        let c = depolarizing_channel(arity, p).unwrap();
        let k = 4usize.pow(arity as u32) - 1;
        prop_assert_eq!(c.terms().len(), k);
        prop_assert!((c.error_probability() - p).abs() < 1e-12);
        for t in c.terms() {
            prop_assert!((t.p - p / k as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn fault_count_classes_sum_to_one(rates in prop::collection::vec(0.0f64..0.2, 1..300)) {
        let c = FaultCounts::from_rates(&rates);
        prop_assert!((c.p_err0 + c.p_err1 + c.p_err2plus - 1.0).abs() < 1e-12);
        prop_assert!(c.p_err0 >= 0.0 && c.p_err1 >= 0.0 && c.p_err2plus >= 0.0);
        let d = count_distribution(&rates);
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!((d[0] - c.p_err0).abs() < 1e-12);
    }

    #[test]
    fn csv_rows_round_trip(vals in prop::collection::vec(0.0f64..1.0, 7), code in "[a-z_]{1,10}") {
        let row = CsvRow {
            code,
            mode: "MF".into(),
            noise: "depolarizing".into(),
            p_phys: vals[0],
            p_err0: vals[1],
            p_err1: vals[2],
            p_err2plus: vals[3],
            p_log2plus: vals[4],
            stderr: vals[5],
            p_log: vals[6],
        };
        prop_assert_eq!(read_csv(&write_csv(std::slice::from_ref(&row))).unwrap(), vec![row]);
    }

    #[test]
    fn fit_recovers_an_exact_polynomial(c2 in 10.0f64..500.0, c3 in 0.0f64..5e4) {
        let points: Vec<FitPoint> = (0..6)
            .map(|k| {
                let p = 1e-3 * 1.6f64.powi(k);
                let v = c2 * p * p + c3 * p * p * p;
                FitPoint { p, p_log: v, sigma: v * 0.01 }
            })
            .collect();
        let fit = fit_pseudo_threshold(&points).unwrap();
        prop_assert!((fit.c2 - c2).abs() < 1e-6 * c2.max(1.0));
        if let Some(p_th) = fit.p_th {
            prop_assert!((fit.eval(p_th) - p_th).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conditioned_plans_hold_at_least_two_faults(p in 1e-5f64..2e-2, seed in any::<u64>()) {
        let circ = build_circuit(CodeName::BaconShor, Mode::MeasurementFree).unwrap();
        let locations = circ.fault_locations(&NoiseModel::depolarizing(p)).unwrap();
        let sampler = ConditionedSampler::new(locations.clone()).unwrap();
        let two_stage = ConditionedSampler::two_stage(locations).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            prop_assert!(sampler.sample(&mut rng).count() >= 2);
            prop_assert!(two_stage.sample(&mut rng).count() >= 2);
        }
    }

    #[test]
    fn estimates_are_deterministic_under_a_seed(seed in any::<u64>(), point in 0u64..8) {
        let circ = build_circuit(CodeName::BaconShor, Mode::FeedForward).unwrap();
        let model = NoiseModel::depolarizing(5e-3);
        let a = estimate_point(&circ, &model, 60, seed, point).unwrap();
        let b = estimate_point(&circ, &model, 60, seed, point).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn manifests_with_extra_gates_round_trip(gates in prop::collection::vec(gate_strategy(10), 0..20)) {
        let mut text = include_str!("../circuits/bacon_shor_ff.qec").to_string();
        for g in &gates {
            text.push_str(&format!("GATE {g}\n"));
        }
        let m: Manifest = text.parse().unwrap();
        prop_assert_eq!(m.to_string(), text);
    }
}

#[test]
fn estimates_do_not_depend_on_the_worker_count() {
    let circ = build_circuit(CodeName::Shor, Mode::FeedForward).unwrap();
    let model = NoiseModel::depolarizing(4e-3);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_point(&circ, &model, 300, 7, 2).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn conditioned_count_law_matches_the_closed_form() {
    // Mean fault count of the two-stage sampler against sum_k k d_k / P(k >= 2).
    let circ = build_circuit(CodeName::Surface, Mode::FeedForward).unwrap();
    let locations = circ.fault_locations(&NoiseModel::depolarizing(1e-4)).unwrap();
    let rates: Vec<f64> = locations.iter().map(|l| l.channel.error_probability()).collect();
    let d = count_distribution(&rates);
    let tail: f64 = d[2..].iter().sum();
    let mean = d.iter().enumerate().skip(2).map(|(k, &v)| k as f64 * v).sum::<f64>() / tail;
    let sampler = ConditionedSampler::two_stage(locations).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 20_000;
    let got = (0..n).map(|_| sampler.sample(&mut rng).count() as f64).sum::<f64>() / n as f64;
    // Almost every draw has exactly two faults; the excess is O(p).
    assert!((got - mean).abs() < 0.01, "{got} vs {mean}");
}
