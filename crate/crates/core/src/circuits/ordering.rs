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


//! Orderings of redundant stabilizer extractions.
//!
//! An error appearing partway through the extraction of one stabilizer type
//! is seen only by the stabilizers read out afterwards: its syndrome loses its
//! leading ones. An ordering is usable when no such truncated syndrome of one
//! correctable error equals the full syndrome of another.

use serde::Serialize;

use crate::codes::{CodeSpec, Gf2Basis, StabilizerType};
use crate::sim_core::{Pauli, PauliString};
use crate::{Error, Result};

pub const DEFAULT_SEARCH_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionOrder {
    pub kind: StabilizerType,
    pub stabilizers: Vec<PauliString>,
    /// Distinct nonzero syndromes of weight-1 errors with a representative
    /// error each.
    pub active: Vec<(Vec<bool>, PauliString)>,
}

impl ExtractionOrder {
    pub fn new(spec: &CodeSpec, kind: StabilizerType, stabilizers: Vec<PauliString>) -> Self {
        let active = active_syndromes(spec, kind, &stabilizers);
        ExtractionOrder {
            kind,
            stabilizers,
            active,
        }
    }

    /// Order as listed in `spec`, redundant elements included.
    pub fn from_spec(spec: &CodeSpec, kind: StabilizerType) -> Self {
        let stabs = spec.stabilizers(kind).iter().map(|s| s.pauli).collect();
        ExtractionOrder::new(spec, kind, stabs)
    }
}

/// A truncated syndrome that collides with another error's syndrome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingViolation {
    /// Error whose syndrome is truncated.
    pub source: PauliString,
    /// Error whose correction would be applied.
    pub mistaken_for: PauliString,
    /// Number of leading ones cleared.
    pub cleared: usize,
    pub observed: Vec<bool>,
}

fn errors_detected_by(kind: StabilizerType) -> Pauli {
    match kind {
        StabilizerType::Z => Pauli::X,
        StabilizerType::X => Pauli::Z,
    }
}

/// Distinct nonzero syndromes of the weight-1 errors detected by `stabs`.
pub fn active_syndromes(spec: &CodeSpec, kind: StabilizerType, stabs: &[PauliString]) -> Vec<(Vec<bool>, PauliString)> {
    let mut out: Vec<(Vec<bool>, PauliString)> = Vec::new();
    for q in 0..spec.n {
        let e = PauliString::single(spec.n, q, errors_detected_by(kind)).expect("in range");
        let bits: Vec<bool> = stabs.iter().map(|s| s.anticommute_parity(&e) == 1).collect();
        if bits.iter().any(|&b| b) && !out.iter().any(|(b, _)| *b == bits) {
            out.push((bits, e));
        }
    }
    out
}

/// Clears the first `s` ones of `bits`.
fn clear_leading_ones(bits: &[bool], s: usize) -> Vec<bool> {
    let mut left = s;
    bits.iter()
        .map(|&b| {
            if b && left > 0 {
                left -= 1;
                false
            } else {
                b
            }
        })
        .collect()
}

/// Every truncated active syndrome that equals another active syndrome.
pub fn ordering_violations(order: &ExtractionOrder) -> Vec<OrderingViolation> {
    let mut out = Vec::new();
    for (bj, ej) in &order.active {
        let ones = bj.iter().filter(|&&b| b).count();
        for s in 1..ones {
            let observed = clear_leading_ones(bj, s);
            if let Some((_, ei)) = order.active.iter().find(|(bi, _)| *bi == observed) {
                out.push(OrderingViolation {
                    source: *ej,
                    mistaken_for: *ei,
                    cleared: s,
                    observed,
                });
            }
        }
    }
    out
}

/// `Ok` when no truncated active syndrome equals another active syndrome;
/// otherwise the first collision as a witness.
pub fn check_ordering(order: &ExtractionOrder) -> std::result::Result<(), OrderingViolation> {
    match ordering_violations(order).into_iter().next() {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// All non-identity elements of the stabilizer group of one type.
pub fn group_elements(spec: &CodeSpec, kind: StabilizerType) -> Vec<PauliString> {
    let gens = spec.generators(kind);
    (1u32..1 << gens.len())
        .map(|m| {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .fold(PauliString::identity(spec.n), |acc, (_, g)| acc.mul(&g.pauli).expect("same length"))
        })
        .collect()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn permutations(items: &[PauliString], f: &mut dyn FnMut(&[PauliString])) {
    fn rec(items: &mut Vec<PauliString>, k: usize, f: &mut dyn FnMut(&[PauliString])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    rec(&mut v, 0, f);
}

/// Every valid ordering of every candidate set that generates the whole
/// stabilizer group of `kind`. Fails when the total number of permutations
/// exceeds `cap`.
pub fn search_orderings(
    spec: &CodeSpec,
    kind: StabilizerType,
    candidate_sets: &[Vec<PauliString>],
    cap: u128,
) -> Result<Vec<ExtractionOrder>> {
    let size: u128 = candidate_sets.iter().map(|s| factorial(s.len())).sum();
    if size > cap {
        return Err(Error::SearchCapExceeded { size, cap });
    }
    let rank_needed = spec.generators(kind).len();
    let mut out = Vec::new();
    for set in candidate_sets {
        let mut basis = Gf2Basis::default();
        for s in set {
            basis.insert(s.support());
        }
        if basis.rank() < rank_needed {
            continue;
        }
        permutations(set, &mut |perm| {
            let order = ExtractionOrder::new(spec, kind, perm.to_vec());
            if check_ordering(&order).is_ok() {
                out.push(order);
            }
        });
    }
    Ok(out)
}

/// All `k`-element subsets of `items`.
pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    crate::codes::for_each_subset(items.len(), k, &mut buf, &mut |idx| {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
    });
    out
}
