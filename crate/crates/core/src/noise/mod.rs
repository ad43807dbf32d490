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


//! Pauli noise channels, the depolarizing and neutral-atom models, and
//! numerical checks of the twirled neutral-atom channels.

mod coherent;
mod model;
mod twirl;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sim_core::{Pauli, PauliString};
use crate::{Error, Result};

pub use coherent::{
    closed_form_channel, coherent_noise_oracle, gauss_hermite, hadamard, pauli_transfer_matrix, process_distance,
    CoherentChannel, CoherentNoiseKind, CoherentNoiseParams,
};
pub use model::{neutral_atom_channel, IdleParams, NoiseKind, NoiseModel};
pub use twirl::{apply_pairs, rydberg_decay_channel, twirl_channel, twirl_pairs, CMatrix, KrausPair};

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelTerm {
    pub pauli: PauliString,
    pub p: f64,
}

/// Stochastic Pauli channel on `arity` qubits. The identity carries the
/// remaining weight `1 - sum(p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel")]
pub struct PauliChannel {
    arity: usize,
    terms: Vec<ChannelTerm>,
}

#[derive(Deserialize)]
struct RawChannel {
    arity: usize,
    terms: Vec<ChannelTerm>,
}

impl TryFrom<RawChannel> for PauliChannel {
    type Error = Error;

    fn try_from(raw: RawChannel) -> Result<Self> {
        PauliChannel::new(raw.arity, raw.terms.into_iter().map(|t| (t.pauli, t.p)).collect())
    }
}

impl PauliChannel {
    /// Builds a channel, dropping zero-probability terms.
    pub fn new(arity: usize, terms: Vec<(PauliString, f64)>) -> Result<Self> {
        let mut out: Vec<ChannelTerm> = Vec::with_capacity(terms.len());
        for (pauli, p) in terms {
            if pauli.num_qubits() != arity {
                return Err(Error::SizeMismatch {
                    expected: arity,
                    found: pauli.num_qubits(),
                });
            }
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::ProbabilityOutOfRange {
                    what: "channel term",
                    value: p,
                });
            }
            if pauli.is_identity() {
                return Err(Error::InvalidArgument("identity listed explicitly in channel".into()));
            }
            if out.iter().any(|t| t.pauli == pauli) {
                return Err(Error::InvalidArgument(format!("duplicate channel term {pauli}")));
            }
            if p > 0.0 {
                out.push(ChannelTerm { pauli, p });
            }
        }
        let total: f64 = out.iter().map(|t| t.p).sum();
        if total > 1.0 + SUM_TOLERANCE {
            return Err(Error::NotTracePreserving(total - 1.0));
        }
        Ok(PauliChannel { arity, terms: out })
    }

    pub fn identity(arity: usize) -> Self {
        PauliChannel {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[ChannelTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total probability of a non-identity Pauli.
    pub fn error_probability(&self) -> f64 {
        self.terms.iter().map(|t| t.p).sum()
    }

    pub fn identity_weight(&self) -> f64 {
        1.0 - self.error_probability()
    }

    pub fn probability_of(&self, p: &PauliString) -> f64 {
        if p.is_identity() {
            return self.identity_weight();
        }
        self.terms.iter().find(|t| t.pauli == *p).map_or(0.0, |t| t.p)
    }

    /// Draws a fault; `None` stands for the identity.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<&PauliString> {
        let mut u: f64 = rng.gen();
        for t in &self.terms {
            if u < t.p {
                return Some(&t.pauli);
            }
            u -= t.p;
        }
        None
    }

    /// Draws a fault conditioned on one occurring.
    pub fn sample_nontrivial<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<&PauliString> {
        let total = self.error_probability();
        if total <= 0.0 {
            return None;
        }
        let mut u = rng.gen::<f64>() * total;
        for t in &self.terms {
            if u < t.p {
                return Some(&t.pauli);
            }
            u -= t.p;
        }
        self.terms.last().map(|t| &t.pauli)
    }

    /// Largest absolute difference between term probabilities of two channels.
    pub fn distance(&self, other: &PauliChannel) -> f64 {
        let mut d: f64 = 0.0;
        for t in self.terms.iter().chain(&other.terms) {
            d = d.max((self.probability_of(&t.pauli) - other.probability_of(&t.pauli)).abs());
        }
        d
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

pub(crate) fn check_probability(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange { what, value })
    }
}

/// All `4^arity - 1` non-identity Pauli strings, in index order.
pub(crate) fn nontrivial_paulis(arity: usize) -> Vec<PauliString> {
    (1..1u64 << (2 * arity))
        .map(|code| {
            let mut p = PauliString::identity(arity);
            for q in 0..arity {
                let digit = (code >> (2 * q)) & 3;
                let pauli = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][digit as usize];
                p.set(q, pauli).expect("in range");
            }
            p
        })
        .collect()
}

/// Uniform channel over the `4^arity - 1` non-identity strings.
pub fn depolarizing_channel(arity: usize, p: f64) -> Result<PauliChannel> {
    if !(1..=3).contains(&arity) {
        return Err(Error::InvalidArgument(format!("depolarizing arity {arity} not in 1..=3")));
    }
    check_probability("depolarizing", p)?;
    let paulis = nontrivial_paulis(arity);
    let each = p / paulis.len() as f64;
    PauliChannel::new(arity, paulis.into_iter().map(|q| (q, each)).collect())
}

/// Dephasing applied to waiting data qubits.
pub fn idle_channel(p_idle: f64) -> Result<PauliChannel> {
    if !(0.0..0.5).contains(&p_idle) {
        return Err(Error::ProbabilityOutOfRange {
            what: "idle",
            value: p_idle,
        });
    }
    PauliChannel::new(1, vec![(PauliString::z_on(1, &[0])?, p_idle)])
}

/// Uniform channel over the `2^arity - 1` non-identity `Z`-type strings.
pub fn z_type_channel(arity: usize, p: f64) -> Result<PauliChannel> {
    check_probability("z-type channel", p)?;
    let k = (1u64 << arity) - 1;
    let terms = (1..=k)
        .map(|z| Ok((PauliString::from_masks(arity, 0, z)?, p / k as f64)))
        .collect::<Result<Vec<_>>>()?;
    PauliChannel::new(arity, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn depolarizing_splits_uniformly() {
        let c = depolarizing_channel(1, 0.003).unwrap();
        assert_eq!(c.terms().len(), 3);
        for t in c.terms() {
            assert!((t.p - 0.001).abs() < 1e-15);
        }
        let c2 = depolarizing_channel(2, 0.03).unwrap();
        assert_eq!(c2.terms().len(), 15);
        assert!(c2.terms().iter().all(|t| (t.p - 0.002).abs() < 1e-15));
        assert!(depolarizing_channel(1, 0.0).unwrap().is_empty());
        assert_eq!(depolarizing_channel(3, 0.1).unwrap().terms().len(), 63);
        assert!(depolarizing_channel(1, 1.5).is_err());
    }

    #[test]
    fn idle_channel_is_dephasing() {
        assert!(idle_channel(0.0).unwrap().is_empty());
        let c = idle_channel(0.01).unwrap();
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.terms()[0].pauli.to_string(), "Z");
        assert_eq!(c.terms()[0].p, 0.01);
        assert!(idle_channel(0.5).is_err());
    }

    #[test]
    fn channel_rejects_bad_input() {
        let z = PauliString::z_on(1, &[0]).unwrap();
        assert!(PauliChannel::new(1, vec![(z, 0.6), (z, 0.1)]).is_err());
        let x = PauliString::x_on(1, &[0]).unwrap();
        assert!(PauliChannel::new(1, vec![(z, 0.6), (x, 0.6)]).is_err());
        assert!(PauliChannel::new(1, vec![(PauliString::identity(1), 0.1)]).is_err());
    }

    #[test]
    fn json_shape() {
        let c = neutral_atom_channel(crate::sim_core::GateKind::CZ, &NoiseModel::neutral_atom(0.03)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json().unwrap()).unwrap();
        assert_eq!(v["arity"], 2);
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
        let back: PauliChannel = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"arity":1,"terms":[{"pauli":"Z","p":1.2}]}"#;
        assert!(serde_json::from_str::<PauliChannel>(bad).is_err());
    }

    #[test]
    fn sampling_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let empty = PauliChannel::identity(1);
        assert!((0..100).all(|_| empty.sample(&mut rng).is_none()));
        let z = PauliChannel::new(1, vec![(PauliString::z_on(1, &[0]).unwrap(), 1.0)]).unwrap();
        assert!((0..100).all(|_| z.sample(&mut rng).map(|p| p.to_string()) == Some("Z".into())));
    }

    #[test]
    fn sampling_frequencies_match() {
        let c = depolarizing_channel(1, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            let i = match c.sample(&mut rng).map(|p| p.get(0)) {
                None => 0,
                Some(Pauli::X) => 1,
                Some(Pauli::Y) => 2,
                Some(Pauli::Z) => 3,
                Some(Pauli::I) => unreachable!(),
            };
            counts[i] += 1;
        }
        let sigma = (0.1f64 * 0.9 / n as f64).sqrt();
        for &k in &counts[1..] {
            assert!((k as f64 / n as f64 - 0.1).abs() < 3.0 * sigma, "{counts:?}");
        }
    }
}
