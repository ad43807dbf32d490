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


//! Fault-count statistics and sampling of fault configurations with at least
//! two faults.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{Fault, FaultLocation, FaultPlan, QecCircuit};
use crate::noise::NoiseModel;
use crate::{Error, Result};

/// Below this probability of two or more faults, rejection sampling gives way
/// to drawing the fault count first and the placements second.
pub const REJECTION_FLOOR: f64 = 1e-3;

/// Probabilities of zero, one, and two or more faults in one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultCounts {
    pub p_err0: f64,
    pub p_err1: f64,
    pub p_err2plus: f64,
}

impl FaultCounts {
    /// Exact counts for independent sites failing with the given rates.
    pub fn from_rates(rates: &[f64]) -> Self {
        let dist = count_distribution(rates);
        let p_err0 = dist[0];
        let p_err1 = dist.get(1).copied().unwrap_or(0.0);
        let p_err2plus = dist.iter().skip(2).sum::<f64>();
        FaultCounts {
            p_err0,
            p_err1,
            p_err2plus,
        }
    }

    /// Counts for `n` sites of each rate `p`, as `(n, p)` classes.
    pub fn from_classes(classes: &[(usize, f64)]) -> Self {
        let rates: Vec<f64> = classes.iter().flat_map(|&(n, p)| std::iter::repeat_n(p, n)).collect();
        FaultCounts::from_rates(&rates)
    }
}

/// Poisson-binomial distribution of the number of failing sites.
pub fn count_distribution(rates: &[f64]) -> Vec<f64> {
    let mut dist = vec![0.0; rates.len() + 1];
    dist[0] = 1.0;
    for (i, &q) in rates.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            dist[k] = dist[k] * (1.0 - q) + dist[k - 1] * q;
        }
        dist[0] *= 1.0 - q;
    }
    dist
}

/// Failure probability of every fault site of `circ` under `model`.
pub fn site_rates(locations: &[FaultLocation]) -> Vec<f64> {
    locations.iter().map(|l| l.channel.error_probability()).collect()
}

pub fn fault_count_probs(circ: &QecCircuit, model: &NoiseModel) -> Result<FaultCounts> {
    let locations = circ.fault_locations(model)?;
    Ok(FaultCounts::from_rates(&site_rates(&locations)))
}

/// Draws fault plans conditioned on at least two faults.
#[derive(Debug, Clone)]
pub struct ConditionedSampler {
    locations: Vec<FaultLocation>,
    counts: FaultCounts,
    strategy: Strategy,
}

#[derive(Debug, Clone)]
enum Strategy {
    Rejection,
    /// `tail[j][i]`: probability of exactly `j` faults among sites `i..`.
    TwoStage { count_cdf: Vec<f64>, tail: Vec<Vec<f64>> },
}

impl ConditionedSampler {
    pub fn new(locations: Vec<FaultLocation>) -> Result<Self> {
        let rates = site_rates(&locations);
        let counts = FaultCounts::from_rates(&rates);
        if counts.p_err2plus <= 0.0 {
            return Err(Error::NoFaultMass);
        }
        let strategy = if counts.p_err2plus >= REJECTION_FLOOR {
            Strategy::Rejection
        } else {
            two_stage(&rates, counts.p_err2plus)
        };
        Ok(ConditionedSampler {
            locations,
            counts,
            strategy,
        })
    }

    /// Forces the count-then-placement scheme regardless of the acceptance rate.
    pub fn two_stage(locations: Vec<FaultLocation>) -> Result<Self> {
        let mut s = ConditionedSampler::new(locations)?;
        let rates = site_rates(&s.locations);
        s.strategy = two_stage(&rates, s.counts.p_err2plus);
        Ok(s)
    }

    pub fn counts(&self) -> FaultCounts {
        self.counts
    }

    pub fn locations(&self) -> &[FaultLocation] {
        &self.locations
    }

    pub fn is_rejection(&self) -> bool {
        matches!(self.strategy, Strategy::Rejection)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FaultPlan {
        match &self.strategy {
            Strategy::Rejection => loop {
                let plan = crate::circuits::sample_fault_plan(&self.locations, rng);
                if plan.count() >= 2 {
                    return plan;
                }
            },
            Strategy::TwoStage { count_cdf, tail } => {
                let u: f64 = rng.gen::<f64>() * count_cdf.last().copied().unwrap_or(1.0);
                let k = 2 + count_cdf.iter().position(|&c| u < c).unwrap_or(count_cdf.len() - 1);
                let mut plan = FaultPlan::none(self.locations.len());
                let mut left = k;
                for (i, loc) in self.locations.iter().enumerate() {
                    if left == 0 {
                        break;
                    }
                    let q = loc.channel.error_probability();
                    let here = q * tail[left - 1][i + 1];
                    if rng.gen::<f64>() * tail[left][i] < here {
                        if let Some(p) = loc.channel.sample_nontrivial(rng) {
                            plan.set(loc.index, Fault::from_term(loc.site.kind, p));
                        }
                        left -= 1;
                    }
                }
                plan
            }
        }
    }
}

fn two_stage(rates: &[f64], p2plus: f64) -> Strategy {
    let n = rates.len();
    let dist = count_distribution(rates);
    // Largest count worth drawing: the remaining tail is below double precision.
    let mut kmax = 2;
    let mut acc = 0.0;
    for (k, &d) in dist.iter().enumerate().skip(2) {
        acc += d;
        kmax = k;
        if p2plus - acc <= p2plus * 1e-15 {
            break;
        }
    }
    let mut tail = vec![vec![0.0; n + 1]; kmax + 1];
    tail[0][n] = 1.0;
    for i in (0..n).rev() {
        let q = rates[i];
        for j in 0..=kmax {
            let stay = tail[j][i + 1] * (1.0 - q);
            let take = if j > 0 { tail[j - 1][i + 1] * q } else { 0.0 };
            tail[j][i] = stay + take;
        }
    }
    let mut count_cdf = Vec::with_capacity(kmax - 1);
    let mut c = 0.0;
    for &d in &dist[2..=kmax] {
        c += d;
        count_cdf.push(c);
    }
    Strategy::TwoStage { count_cdf, tail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::build_circuit;
    use crate::circuits::Mode;
    use crate::codes::CodeName;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_rates_give_no_faults() {
        let c = FaultCounts::from_classes(&[(100, 0.0)]);
        assert_eq!((c.p_err0, c.p_err1, c.p_err2plus), (1.0, 0.0, 0.0));
    }

    #[test]
    fn single_class_matches_closed_form() {
        let c = FaultCounts::from_classes(&[(100, 0.001)]);
        assert!((c.p_err0 - 0.999f64.powi(100)).abs() < 1e-12);
        assert!((c.p_err0 - 0.904792).abs() < 1e-6);
        assert!((c.p_err1 - c.p_err0 * 100.0 * 0.001 / 0.999).abs() < 1e-12);
        assert!((c.p_err1 - 0.090570).abs() < 1e-6);
        assert!((c.p_err0 + c.p_err1 + c.p_err2plus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn both_strategies_give_at_least_two_faults() {
        let circ = build_circuit(CodeName::BaconShor, Mode::MeasurementFree).unwrap();
        let locs = circ.fault_locations(&NoiseModel::depolarizing(1e-3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in [ConditionedSampler::new(locs.clone()).unwrap(), ConditionedSampler::two_stage(locs).unwrap()] {
            for _ in 0..500 {
                assert!(s.sample(&mut rng).count() >= 2);
            }
        }
    }

    #[test]
    fn zero_rate_has_nothing_to_sample() {
        let circ = build_circuit(CodeName::Shor, Mode::FeedForward).unwrap();
        let locs = circ.fault_locations(&NoiseModel::depolarizing(0.0)).unwrap();
        assert!(matches!(ConditionedSampler::new(locs), Err(Error::NoFaultMass)));
    }
}
