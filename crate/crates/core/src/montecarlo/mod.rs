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


//! Logical error rates by Monte Carlo sampling over runs with two or more
//! faults, pseudo-threshold fits and the MF/FF idling crossover.

mod crossover;
mod fit;
mod output;
mod sampling;

pub use crossover::{
    crossover_circuits, crossover_experiment, CrossoverCell, CrossoverConfig, CrossoverResult, Verdict, CROSSOVER_SHOTS, TIE_SIGMAS,
};
pub use fit::{fit_pseudo_threshold, FitPoint, FitResult};
pub use output::{read_csv, write_csv, CsvRow, CSV_HEADER};
pub use sampling::{
    count_distribution, fault_count_probs, site_rates, ConditionedSampler, FaultCounts, REJECTION_FLOOR,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{run_circuit, QecCircuit};
use crate::codes::{is_logically_correct, prepare_codeword, LogicalState};
use crate::noise::NoiseModel;
use crate::sim_core::StateVector;
use crate::{Error, Result};

pub const DEFAULT_SHOTS: u64 = 60_000;

/// Five log-spaced points per decade from 1e-3, closed at 2e-2.
pub fn default_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..7).map(|k| 1e-3 * 10f64.powf(k as f64 / 5.0)).collect();
    g.push(2e-2);
    g
}

/// One sweep of a circuit over physical rates. `noise.p_phys` is replaced by
/// each grid value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub noise: NoiseModel,
    pub p_grid: Vec<f64>,
    pub shots: u64,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 || !self.shots.is_multiple_of(3) {
            return Err(Error::Config(format!("shots must be a positive multiple of 3, got {}", self.shots)));
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("empty p grid".into()));
        }
        if self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("p grid must be strictly increasing".into()));
        }
        for &p in &self.p_grid {
            self.noise.with_p_phys(p).validate()?;
        }
        Ok(())
    }
}

/// Estimate at one physical rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointEstimate {
    pub p_phys: f64,
    pub p_err0: f64,
    pub p_err1: f64,
    pub p_err2plus: f64,
    pub shots: u64,
    pub failures: u64,
    /// Failure fraction over runs with two or more faults.
    pub p_log2plus: f64,
    /// One-sigma Wilson half-width of `p_log2plus`.
    pub stderr: f64,
    pub p_log: f64,
}

impl PointEstimate {
    /// One-sigma error of `p_log`.
    pub fn sigma(&self) -> f64 {
        self.stderr * self.p_err2plus
    }

    pub fn fit_point(&self) -> FitPoint {
        FitPoint {
            p: self.p_phys,
            p_log: self.p_log,
            sigma: self.sigma(),
        }
    }
}

/// Wilson score interval for `k` successes in `n` trials at `z` sigmas.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Per-shot generator: stream `(point << 40) | shot` of the root seed.
pub fn shot_rng(seed: u64, point: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((point << 40) | shot);
    rng
}

/// Input state of a shot; inputs cycle so each gets a third of the shots.
pub fn shot_input(shot: u64) -> LogicalState {
    LogicalState::ALL[(shot % 3) as usize]
}

/// Everything fixed across the shots of one point.
pub struct PointSampler<'a> {
    circ: &'a QecCircuit,
    sampler: Option<ConditionedSampler>,
    counts: FaultCounts,
    inputs: Vec<StateVector>,
}

impl<'a> PointSampler<'a> {
    pub fn new(circ: &'a QecCircuit, model: &NoiseModel) -> Result<Self> {
        let locations = circ.fault_locations(model)?;
        let counts = FaultCounts::from_rates(&site_rates(&locations));
        let sampler = if counts.p_err2plus > 0.0 {
            Some(ConditionedSampler::new(locations)?)
        } else {
            None
        };
        let inputs = LogicalState::ALL
            .iter()
            .map(|&s| prepare_codeword(&circ.code, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSampler {
            circ,
            sampler,
            counts,
            inputs,
        })
    }

    pub fn counts(&self) -> FaultCounts {
        self.counts
    }

    /// Runs one shot with at least two faults; true on a logical failure.
    pub fn shot(&self, rng: &mut ChaCha8Rng, input: LogicalState) -> Result<bool> {
        let sampler = self.sampler.as_ref().ok_or(Error::NoFaultMass)?;
        let plan = sampler.sample(rng);
        let idx = LogicalState::ALL.iter().position(|&s| s == input).expect("known input");
        let out = run_circuit(self.circ, &self.inputs[idx], &plan, rng)?;
        Ok(!is_logically_correct(&out.data, &self.circ.code, input)?)
    }

    /// Runs one shot with no conditioning on the fault count.
    pub fn unconditioned_shot(&self, model: &NoiseModel, rng: &mut ChaCha8Rng, input: LogicalState) -> Result<bool> {
        let idx = LogicalState::ALL.iter().position(|&s| s == input).expect("known input");
        let out = crate::circuits::run_noisy(self.circ, &self.inputs[idx], model, rng)?;
        Ok(!is_logically_correct(&out.data, &self.circ.code, input)?)
    }
}

/// Conditioned estimate at one point; `point` keys the random streams.
pub fn estimate_point(circ: &QecCircuit, model: &NoiseModel, shots: u64, seed: u64, point: u64) -> Result<PointEstimate> {
    let ps = PointSampler::new(circ, model)?;
    let counts = ps.counts();
    let failures = if ps.sampler.is_none() {
        0
    } else {
        (0..shots)
            .into_par_iter()
            .map(|s| {
                let mut rng = shot_rng(seed, point, s);
                ps.shot(&mut rng, shot_input(s)).map(u64::from)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?
    };
    let p_log2plus = if shots == 0 { 0.0 } else { failures as f64 / shots as f64 };
    let (lo, hi) = wilson_interval(failures, shots, 1.0);
    let stderr = if ps.sampler.is_none() { 0.0 } else { (hi - lo) / 2.0 };
    Ok(PointEstimate {
        p_phys: model.p_phys,
        p_err0: counts.p_err0,
        p_err1: counts.p_err1,
        p_err2plus: counts.p_err2plus,
        shots,
        failures,
        p_log2plus,
        stderr,
        p_log: p_log2plus * counts.p_err2plus,
    })
}

/// Estimates every grid point of `config`.
pub fn estimate_p_log(circ: &QecCircuit, config: &RunConfig) -> Result<Vec<PointEstimate>> {
    config.validate()?;
    config
        .p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| estimate_point(circ, &config.noise.with_p_phys(p), config.shots, config.seed, i as u64))
        .collect()
}

/// Brute-force estimate without conditioning: failures over all shots.
pub fn estimate_unconditioned(circ: &QecCircuit, model: &NoiseModel, shots: u64, seed: u64, point: u64) -> Result<(u64, u64)> {
    let ps = PointSampler::new(circ, model)?;
    let failures = (0..shots)
        .into_par_iter()
        .map(|s| {
            let mut rng = shot_rng(seed, point, s);
            ps.unconditioned_shot(model, &mut rng, shot_input(s)).map(u64::from)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok((failures, shots))
}
