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


//! Where MF without idling and FF with idling perform equally, on a grid of
//! two-qubit and idling rates under the neutral-atom model.

use serde::{Deserialize, Serialize};

use super::{estimate_point, PointEstimate};
use crate::circuits::{build_circuit, Mode, QecCircuit};
use crate::codes::CodeName;
use crate::noise::NoiseModel;
use crate::{Error, Result};

pub const CROSSOVER_SHOTS: u64 = 15_000;

/// Differences within this many combined sigmas are a tie.
pub const TIE_SIGMAS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossoverConfig {
    pub code: CodeName,
    pub p2_grid: Vec<f64>,
    pub p_idle_grid: Vec<f64>,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MfBetter,
    FfBetter,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverCell {
    pub p2: f64,
    pub p_idle: f64,
    pub mf: PointEstimate,
    pub ff: PointEstimate,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    pub code: CodeName,
    pub cells: Vec<CrossoverCell>,
    /// `(p_idle, p2)` where the two logical rates meet, per idling rate.
    pub crossings: Vec<(f64, f64)>,
    /// Geometric mean of `p2 / p_idle` over the crossings.
    pub ratio: Option<f64>,
}

fn classify(mf: &PointEstimate, ff: &PointEstimate) -> Verdict {
    let d = ff.p_log - mf.p_log;
    let s = (mf.sigma().powi(2) + ff.sigma().powi(2)).sqrt();
    if d.abs() <= TIE_SIGMAS * s {
        Verdict::Tie
    } else if d > 0.0 {
        Verdict::MfBetter
    } else {
        Verdict::FfBetter
    }
}

/// First rate along an increasing `p2` row where MF stops winning, by linear
/// interpolation of `ln(p_ff / p_mf)` in `ln p2`.
fn row_crossing(row: &[&CrossoverCell]) -> Option<f64> {
    let score = |c: &CrossoverCell| {
        if c.mf.p_log <= 0.0 || c.ff.p_log <= 0.0 {
            None
        } else {
            Some((c.ff.p_log / c.mf.p_log).ln())
        }
    };
    for w in row.windows(2) {
        let (a, b) = (score(w[0])?, score(w[1])?);
        if a > 0.0 && b <= 0.0 {
            let t = a / (a - b);
            let (la, lb) = (w[0].p2.ln(), w[1].p2.ln());
            return Some((la + t * (lb - la)).exp());
        }
    }
    None
}

pub fn crossover_experiment(config: &CrossoverConfig) -> Result<CrossoverResult> {
    let increasing = |g: &[f64]| !g.is_empty() && g.windows(2).all(|w| w[0] < w[1]);
    if !increasing(&config.p2_grid) || !increasing(&config.p_idle_grid) {
        return Err(Error::Config("crossover grids must be non-empty and strictly increasing".into()));
    }
    if config.shots == 0 || !config.shots.is_multiple_of(3) {
        return Err(Error::Config(format!("shots must be a positive multiple of 3, got {}", config.shots)));
    }
    let mf_circ = build_circuit(config.code, Mode::MeasurementFree)?;
    let ff_circ = build_circuit(config.code, Mode::FeedForward)?;
    crossover_circuits(&mf_circ, &ff_circ, config)
}

/// The crossover for explicit MF and FF circuits; `config.code` only labels
/// the result.
pub fn crossover_circuits(mf_circ: &QecCircuit, ff_circ: &QecCircuit, config: &CrossoverConfig) -> Result<CrossoverResult> {
    let mf: Vec<PointEstimate> = config
        .p2_grid
        .iter()
        .enumerate()
        .map(|(i, &p2)| estimate_point(mf_circ, &NoiseModel::neutral_atom(p2), config.shots, config.seed, i as u64))
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    let np = config.p2_grid.len();
    for (j, &p_idle) in config.p_idle_grid.iter().enumerate() {
        for (i, &p2) in config.p2_grid.iter().enumerate() {
            let model = NoiseModel::neutral_atom(p2).with_idle(p_idle);
            let key = (1 + j * np + i) as u64 * 1_000;
            let ff = estimate_point(ff_circ, &model, config.shots, config.seed, key)?;
            cells.push(CrossoverCell {
                p2,
                p_idle,
                mf: mf[i],
                ff,
                verdict: classify(&mf[i], &ff),
            });
        }
    }
    let mut crossings = Vec::new();
    for &p_idle in &config.p_idle_grid {
        let row: Vec<&CrossoverCell> = cells.iter().filter(|c| c.p_idle == p_idle).collect();
        if let Some(p2) = row_crossing(&row) {
            crossings.push((p_idle, p2));
        }
    }
    let ratio = (!crossings.is_empty()).then(|| {
        let s: f64 = crossings.iter().map(|(pi, p2)| (p2 / pi).ln()).sum();
        (s / crossings.len() as f64).exp()
    });
    Ok(CrossoverResult {
        code: config.code,
        cells,
        crossings,
        ratio,
    })
}
