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


use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::twirl::{apply_pairs, twirl_pairs, CMatrix, KrausPair};
use super::PauliChannel;
use crate::sim_core::PauliString;
use crate::{Error, Result};

/// Drive of a single-qubit gate `exp(-i H t)` with
/// `H = Omega/2 (cos(phi) X + sin(phi) Y) + Delta/2 Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentNoiseParams {
    pub rabi: f64,
    pub detuning: f64,
    pub phase: f64,
    pub duration: f64,
    /// Standard deviation of the static Gaussian fluctuation.
    pub sigma: f64,
}

impl CoherentNoiseParams {
    /// Resonant pi pulse.
    pub fn x_gate(sigma: f64) -> Self {
        CoherentNoiseParams {
            rabi: 1.0,
            detuning: 0.0,
            phase: 0.0,
            duration: PI,
            sigma,
        }
    }

    /// Pulse with detuning equal to the Rabi frequency.
    pub fn h_gate(sigma: f64) -> Self {
        CoherentNoiseParams {
            rabi: 1.0,
            detuning: 1.0,
            phase: 0.0,
            duration: PI / SQRT_2,
            sigma,
        }
    }

    pub fn effective_rabi(&self) -> f64 {
        self.rabi.hypot(self.detuning)
    }

    /// Rotation half-angle.
    pub fn theta(&self) -> f64 {
        self.effective_rabi() * self.duration / 2.0
    }

    fn validate(&self) -> Result<()> {
        if !(self.sigma >= 0.0) || !(self.effective_rabi() > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "coherent noise needs sigma >= 0 and nonzero drive, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Gate unitary at rotation angle `theta` and laser phase `phase`.
    fn unitary(&self, theta: f64, phase: f64) -> CMatrix {
        let w = self.effective_rabi();
        let (nx, ny, nz) = (self.rabi / w * phase.cos(), self.rabi / w * phase.sin(), self.detuning / w);
        let (c, s) = (theta.cos(), theta.sin());
        let mi = Complex64::new(0.0, -s);
        let r = |re: f64, im: f64| Complex64::new(re, im);
        // cos(theta) I - i sin(theta) (n . sigma)
        CMatrix::from_rows(&[
            &[r(c, 0.0) + mi * nz, mi * r(nx, -ny)],
            &[mi * r(nx, ny), r(c, 0.0) - mi * nz],
        ])
        .expect("2x2")
    }

    /// Noiseless gate.
    pub fn ideal_unitary(&self) -> CMatrix {
        self.unitary(self.theta(), self.phase)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherentNoiseKind {
    /// Fluctuating laser phase.
    Phase,
    /// Fluctuating pulse area.
    Time,
}

/// Nodes and weights of the `n`-point Gauss-Hermite rule for the weight
/// `exp(-x^2)`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    const EPS: f64 = 1e-14;
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= EPS * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gate channel averaged over static Gaussian fluctuations:
/// `rho -> sum_k w_k U_k rho U_k^dagger`.
#[derive(Debug, Clone)]
pub struct CoherentChannel {
    pub ideal: CMatrix,
    pub samples: Vec<(f64, CMatrix)>,
}

impl CoherentChannel {
    pub fn pairs(&self) -> Vec<KrausPair> {
        self.samples.iter().map(|(w, u)| KrausPair::kraus(*w, u.clone())).collect()
    }

    /// Error channel after the ideal gate, with Kraus operators `U_k U_0^dagger`.
    pub fn error_pairs(&self) -> Vec<KrausPair> {
        let u0_dag = self.ideal.adjoint();
        self.samples.iter().map(|(w, u)| KrausPair::kraus(*w, u.mul(&u0_dag))).collect()
    }

    /// Pauli twirl of the post-gate error channel.
    pub fn twirled_error(&self) -> Result<PauliChannel> {
        twirl_pairs(&self.error_pairs(), 1)
    }
}

/// Averages the gate over `num_points`-point Gauss-Hermite quadrature in the
/// fluctuation `xi ~ N(0, sigma^2)`. Phase noise shifts the laser phase by `xi`;
/// time noise scales the rotation angle by `1 + xi`.
pub fn coherent_noise_oracle(
    params: &CoherentNoiseParams,
    kind: CoherentNoiseKind,
    num_points: usize,
) -> Result<CoherentChannel> {
    params.validate()?;
    if num_points == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one point".into()));
    }
    let ideal = params.ideal_unitary();
    if params.sigma == 0.0 {
        return Ok(CoherentChannel {
            samples: vec![(1.0, ideal.clone())],
            ideal,
        });
    }
    let (nodes, weights) = gauss_hermite(num_points);
    let norm = PI.sqrt();
    let samples = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| {
            let xi = SQRT_2 * params.sigma * x;
            let u = match kind {
                CoherentNoiseKind::Phase => params.unitary(params.theta(), params.phase + xi),
                CoherentNoiseKind::Time => params.unitary(params.theta() * (1.0 + xi), params.phase),
            };
            (w / norm, u)
        })
        .collect();
    Ok(CoherentChannel { ideal, samples })
}

/// First-order closed form of the averaged gate channel, valid for zero laser
/// phase, as weighted operator pairs.
pub fn closed_form_channel(params: &CoherentNoiseParams, kind: CoherentNoiseKind) -> Vec<KrausPair> {
    let s2 = params.sigma * params.sigma;
    let theta = params.theta();
    let w = params.effective_rabi();
    let (a, d) = (params.rabi / w, params.detuning / w);
    let u0 = params.ideal_unitary();
    let id = CMatrix::identity(2);
    let px = CMatrix::pauli(&PauliString::x_on(1, &[0]).expect("1 qubit"));
    let pz = CMatrix::pauli(&PauliString::z_on(1, &[0]).expect("1 qubit"));
    let py = CMatrix::pauli(&"Y".parse().expect("static"));
    let r = |x: f64| Complex64::new(x, 0.0);
    match kind {
        CoherentNoiseKind::Phase => {
            let (c, s) = (theta.cos(), theta.sin());
            let cross = Complex64::new(0.0, -0.5 * s2 * c * s * d);
            vec![
                KrausPair::kraus(1.0 - s2 / 2.0, u0),
                KrausPair::kraus(s2 / 2.0 * c * c, id.clone()),
                // -i k (Z rho - rho Z)
                KrausPair {
                    weight: cross,
                    left: pz.clone(),
                    right: id.clone(),
                },
                KrausPair {
                    weight: -cross,
                    left: id,
                    right: pz.clone(),
                },
                KrausPair {
                    weight: r(-0.5 * s2 * s * s * a * a),
                    left: px.clone(),
                    right: px,
                },
                KrausPair::kraus(s2 * s * s * a * a, py),
                KrausPair::kraus(0.5 * s2 * s * s * d * d, pz),
            ]
        }
        CoherentNoiseKind::Time => {
            let t2 = theta * theta * s2;
            let k = px.scaled(r(a)).add(&pz.scaled(r(d)));
            vec![
                KrausPair::kraus(1.0 - 2.0 * t2, u0),
                KrausPair::kraus(t2, id),
                KrausPair::kraus(t2, k),
            ]
        }
    }
}

/// Pauli transfer matrix `R_ij = Tr(P_i L(P_j)) / 2` of a single-qubit map.
pub fn pauli_transfer_matrix(pairs: &[KrausPair]) -> [[f64; 4]; 4] {
    let paulis: Vec<CMatrix> = ["I", "X", "Y", "Z"]
        .iter()
        .map(|s| CMatrix::pauli(&s.parse().expect("static")))
        .collect();
    let mut out = [[0.0; 4]; 4];
    for (j, pj) in paulis.iter().enumerate() {
        let image = apply_pairs(pairs, pj);
        for (i, pi) in paulis.iter().enumerate() {
            out[i][j] = (pi.mul(&image).trace() * 0.5).re;
        }
    }
    out
}

/// Largest entry-wise difference of the transfer matrices of two maps.
pub fn process_distance(a: &[KrausPair], b: &[KrausPair]) -> f64 {
    let (ra, rb) = (pauli_transfer_matrix(a), pauli_transfer_matrix(b));
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((ra[i][j] - rb[i][j]).abs());
        }
    }
    d
}

/// Hadamard up to global phase, for tests and documentation.
pub fn hadamard() -> CMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    CMatrix::from_rows(&[&[h, h], &[h, -h]]).expect("2x2")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(c: &PauliChannel, s: &str) -> f64 {
        c.probability_of(&s.parse().unwrap())
    }

    #[test]
    fn quadrature_moments() {
        let (x, w) = gauss_hermite(64);
        let sp = PI.sqrt();
        assert!((w.iter().sum::<f64>() - sp).abs() < 1e-12);
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m2 - sp / 2.0).abs() < 1e-12);
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m4 - 3.0 * sp / 4.0).abs() < 1e-11);
    }

    #[test]
    fn zero_sigma_is_noiseless() {
        for kind in [CoherentNoiseKind::Phase, CoherentNoiseKind::Time] {
            let ch = coherent_noise_oracle(&CoherentNoiseParams::x_gate(0.0), kind, 64).unwrap();
            assert!(ch.twirled_error().unwrap().error_probability() < 1e-15);
        }
    }

    #[test]
    fn ideal_gates() {
        let x = CoherentNoiseParams::x_gate(0.0).ideal_unitary();
        // -i X
        assert!((x.get(0, 1) - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        let h = CoherentNoiseParams::h_gate(0.0).ideal_unitary();
        assert!(h.scaled(Complex64::new(0.0, 1.0)).max_abs_diff(&hadamard()) < 1e-12);
    }

    #[test]
    fn x_gate_phase_noise() {
        let sigma = 0.1;
        let ch = coherent_noise_oracle(&CoherentNoiseParams::x_gate(sigma), CoherentNoiseKind::Phase, 64).unwrap();
        let e = ch.twirled_error().unwrap();
        assert!((prob(&e, "Z") - sigma * sigma).abs() < 1e-4);
        assert!(prob(&e, "X") < 1e-12);
    }

    #[test]
    fn x_gate_time_noise() {
        let sigma = 0.1;
        let ch = coherent_noise_oracle(&CoherentNoiseParams::x_gate(sigma), CoherentNoiseKind::Time, 64).unwrap();
        let e = ch.twirled_error().unwrap();
        assert!((prob(&e, "X") - PI * PI * sigma * sigma / 4.0).abs() < 1e-3);
    }

    #[test]
    fn h_gate_twirled_channels() {
        let sigma: f64 = 0.05;
        let s2 = sigma * sigma;
        let ph = coherent_noise_oracle(&CoherentNoiseParams::h_gate(sigma), CoherentNoiseKind::Phase, 64)
            .unwrap()
            .twirled_error()
            .unwrap();
        assert!((prob(&ph, "X") - s2 / 4.0).abs() < 1e-5);
        assert!((prob(&ph, "Z") - s2 / 4.0).abs() < 1e-5);
        let tm = coherent_noise_oracle(&CoherentNoiseParams::h_gate(sigma), CoherentNoiseKind::Time, 64)
            .unwrap()
            .twirled_error()
            .unwrap();
        let pt = PI * PI * s2 / 4.0;
        assert!((prob(&tm, "X") - pt / 2.0).abs() < 1e-4);
        assert!((prob(&tm, "Z") - pt / 2.0).abs() < 1e-4);
    }

    #[test]
    fn closed_form_error_shrinks_quartically() {
        for params in [CoherentNoiseParams::x_gate, CoherentNoiseParams::h_gate] {
            for kind in [CoherentNoiseKind::Phase, CoherentNoiseKind::Time] {
                let dist = |sigma: f64| {
                    let p = params(sigma);
                    let num = coherent_noise_oracle(&p, kind, 64).unwrap();
                    process_distance(&num.pairs(), &closed_form_channel(&p, kind))
                };
                let (d1, d2) = (dist(0.2), dist(0.1));
                assert!(d2 * 10.0 <= d1, "{kind:?}: {d1} -> {d2}");
            }
        }
    }
}
