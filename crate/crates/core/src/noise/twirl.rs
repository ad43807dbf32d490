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

use super::{nontrivial_paulis, PauliChannel};
use crate::sim_core::PauliString;
use crate::{Error, Result};

const COMPLETENESS_TOLERANCE: f64 = 1e-8;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::SizeMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(CMatrix { dim, data })
    }

    /// Projector `|s><s|` on a `dim`-dimensional space.
    pub fn projector(dim: usize, s: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        m.data[s * dim + s] = Complex64::new(1.0, 0.0);
        m
    }

    /// Matrix of the Hermitian Pauli string, qubit 0 least significant.
    pub fn pauli(p: &PauliString) -> Self {
        let dim = 1usize << p.num_qubits();
        let mut m = CMatrix::zeros(dim);
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        for k in 0..dim {
            m.data[(k ^ x) * dim + k] = pauli_phase(x, z, k);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn scaled(&self, s: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `Tr(P A) / dim`, the coefficient of `P` in the Pauli expansion of `A`.
    pub fn pauli_coefficient(&self, p: &PauliString) -> Complex64 {
        let d = self.dim;
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..d {
            acc += pauli_phase(x, z, k) * self.data[k * d + (k ^ x)];
        }
        acc / d as f64
    }
}

/// `P|k> = phase * |k ^ x>` for `P = i^{|x&z|} X^x Z^z`.
fn pauli_phase(x: usize, z: usize, k: usize) -> Complex64 {
    let i_pow = match (x & z).count_ones() % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    if (k & z).count_ones() & 1 == 1 {
        -i_pow
    } else {
        i_pow
    }
}

/// One term `weight * A rho B^dagger` of a linear map on density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    pub weight: Complex64,
    pub left: CMatrix,
    pub right: CMatrix,
}

impl KrausPair {
    pub fn kraus(weight: f64, k: CMatrix) -> Self {
        KrausPair {
            weight: Complex64::new(weight, 0.0),
            right: k.clone(),
            left: k,
        }
    }

    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        self.left.mul(rho).mul(&self.right.adjoint()).scaled(self.weight)
    }
}

/// Applies the map `sum_i w_i A_i rho B_i^dagger`.
pub fn apply_pairs(pairs: &[KrausPair], rho: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(rho.dim());
    for p in pairs {
        out = out.add(&p.apply(rho));
    }
    out
}

/// Pauli twirl of a map given as weighted operator pairs. The probability of
/// `P` is `sum_i w_i a_i(P) conj(b_i(P))` with `a`, `b` the Pauli coefficients.
pub fn twirl_pairs(pairs: &[KrausPair], arity: usize) -> Result<PauliChannel> {
    let dim = 1usize << arity;
    if pairs.iter().any(|p| p.left.dim() != dim || p.right.dim() != dim) {
        return Err(Error::SizeMismatch {
            expected: dim,
            found: pairs.first().map_or(0, |p| p.left.dim()),
        });
    }
    let prob = |p: &PauliString| -> f64 {
        pairs
            .iter()
            .map(|k| k.weight * k.left.pauli_coefficient(p) * k.right.pauli_coefficient(p).conj())
            .sum::<Complex64>()
            .re
    };
    let identity = prob(&PauliString::identity(arity));
    let mut terms = Vec::new();
    let mut total = identity;
    for p in nontrivial_paulis(arity) {
        let v = prob(&p);
        total += v;
        // Round-off can leave tiny negative values on absent terms.
        if v > 1e-15 {
            terms.push((p, v));
        } else if v < -COMPLETENESS_TOLERANCE {
            return Err(Error::InvalidArgument(format!("twirl produced negative weight {v} on {p}")));
        }
    }
    if (total - 1.0).abs() > COMPLETENESS_TOLERANCE {
        return Err(Error::NotTracePreserving(total - 1.0));
    }
    PauliChannel::new(arity, terms)
}

/// Pauli twirl of the channel with Kraus operators `kraus`.
pub fn twirl_channel(kraus: &[CMatrix], arity: usize) -> Result<PauliChannel> {
    let dim = 1usize << arity;
    let mut sum = CMatrix::zeros(dim);
    for k in kraus {
        if k.dim() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                found: k.dim(),
            });
        }
        sum = sum.add(&k.adjoint().mul(k));
    }
    let dev = sum.max_abs_diff(&CMatrix::identity(dim));
    if dev > COMPLETENESS_TOLERANCE {
        return Err(Error::NotTracePreserving(dev));
    }
    let pairs: Vec<KrausPair> = kraus.iter().map(|k| KrausPair::kraus(1.0, k.clone())).collect();
    twirl_pairs(&pairs, arity)
}

/// Twirled first-order Rydberg-decay channel of a multi-controlled `Z` on
/// `arity` qubits. Every non-ground basis state decays with probability `p`.
pub fn rydberg_decay_channel(arity: usize, p: f64) -> Result<PauliChannel> {
    if !(2..=3).contains(&arity) {
        return Err(Error::InvalidArgument(format!("decay arity {arity} not in 2..=3")));
    }
    super::check_probability("decay", p)?;
    let dim = 1usize << arity;
    let id = CMatrix::identity(dim);
    let ground = CMatrix::projector(dim, 0);
    let half = Complex64::new(p / 2.0, 0.0);
    // K_0 rho K_0^dagger to first order, then the decayed branches.
    let mut pairs = vec![
        KrausPair::kraus(1.0 - p, id.clone()),
        KrausPair {
            weight: half,
            left: ground.clone(),
            right: id.clone(),
        },
        KrausPair {
            weight: half,
            left: id,
            right: ground,
        },
    ];
    for s in 1..dim {
        pairs.push(KrausPair::kraus(p, CMatrix::projector(dim, s)));
    }
    twirl_pairs(&pairs, arity)
}
