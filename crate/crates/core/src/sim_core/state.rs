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
use rand::Rng;

use super::gate::{GateKind, GateOp};
use super::pauli::PauliString;
use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Branch probabilities below this are treated as exactly zero: resets and
/// measurements on such qubits are deterministic and draw no randomness.
pub const DETERMINISTIC_EPS: f64 = 1e-12;

/// Dense pure state over `num_qubits` qubits.
///
/// Qubit 0 is the least significant bit of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits. Zero qubits is allowed and gives the
    /// scalar state `[1]`.
    pub fn zeros(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit"
            )));
        }
        let mut amps = vec![ZERO; 1usize << num_qubits];
        amps[0] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut s = StateVector::zeros(num_qubits)?;
        if index >= s.amps.len() {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range"
            )));
        }
        s.amps[0] = ZERO;
        s.amps[index] = ONE;
        Ok(s)
    }

    /// Wraps raw amplitudes, normalizing them.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude length {len} is not a power of two"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit"
            )));
        }
        let mut s = StateVector { num_qubits, amps };
        let n = s.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument("zero or non-finite state".into()));
        }
        s.scale(1.0 / n);
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub(crate) fn amplitudes_mut_vec(&mut self) -> &mut Vec<Complex64> {
        &mut self.amps
    }

    /// Wraps amplitudes without normalizing; the length must be a power of two.
    pub(crate) fn from_raw(amps: Vec<Complex64>) -> Self {
        let num_qubits = amps.len().trailing_zeros() as usize;
        StateVector { num_qubits, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        self.check_size(other.num_qubits)?;
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(ip.norm_sqr())
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: n,
            });
        }
        Ok(())
    }

    /// Applies `gate`. Returns the sampled outcome for `Measure` and `Reset`
    /// (the pre-reset value), `None` for unitary gates.
    pub fn apply_gate<R: Rng + ?Sized>(&mut self, gate: &GateOp, rng: &mut R) -> Result<Option<bool>> {
        gate.check_bounds(self.num_qubits)?;
        let q = gate.qubits();
        match gate.kind() {
            GateKind::X => self.x(q[0]),
            GateKind::H => self.h(q[0]),
            GateKind::CX => self.cx(q[0], q[1]),
            GateKind::CZ => self.cz(q[0], q[1]),
            GateKind::CCX => self.ccx(q[0], q[1], q[2]),
            GateKind::CCZ => self.ccz(q[0], q[1], q[2]),
            GateKind::Reset => return Ok(Some(self.reset(q[0], rng))),
            GateKind::Measure => return Ok(Some(self.measure(q[0], rng))),
        }
        Ok(None)
    }

    pub fn x(&mut self, q: usize) {
        let bit = 1usize << q;
        for_each_with_zeros(self.amps.len(), &[q], |i| self.amps.swap(i, i | bit));
    }

    pub fn z(&mut self, q: usize) {
        let bit = 1usize << q;
        for_each_with_zeros(self.amps.len(), &[q], |i| {
            let j = i | bit;
            self.amps[j] = -self.amps[j];
        });
    }

    pub fn h(&mut self, q: usize) {
        let bit = 1usize << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for_each_with_zeros(self.amps.len(), &[q], |i| {
            let a = self.amps[i];
            let b = self.amps[i | bit];
            self.amps[i] = (a + b) * s;
            self.amps[i | bit] = (a - b) * s;
        });
    }

    pub fn cx(&mut self, c: usize, t: usize) {
        let cb = 1usize << c;
        let tb = 1usize << t;
        for_each_with_zeros(self.amps.len(), &sorted2(c, t), |i| {
            self.amps.swap(i | cb, i | cb | tb)
        });
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let m = (1usize << a) | (1usize << b);
        for_each_with_zeros(self.amps.len(), &sorted2(a, b), |i| {
            self.amps[i | m] = -self.amps[i | m];
        });
    }

    pub fn ccx(&mut self, c1: usize, c2: usize, t: usize) {
        let cm = (1usize << c1) | (1usize << c2);
        let tb = 1usize << t;
        for_each_with_zeros(self.amps.len(), &sorted3(c1, c2, t), |i| {
            self.amps.swap(i | cm, i | cm | tb)
        });
    }

    pub fn ccz(&mut self, a: usize, b: usize, c: usize) {
        let m = (1usize << a) | (1usize << b) | (1usize << c);
        for_each_with_zeros(self.amps.len(), &sorted3(a, b, c), |i| {
            self.amps[i | m] = -self.amps[i | m];
        });
    }

    /// Exchanges the roles of qubits `a` and `b`.
    pub fn swap_qubits(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ab = 1usize << a;
        let bb = 1usize << b;
        for_each_with_zeros(self.amps.len(), &sorted2(a, b), |i| {
            self.amps.swap(i | ab, i | bb)
        });
    }

    /// Probability of reading 1 on qubit `q`.
    pub fn prob_one(&self, q: usize) -> f64 {
        let bit = 1usize << q;
        let mut p = 0.0;
        for_each_with_zeros(self.amps.len(), &[q], |i| p += self.amps[i | bit].norm_sqr());
        p.clamp(0.0, 1.0)
    }

    /// Projects qubit `q` onto `outcome` and renormalizes. Returns the
    /// probability of the branch; the state is left untouched if it is zero.
    pub fn collapse(&mut self, q: usize, outcome: bool) -> f64 {
        let p1 = self.prob_one(q);
        let p = if outcome { p1 } else { 1.0 - p1 };
        if p <= 0.0 {
            return 0.0;
        }
        let bit = 1usize << q;
        let f = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i & bit) != 0) == outcome {
                *a *= f;
            } else {
                *a = ZERO;
            }
        }
        p
    }

    /// Samples a Z-basis outcome from the Born rule and collapses onto it.
    /// Draws from `rng` only when both outcomes have non-negligible weight.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let outcome = sample_outcome(self.prob_one(q), rng);
        self.collapse(q, outcome);
        outcome
    }

    /// Sample-and-flip reset to `|0>`. Returns the pre-reset outcome.
    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let outcome = self.measure(q, rng);
        if outcome {
            self.x(q);
        }
        outcome
    }

    /// Applies the Hermitian Pauli operator `p` (phases of `Y` factors included).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check_size(p.num_qubits())?;
        self.apply_xz(p.x_mask() as usize, p.z_mask() as usize);
        Ok(())
    }

    /// Applies `X^x Z^z` (Z factors first), without the `i` from `Y = iXZ`.
    pub(crate) fn apply_xz(&mut self, x: usize, z: usize) {
        if x == 0 {
            if z != 0 {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if (i & z).count_ones() & 1 == 1 {
                        *a = -*a;
                    }
                }
            }
            return;
        }
        let low = x.trailing_zeros() as usize;
        let sign = |i: usize| if (i & z).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
        for_each_with_zeros(self.amps.len(), &[low], |i| {
            let j = i ^ x;
            let ai = self.amps[i] * sign(i);
            let aj = self.amps[j] * sign(j);
            self.amps[j] = ai;
            self.amps[i] = aj;
        });
    }

    /// `<psi| X^x Z^z |psi>` as a complex number.
    pub(crate) fn expectation_xz(&self, x: usize, z: usize) -> Complex64 {
        let mut acc = ZERO;
        for (i, a) in self.amps.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let s = if (i & z).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            acc += self.amps[i ^ x].conj() * a * s;
        }
        acc
    }

    /// `<psi|P|psi>` for the Hermitian Pauli `P`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        self.check_size(p.num_qubits())?;
        let x = p.x_mask() as usize;
        let z = p.z_mask() as usize;
        let v = self.expectation_xz(x, z) * i_pow((x & z).count_ones());
        debug_assert!(v.im.abs() < 1e-8, "non-real Pauli expectation {v}");
        Ok(v.re)
    }
}

/// `i^k`.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub(crate) fn sample_outcome<R: Rng + ?Sized>(p1: f64, rng: &mut R) -> bool {
    if p1 < DETERMINISTIC_EPS {
        false
    } else if p1 > 1.0 - DETERMINISTIC_EPS {
        true
    } else {
        rng.gen::<f64>() < p1
    }
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut v = [a, b, c];
    v.sort_unstable();
    v
}

/// Calls `f` with every index in `0..len` whose bits at `zero_bits` (sorted,
/// ascending) are clear.
#[inline]
fn for_each_with_zeros(len: usize, zero_bits: &[usize], mut f: impl FnMut(usize)) {
    let count = len >> zero_bits.len();
    match zero_bits {
        [b] => {
            let bit = 1usize << b;
            let mut base = 0;
            while base < len {
                for i in base..base + bit {
                    f(i);
                }
                base += bit << 1;
            }
        }
        _ => {
            for k in 0..count {
                let mut idx = k;
                for &b in zero_bits {
                    let lowm = (1usize << b) - 1;
                    idx = ((idx & !lowm) << 1) | (idx & lowm);
                }
                f(idx);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn plus_state(n: usize) -> StateVector {
        let mut s = StateVector::zeros(n).unwrap();
        for q in 0..n {
            s.h(q);
        }
        s
    }

    #[test]
    fn x_on_qubit_zero_sets_lowest_bit() {
        let mut s = StateVector::zeros(2).unwrap();
        s.apply_gate(&GateOp::x(0), &mut rng()).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b01).unwrap());
    }

    #[test]
    fn ccz_only_flips_all_ones() {
        for idx in 0..8 {
            let mut s = StateVector::basis(3, idx).unwrap();
            s.ccz(0, 1, 2);
            let expected = if idx == 7 { -1.0 } else { 1.0 };
            assert_eq!(s.amplitudes()[idx].re, expected);
        }
    }

    #[test]
    fn reset_superposition_lands_in_zero_on_both_branches() {
        for seed in 0..32 {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let mut s = plus_state(1);
            s.apply_gate(&GateOp::reset(0), &mut r).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
            assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_examples() {
        let mut s = StateVector::zeros(3).unwrap();
        let before = s.clone();
        s.apply_pauli(&PauliString::identity(3)).unwrap();
        assert_eq!(s, before);

        let mut plus = plus_state(1);
        plus.apply_pauli(&"Z".parse().unwrap()).unwrap();
        let mut minus = StateVector::basis(1, 1).unwrap();
        minus.h(0);
        assert!((plus.fidelity(&minus).unwrap() - 1.0).abs() < 1e-12);

        let mut s = StateVector::zeros(2).unwrap();
        s.apply_pauli(&"XX".parse().unwrap()).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b11).unwrap());
        assert!(s.apply_pauli(&"X".parse().unwrap()).is_err());
    }

    #[test]
    fn expectation_examples() {
        let zero = StateVector::zeros(1).unwrap();
        assert_eq!(zero.expectation(&"Z".parse().unwrap()).unwrap(), 1.0);
        let plus = plus_state(1);
        assert!((plus.expectation(&"X".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let zeros = StateVector::zeros(4).unwrap();
        assert_eq!(zeros.expectation(&"ZZIZ".parse().unwrap()).unwrap(), 1.0);
        // Y eigenstate (|0> + i|1>)/sqrt 2
        let y = StateVector::from_amplitudes(vec![ONE, Complex64::new(0.0, 1.0)]).unwrap();
        assert!((y.expectation(&"Y".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gate_errors() {
        let mut s = StateVector::zeros(2).unwrap();
        assert!(matches!(
            s.apply_gate(&GateOp::x(2), &mut rng()),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(StateVector::zeros(25).is_err());
    }

    #[test]
    fn swap_qubits_permutes_bits() {
        let mut s = StateVector::basis(3, 0b001).unwrap();
        s.swap_qubits(0, 2);
        assert_eq!(s, StateVector::basis(3, 0b100).unwrap());
    }
}
