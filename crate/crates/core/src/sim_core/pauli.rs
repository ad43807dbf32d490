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

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the length of a [`PauliString`]; masks are stored in a `u64`.
pub const MAX_PAULI_QUBITS: usize = 64;

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Phase-free n-qubit Pauli operator in symplectic form.
///
/// Qubit `i` carries `X` when bit `i` of `x_mask` is set, `Z` when bit `i` of
/// `z_mask` is set and `Y` when both are. Products discard the phase, which is
/// what error propagation needs; callers that care about signs (logical `Y`)
/// track them separately.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    num_qubits: usize,
    x_mask: u64,
    z_mask: u64,
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Self {
        assert!(num_qubits <= MAX_PAULI_QUBITS, "pauli string too long");
        PauliString {
            num_qubits,
            x_mask: 0,
            z_mask: 0,
        }
    }

    /// Builds a string from raw masks. Bits beyond `num_qubits` are rejected.
    pub fn from_masks(num_qubits: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if num_qubits > MAX_PAULI_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "pauli string of {num_qubits} qubits exceeds {MAX_PAULI_QUBITS}"
            )));
        }
        let valid = low_mask(num_qubits);
        if (x_mask | z_mask) & !valid != 0 {
            return Err(Error::QubitOutOfRange {
                qubit: 63 - ((x_mask | z_mask) & !valid).leading_zeros() as usize,
                num_qubits,
            });
        }
        Ok(PauliString {
            num_qubits,
            x_mask,
            z_mask,
        })
    }

    /// A single Pauli factor on `qubit`.
    pub fn single(num_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        let mut p = PauliString::identity(num_qubits);
        p.set(qubit, pauli)?;
        Ok(p)
    }

    /// `X` on every listed qubit (0-based).
    pub fn x_on(num_qubits: usize, qubits: &[usize]) -> Result<Self> {
        Self::uniform(num_qubits, qubits, Pauli::X)
    }

    /// `Z` on every listed qubit (0-based).
    pub fn z_on(num_qubits: usize, qubits: &[usize]) -> Result<Self> {
        Self::uniform(num_qubits, qubits, Pauli::Z)
    }

    fn uniform(num_qubits: usize, qubits: &[usize], pauli: Pauli) -> Result<Self> {
        let mut p = PauliString::identity(num_qubits);
        for &q in qubits {
            p.set(q, pauli)?;
        }
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn support(&self) -> u64 {
        self.x_mask | self.z_mask
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    /// True when only `X` factors (or identity) appear.
    pub fn is_x_type(&self) -> bool {
        self.z_mask == 0
    }

    pub fn is_z_type(&self) -> bool {
        self.x_mask == 0
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(
            (self.x_mask >> qubit) & 1 == 1,
            (self.z_mask >> qubit) & 1 == 1,
        )
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        let (x, z) = pauli.bits();
        let bit = 1u64 << qubit;
        self.x_mask = (self.x_mask & !bit) | if x { bit } else { 0 };
        self.z_mask = (self.z_mask & !bit) | if z { bit } else { 0 };
        Ok(())
    }

    /// Phase-free product.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        Ok(PauliString {
            num_qubits: self.num_qubits,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
        })
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.anticommute_parity(other) == 0)
    }

    /// Symplectic inner product, 0 when commuting and 1 otherwise.
    /// Assumes equal lengths.
    pub(crate) fn anticommute_parity(&self, other: &PauliString) -> u32 {
        ((self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones())
            & 1
    }

    /// Restricts or extends the string to `num_qubits`, dropping higher factors.
    pub fn resized(&self, num_qubits: usize) -> PauliString {
        let m = low_mask(num_qubits);
        PauliString {
            num_qubits,
            x_mask: self.x_mask & m,
            z_mask: self.z_mask & m,
        }
    }

    /// Moves factor `i` to position `map[i]` in a string of `num_qubits` qubits.
    pub fn remapped(&self, num_qubits: usize, map: &[usize]) -> Result<PauliString> {
        let mut out = PauliString::identity(num_qubits);
        for q in 0..self.num_qubits {
            let p = self.get(q);
            if p != Pauli::I {
                let target = *map.get(q).ok_or(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: map.len(),
                })?;
                out.set(target, p)?;
            }
        }
        Ok(out)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.num_qubits).map(move |q| self.get(q))
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for PauliString {
    /// Text form with qubit 0 first, e.g. `XIXXIXIII`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.iter() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = PauliString::identity(s.chars().count());
        for (q, c) in s.chars().enumerate() {
            let pauli = match c.to_ascii_uppercase() {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid pauli character {other:?} in {s:?}"
                    )))
                }
            };
            p.set(q, pauli)?;
        }
        Ok(p)
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_counts_union_of_masks() {
        let p: PauliString = "XIYZI".parse().unwrap();
        assert_eq!(p.weight(), 3);
        assert_eq!(p.x_mask(), 0b00101);
        assert_eq!(p.z_mask(), 0b01100);
        assert_eq!(p.to_string(), "XIYZI");
    }

    #[test]
    fn product_discards_phase() {
        let x: PauliString = "XI".parse().unwrap();
        let z: PauliString = "ZI".parse().unwrap();
        assert_eq!(x.mul(&z).unwrap().to_string(), "YI");
        assert_eq!(x.mul(&x).unwrap(), PauliString::identity(2));
    }

    #[test]
    fn commutation() {
        let a: PauliString = "XX".parse().unwrap();
        let b: PauliString = "ZZ".parse().unwrap();
        let c: PauliString = "ZI".parse().unwrap();
        assert!(a.commutes_with(&b).unwrap());
        assert!(!a.commutes_with(&c).unwrap());
        assert!(a.commutes_with(&"ZZZ".parse().unwrap()).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(PauliString::from_masks(3, 0b1000, 0).is_err());
        assert!(PauliString::single(3, 3, Pauli::X).is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn remap_moves_factors() {
        let p: PauliString = "XZ".parse().unwrap();
        let r = p.remapped(4, &[3, 1]).unwrap();
        assert_eq!(r.to_string(), "IZIX");
    }
}
