//! Binary vectors and phase-free Pauli strings.
//!
//! A [`PauliString`] is the pair of masks `(x, z)` standing for the operator
//! `X_x Z_z`. Global phases are not tracked: two strings are equal when their
//! masks are equal. Positions are 0-based, qubit 0 is the leftmost symbol.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interleaver::Permutation;

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(BinaryVector {
            len,
            words: vec![0; word_count(len)],
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut v = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    /// Vector of length `len` with ones exactly at `indices`.
    pub fn from_support(len: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        for &i in indices {
            if i >= len {
                return Err(Error::QubitOutOfRange { qubit: i, width: len });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    /// Ones on the half-open window `start..start + width`.
    pub fn window(len: usize, start: usize, width: usize) -> Result<Self> {
        let indices: Vec<usize> = (start..start + width).collect();
        Self::from_support(len, &indices)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + bit)
                }
            })
        })
    }

    /// Indices holding a one, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// Span from the first to the last nonzero component, or 0 for the zero vector.
    pub fn burst_length(&self) -> usize {
        match (self.first_one(), self.last_one()) {
            (Some(first), Some(last)) => last - first + 1,
            _ => 0,
        }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign_unchecked(other);
        Ok(out)
    }

    #[inline]
    pub(crate) fn xor_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Ok(BinaryVector { len: self.len, words })
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Ok(BinaryVector { len: self.len, words })
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = BinaryVector {
            len: self.len + other.len,
            words: vec![0; word_count(self.len + other.len)],
        };
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Sub-vector `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: start + len,
            });
        }
        let mut out = Self::zeros(len)?;
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl Ord for BinaryVector {
    /// Lexicographic order of the bit strings as written left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            match a.reverse_bits().cmp(&b.reverse_bits()) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BinaryVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl FromStr for BinaryVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Z,
    Y,
}

impl Pauli {
    /// All four factors in mask order `(x, z)` = 00, 10, 01, 11.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::Y];
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Z, Pauli::Y];

    pub fn masks(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_masks(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Z => 'Z',
            Pauli::Y => 'Y',
        }
    }
}

/// The operator `X_x Z_z` on `n` qubits, up to global phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BinaryVector,
    z: BinaryVector,
}

impl PauliString {
    pub fn new(x: BinaryVector, z: BinaryVector) -> Result<Self> {
        x.check_len(&z)?;
        Ok(PauliString { x, z })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let zero = BinaryVector::zeros(n)?;
        Ok(PauliString {
            x: zero.clone(),
            z: zero,
        })
    }

    /// `factor` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, factor: Pauli) -> Result<Self> {
        let mut p = Self::identity(n)?;
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, width: n });
        }
        p.set(qubit, factor);
        Ok(p)
    }

    pub fn from_x(x: BinaryVector) -> Self {
        let z = BinaryVector {
            len: x.len,
            words: vec![0; x.words.len()],
        };
        PauliString { x, z }
    }

    pub fn from_z(z: BinaryVector) -> Self {
        let x = BinaryVector {
            len: z.len,
            words: vec![0; z.words.len()],
        };
        PauliString { x, z }
    }

    pub fn n(&self) -> usize {
        self.x.len
    }

    /// Bit-error mask (α).
    pub fn x_mask(&self) -> &BinaryVector {
        &self.x
    }

    /// Phase-error mask (β).
    pub fn z_mask(&self) -> &BinaryVector {
        &self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_masks(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set(&mut self, qubit: usize, factor: Pauli) {
        let (x, z) = factor.masks();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Positions acted on non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut union = self.x.clone();
        for (a, b) in union.words.iter_mut().zip(&self.z.words) {
            *a |= b;
        }
        union.support()
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .words
            .iter()
            .zip(&self.z.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Number of positions carrying a `Y` factor.
    pub fn y_count(&self) -> usize {
        self.x
            .words
            .iter()
            .zip(&self.z.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when both the bit-error and phase-error masks are bursts of length at most `l`.
    pub fn is_quantum_burst(&self, l: usize) -> bool {
        self.x.burst_length() <= l && self.z.burst_length() <= l
    }

    /// Span of the smallest window containing every non-identity factor.
    pub fn colocated_span(&self) -> usize {
        let first = match (self.x.first_one(), self.z.first_one()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return 0,
        };
        let last = self
            .x
            .last_one()
            .into_iter()
            .chain(self.z.last_one())
            .max()
            .unwrap_or(first);
        last - first + 1
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// 0 (`false`) when the operators commute, 1 (`true`) when they anticommute.
    pub fn symplectic_product(&self, other: &Self) -> Result<bool> {
        self.check_n(other)?;
        Ok(self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        self.x.dot_unchecked(&other.z) ^ self.z.dot_unchecked(&other.x)
    }

    /// Product of the two operators with the phase dropped.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        out.x.xor_assign_unchecked(&other.x);
        out.z.xor_assign_unchecked(&other.z);
        Ok(out)
    }

    /// Moves the factor at position `i` to position `perm(i)`.
    pub fn permuted(&self, perm: &Permutation) -> Result<Self> {
        Ok(PauliString {
            x: perm.apply_to_vector(&self.x)?,
            z: perm.apply_to_vector(&self.z)?,
        })
    }

    /// Places this string on `width` qubits, qubit `i` landing at `offset + i`.
    pub fn embed(&self, width: usize, offset: usize) -> Result<Self> {
        if offset + self.n() > width {
            return Err(Error::QubitOutOfRange {
                qubit: offset + self.n() - 1,
                width,
            });
        }
        let mut out = Self::identity(width)?;
        for i in 0..self.n() {
            out.set(offset + i, self.get(i));
        }
        Ok(out)
    }

    /// Factors on `offset..offset + len`.
    pub fn restrict(&self, offset: usize, len: usize) -> Result<Self> {
        Ok(PauliString {
            x: self.x.slice(offset, len)?,
            z: self.z.slice(offset, len)?,
        })
    }

    /// Symplectic row `[x | z]` of length `2n`.
    pub fn symplectic_row(&self) -> BinaryVector {
        self.x.concat(&self.z)
    }

    /// Positions rendered 1-based, for human-readable output.
    pub fn support_one_based(&self) -> Vec<usize> {
        self.support().into_iter().map(|i| i + 1).collect()
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).symbol())?;
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
        let factors = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' | '_' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Z' => Ok(Pauli::Z),
                'Y' => Ok(Pauli::Y),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut p = PauliString::identity(factors.len())?;
        for (q, f) in factors.into_iter().enumerate() {
            p.set(q, f);
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

/// Which family of burst errors to enumerate or sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurstKind {
    /// X-only bursts.
    Bit,
    /// Z-only bursts.
    Phase,
    /// Combined support inside one window; each in-window qubit carries I, X, Z or Y.
    Colocated,
    /// X-part and Z-part are each bursts, in possibly different windows.
    Independent,
}

impl BurstKind {
    pub const ALL: [BurstKind; 4] = [
        BurstKind::Bit,
        BurstKind::Phase,
        BurstKind::Colocated,
        BurstKind::Independent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BurstKind::Bit => "bit",
            BurstKind::Phase => "phase",
            BurstKind::Colocated => "colocated",
            BurstKind::Independent => "independent",
        }
    }

    /// Whether `p` belongs to this family with length at most `l`.
    pub fn admits(self, p: &PauliString, l: usize) -> bool {
        match self {
            BurstKind::Bit => p.z.is_zero() && p.x.burst_length() <= l,
            BurstKind::Phase => p.x.is_zero() && p.z.burst_length() <= l,
            BurstKind::Colocated => p.colocated_span() <= l,
            BurstKind::Independent => p.is_quantum_burst(l),
        }
    }
}

impl fmt::Display for BurstKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BurstKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bit" | "x" => Ok(BurstKind::Bit),
            "phase" | "z" => Ok(BurstKind::Phase),
            "colocated" => Ok(BurstKind::Colocated),
            "independent" => Ok(BurstKind::Independent),
            other => Err(format!(
                "unknown burst kind {other:?} (expected bit, phase, colocated or independent)"
            )),
        }
    }
}

/// Every nonzero binary vector of length `n` with burst length at most `l`,
/// ordered by exact length, then start position, then interior pattern.
pub fn binary_bursts(n: usize, l: usize) -> Result<Vec<BinaryVector>> {
    if l == 0 || l > n {
        return Err(Error::BurstLengthOutOfRange { l, n });
    }
    let mut out = Vec::new();
    for len in 1..=l {
        let interior = len.saturating_sub(2);
        for start in 0..=(n - len) {
            for pattern in 0u64..(1u64 << interior) {
                let mut v = BinaryVector::zeros(n)?;
                v.set(start, true);
                v.set(start + len - 1, true);
                for bit in 0..interior {
                    if (pattern >> bit) & 1 == 1 {
                        v.set(start + 1 + bit, true);
                    }
                }
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// All non-identity Pauli bursts of length at most `l` on `n` qubits.
pub fn enumerate_bursts(n: usize, l: usize, kind: BurstKind) -> Result<Vec<PauliString>> {
    match kind {
        BurstKind::Bit => Ok(binary_bursts(n, l)?.into_iter().map(PauliString::from_x).collect()),
        BurstKind::Phase => Ok(binary_bursts(n, l)?.into_iter().map(PauliString::from_z).collect()),
        BurstKind::Colocated => colocated_bursts(n, l),
        BurstKind::Independent => {
            let masks = binary_bursts(n, l)?;
            let zero = BinaryVector::zeros(n)?;
            let parts: Vec<&BinaryVector> = std::iter::once(&zero).chain(&masks).collect();
            let mut out = Vec::with_capacity(parts.len() * parts.len() - 1);
            for x in &parts {
                for z in &parts {
                    if x.is_zero() && z.is_zero() {
                        continue;
                    }
                    out.push(PauliString {
                        x: (*x).clone(),
                        z: (*z).clone(),
                    });
                }
            }
            Ok(out)
        }
    }
}

fn colocated_bursts(n: usize, l: usize) -> Result<Vec<PauliString>> {
    if l == 0 || l > n {
        return Err(Error::BurstLengthOutOfRange { l, n });
    }
    let mut out = Vec::new();
    for len in 1..=l {
        for start in 0..=(n - len) {
            if len == 1 {
                for f in Pauli::NON_IDENTITY {
                    out.push(PauliString::single(n, start, f)?);
                }
                continue;
            }
            let interior = len - 2;
            for first in Pauli::NON_IDENTITY {
                for last in Pauli::NON_IDENTITY {
                    for pattern in 0u64..(1u64 << (2 * interior)) {
                        let mut p = PauliString::identity(n)?;
                        p.set(start, first);
                        p.set(start + len - 1, last);
                        for i in 0..interior {
                            let digit = ((pattern >> (2 * i)) & 3) as usize;
                            p.set(start + 1 + i, Pauli::ALL[digit]);
                        }
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn bv(s: &str) -> BinaryVector {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn scan_burst_length(bits: &[bool]) -> usize {
        let ones: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        match (ones.first(), ones.last()) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    #[test]
    fn burst_length_examples() {
        assert_eq!(bv("111000000").burst_length(), 3);
        assert_eq!(bv("000001110").burst_length(), 3);
        assert_eq!(bv("000000000").burst_length(), 0);
        let v = bv("100000001");
        assert_eq!(scan_burst_length(&v.to_bits()), 9);
        assert_eq!(v.burst_length(), 9);
    }

    #[test]
    fn burst_length_across_word_boundary() {
        let v = BinaryVector::from_support(130, &[60, 70, 129]).unwrap();
        assert_eq!(v.burst_length(), 70);
        assert_eq!(v.support(), vec![60, 70, 129]);
    }

    #[test]
    fn support_examples() {
        assert_eq!(bv("111000000").support(), vec![0, 1, 2]);
        assert!(bv("000000000").support().is_empty());
        assert_eq!(bv("010100000").support(), vec![1, 3]);
    }

    #[test]
    fn weight_examples() {
        let p = PauliString::new(bv("110"), bv("011")).unwrap();
        let union: HashSet<usize> = [0usize, 1].into_iter().chain([1usize, 2]).collect();
        assert_eq!(p.weight(), union.len());
        assert_eq!(p.weight(), 3);
        assert_eq!(PauliString::identity(3).unwrap().weight(), 0);
        assert_eq!(PauliString::new(bv("100"), bv("100")).unwrap().weight(), 1);
    }

    #[test]
    fn quantum_burst_examples() {
        let p = PauliString::new(bv("000000000"), bv("111000000")).unwrap();
        assert!(p.is_quantum_burst(3));
        assert!(PauliString::identity(9).unwrap().is_quantum_burst(1));
        let q = PauliString::new(bv("110000000"), bv("000000011")).unwrap();
        assert_eq!(scan_burst_length(&q.x_mask().to_bits()), 2);
        assert_eq!(scan_burst_length(&q.z_mask().to_bits()), 2);
        assert!(q.is_quantum_burst(2));
        assert!(!BurstKind::Colocated.admits(&q, 2));
    }

    #[test]
    fn symplectic_examples() {
        assert!(ps("IZI").symplectic_product(&ps("XXI")).unwrap());
        let p = ps("XZYZ");
        assert!(!p.symplectic_product(&p).unwrap());
        assert!(!ps("XI").symplectic_product(&ps("IZ")).unwrap());
        assert!(ps("XI").symplectic_product(&ps("ZIZ")).is_err());
    }

    #[test]
    fn multiply_examples() {
        let p = ps("XYZ");
        assert!(p.multiply(&p).unwrap().is_identity());
        assert_eq!(ps("XII").multiply(&ps("ZII")).unwrap(), ps("YII"));
        let a = PauliString::from_x(bv("110"));
        let b = PauliString::from_x(bv("011"));
        assert_eq!(a.multiply(&b).unwrap(), PauliString::from_x(bv("101")));
        assert!(ps("XX").multiply(&ps("X")).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = ps("ZZZIIIIII");
        assert_eq!(p.z_mask(), &bv("111000000"));
        assert_eq!(p.to_string(), "ZZZIIIIII");
        assert_eq!(ps("y").to_string(), "Y");
        assert_eq!("XQ".parse::<PauliString>(), Err(Error::InvalidSymbol('Q')));
        assert_eq!("".parse::<PauliString>(), Err(Error::EmptyVector));
    }

    #[test]
    fn lexicographic_order() {
        assert!(bv("0100") < bv("1000"));
        assert!(bv("0001") < bv("0010"));
        let mut v = vec![ps("XI"), ps("II"), ps("IZ"), ps("IX")];
        v.sort();
        assert_eq!(v, vec![ps("II"), ps("IZ"), ps("IX"), ps("XI")]);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_bursts(9, 3, BurstKind::Phase).unwrap().len(), 31);
        assert_eq!(enumerate_bursts(9, 3, BurstKind::Bit).unwrap().len(), 31);
        let single = enumerate_bursts(1, 1, BurstKind::Colocated).unwrap();
        assert_eq!(single, vec![ps("X"), ps("Z"), ps("Y")]);
        assert!(enumerate_bursts(4, 0, BurstKind::Bit).is_err());
        assert!(enumerate_bursts(4, 5, BurstKind::Colocated).is_err());
    }

    #[test]
    fn enumerate_matches_exhaustive_oracle() {
        for n in 1..=12usize {
            let all: Vec<Vec<bool>> = (0u32..(1 << n))
                .map(|w| (0..n).map(|i| (w >> i) & 1 == 1).collect())
                .collect();
            for l in 1..=n.min(5) {
                let oracle = all
                    .iter()
                    .filter(|b| {
                        let len = scan_burst_length(b);
                        len >= 1 && len <= l
                    })
                    .count();
                for kind in [BurstKind::Bit, BurstKind::Phase] {
                    let got = enumerate_bursts(n, l, kind).unwrap();
                    assert_eq!(got.len(), oracle, "n={n} l={l} {kind}");
                    let exact = got
                        .iter()
                        .filter(|p| p.x_mask().burst_length().max(p.z_mask().burst_length()) == l)
                        .count();
                    let oracle_exact = all.iter().filter(|b| scan_burst_length(b) == l).count();
                    assert_eq!(exact, oracle_exact);
                    assert_eq!(exact, (n - l + 1) << l.saturating_sub(2));
                }
            }
        }
    }

    #[test]
    fn enumerate_no_duplicates_and_admitted() {
        for n in 1..=6 {
            for l in 1..=n {
                for kind in BurstKind::ALL {
                    let got = enumerate_bursts(n, l, kind).unwrap();
                    let unique: HashSet<&PauliString> = got.iter().collect();
                    assert_eq!(unique.len(), got.len(), "duplicates for n={n} l={l} {kind}");
                    for p in &got {
                        assert!(!p.is_identity());
                        assert!(p.is_quantum_burst(l));
                        assert!(kind.admits(p, l));
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_matches_brute_force_over_all_paulis() {
        // 4^n brute force for every kind
        for n in 1..=5usize {
            for l in 1..=n {
                for kind in BurstKind::ALL {
                    let mut oracle = HashSet::new();
                    for code in 1u64..(1 << (2 * n)) {
                        let mut p = PauliString::identity(n).unwrap();
                        for q in 0..n {
                            p.set(q, Pauli::ALL[((code >> (2 * q)) & 3) as usize]);
                        }
                        if kind.admits(&p, l) {
                            oracle.insert(p);
                        }
                    }
                    let got: HashSet<PauliString> =
                        enumerate_bursts(n, l, kind).unwrap().into_iter().collect();
                    assert_eq!(got, oracle, "n={n} l={l} {kind}");
                }
            }
        }
    }

    #[test]
    fn colocated_is_subset_of_independent() {
        for n in 1..=7 {
            for l in 1..=n {
                let independent: HashSet<PauliString> = enumerate_bursts(n, l, BurstKind::Independent)
                    .unwrap()
                    .into_iter()
                    .collect();
                for p in enumerate_bursts(n, l, BurstKind::Colocated).unwrap() {
                    assert!(independent.contains(&p), "{p} missing for n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn burst_length_bounds_weight_exhaustive() {
        for n in 1..=12usize {
            for w in 0u32..(1 << n) {
                let bits: Vec<bool> = (0..n).map(|i| (w >> i) & 1 == 1).collect();
                let v = BinaryVector::from_bits(&bits).unwrap();
                assert_eq!(v.burst_length() == 0, v.support().is_empty());
                assert!(v.burst_length() >= v.support().len());
                assert_eq!(v.burst_length(), scan_burst_length(&bits));
            }
        }
    }

    fn all_paulis(n: usize) -> Vec<PauliString> {
        (0u64..(1 << (2 * n)))
            .map(|code| {
                let mut p = PauliString::identity(n).unwrap();
                for q in 0..n {
                    p.set(q, Pauli::ALL[((code >> (2 * q)) & 3) as usize]);
                }
                p
            })
            .collect()
    }

    #[test]
    fn symplectic_symmetric_and_bilinear() {
        for n in 1..=3 {
            let all = all_paulis(n);
            for a in &all {
                for b in &all {
                    let ab = a.symplectic_product(b).unwrap();
                    assert_eq!(ab, b.symplectic_product(a).unwrap());
                    for c in &all {
                        let lhs = a.multiply(b).unwrap().symplectic_product(c).unwrap();
                        let rhs = a.symplectic_product(c).unwrap() ^ b.symplectic_product(c).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        // n = 4 pairwise symmetry and linearity against a fixed third operand set
        let all = all_paulis(4);
        let probes: Vec<&PauliString> = all.iter().step_by(17).collect();
        for a in &all {
            for b in &probes {
                assert_eq!(a.symplectic_product(b).unwrap(), b.symplectic_product(a).unwrap());
                for c in &probes {
                    let lhs = a.multiply(b).unwrap().symplectic_product(c).unwrap();
                    let rhs = a.symplectic_product(c).unwrap() ^ b.symplectic_product(c).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn multiply_group_laws() {
        for n in 1..=3 {
            let all = all_paulis(n);
            for a in &all {
                assert!(a.multiply(a).unwrap().is_identity());
                for b in &all {
                    let ab = a.multiply(b).unwrap();
                    assert_eq!(ab, b.multiply(a).unwrap());
                    for c in &all {
                        assert_eq!(ab.multiply(c).unwrap(), a.multiply(&b.multiply(c).unwrap()).unwrap());
                    }
                }
            }
        }
        let all = all_paulis(4);
        for a in &all {
            assert!(a.multiply(a).unwrap().is_identity());
        }
    }
}
