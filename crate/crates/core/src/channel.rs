//! Burst-error channel.
//!
//! The environment is not simulated. Each error branch carries an opaque label
//! standing for a distinct, mutually orthogonal environment state, so branches
//! never interfere and are processed one at a time. Amplitudes are kept for
//! reporting only.

use std::collections::HashSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{BinaryVector, BurstKind, Pauli, PauliString};
use crate::scalar::Real;
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBranch {
    pub pauli: PauliString,
    pub label: String,
    pub amplitude: Complex64,
}

impl ErrorBranch {
    pub fn new(pauli: PauliString, label: impl Into<String>, amplitude: Complex64) -> Result<Self> {
        let label = label.into();
        if label.trim().is_empty() {
            return Err(Error::BranchLabel(label));
        }
        Ok(ErrorBranch { pauli, label, amplitude })
    }
}

/// Nonempty list of branches with pairwise distinct labels.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet {
    branches: Vec<ErrorBranch>,
}

impl BranchSet {
    pub fn new(branches: Vec<ErrorBranch>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::EmptyBranchSet);
        }
        let mut seen = HashSet::new();
        for b in &branches {
            if !seen.insert(b.label.as_str()) {
                return Err(Error::BranchLabel(b.label.clone()));
            }
        }
        Ok(BranchSet { branches })
    }

    /// One branch per Pauli, labelled `e_<string>`, with equal amplitudes.
    pub fn from_paulis(paulis: &[PauliString]) -> Result<Self> {
        let amp = Complex64::new(1.0 / (paulis.len().max(1) as f64).sqrt(), 0.0);
        let branches = paulis
            .iter()
            .map(|p| ErrorBranch::new(p.clone(), format!("e_{p}"), amp))
            .collect::<Result<Vec<_>>>()?;
        Self::new(branches)
    }

    /// Parses comma-separated Pauli strings such as `ZZZIIIIII,IIIIIZZZI`.
    pub fn parse(text: &str) -> Result<Self> {
        let paulis = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse::<PauliString>)
            .collect::<Result<Vec<_>>>()?;
        Self::from_paulis(&paulis)
    }

    pub fn branches(&self) -> &[ErrorBranch] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }
}

/// One corrupted copy of `state` per branch, in branch order.
pub fn apply_branches<T: Real>(
    branches: &BranchSet,
    state: &StateVector<T>,
) -> Result<Vec<(ErrorBranch, StateVector<T>)>> {
    branches
        .branches
        .par_iter()
        .map(|b| Ok((b.clone(), state.apply_pauli(&b.pauli)?)))
        .collect()
}

fn sample_mask(rng: &mut ChaCha8Rng, n: usize, l: usize) -> Result<(usize, usize, BinaryVector)> {
    let len = rng.gen_range(1..=l);
    let start = rng.gen_range(0..=n - len);
    let mut v = BinaryVector::zeros(n)?;
    v.set(start, true);
    v.set(start + len - 1, true);
    for i in start + 1..start + len.saturating_sub(1) {
        v.set(i, rng.gen_bool(0.5));
    }
    Ok((start, len, v))
}

/// Deterministic random burst of length at most `l` for a given seed.
///
/// Exact length is uniform in `1..=l` and the window start uniform among valid
/// positions; interior positions are uniform with nonzero endpoints. For
/// `Independent`, one of {X only, Z only, both} is chosen uniformly and each
/// present part is sampled separately.
pub fn sample_burst(seed: u64, n: usize, l: usize, kind: BurstKind) -> Result<PauliString> {
    if l == 0 || l > n {
        return Err(Error::BurstLengthOutOfRange { l, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        BurstKind::Bit => Ok(PauliString::from_x(sample_mask(&mut rng, n, l)?.2)),
        BurstKind::Phase => Ok(PauliString::from_z(sample_mask(&mut rng, n, l)?.2)),
        BurstKind::Colocated => {
            let len = rng.gen_range(1..=l);
            let start = rng.gen_range(0..=n - len);
            let mut p = PauliString::identity(n)?;
            p.set(start, Pauli::NON_IDENTITY[rng.gen_range(0..3)]);
            p.set(start + len - 1, Pauli::NON_IDENTITY[rng.gen_range(0..3)]);
            for i in start + 1..start + len.saturating_sub(1) {
                p.set(i, Pauli::ALL[rng.gen_range(0..4)]);
            }
            Ok(p)
        }
        BurstKind::Independent => {
            let shape = rng.gen_range(0..3);
            let zero = BinaryVector::zeros(n)?;
            let x = if shape != 1 { sample_mask(&mut rng, n, l)?.2 } else { zero.clone() };
            let z = if shape != 0 { sample_mask(&mut rng, n, l)?.2 } else { zero };
            PauliString::new(x, z)
        }
    }
}
