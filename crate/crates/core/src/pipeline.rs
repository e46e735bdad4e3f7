//! Encode, interleave, corrupt, deinterleave and decode block by block.

use num_complex::Complex;

use crate::codes::{encode_logical, syndrome_from_eigenvalues, StabilizerCode, SyndromeTable};
use crate::error::{Error, Result};
use crate::interleaver::{interleave_permutation, Permutation};
use crate::pauli::{BinaryVector, PauliString};
use crate::scalar::Real;
use crate::statevector::{StateVector, MAX_QUBITS};

/// Result of sending one error through the pipeline.
#[derive(Debug, Clone)]
pub struct BlockOutcome<T: Real> {
    /// The error as seen in block layout after deinterleaving.
    pub residual: PauliString,
    /// Per-block syndromes read from the received state.
    pub syndromes: Vec<BinaryVector>,
    /// Per-block recovery, `None` when the syndrome is not in the table.
    pub recoveries: Vec<Option<PauliString>>,
    pub corrected: StateVector<T>,
    /// Fidelity of the corrected state with the encoded input.
    pub fidelity: T,
}

impl<T: Real> BlockOutcome<T> {
    pub fn is_success(&self) -> bool {
        self.recoveries.iter().all(Option::is_some) && (T::one() - self.fidelity) <= T::tolerance()
    }
}

/// `m` copies of a one-logical-qubit code decoded independently after deinterleaving.
#[derive(Debug, Clone)]
pub struct InterleavedPipeline {
    code: StabilizerCode,
    m: usize,
    perm: Permutation,
    block_generators: Vec<Vec<PauliString>>,
    table: SyndromeTable,
}

impl InterleavedPipeline {
    /// Uses the table for the code's declared correctable bursts.
    pub fn new(code: &StabilizerCode, m: usize) -> Result<Self> {
        let table = SyndromeTable::for_declared_ability(code)?;
        Self::with_table(code, m, table)
    }

    pub fn with_table(code: &StabilizerCode, m: usize, table: SyndromeTable) -> Result<Self> {
        let n = code.n();
        if n * m > MAX_QUBITS || m == 0 {
            return Err(Error::RegisterSize { n: n * m, max: MAX_QUBITS });
        }
        if code.k() != 1 {
            return Err(Error::InvalidCode(format!(
                "block pipeline needs k = 1, code has k = {}",
                code.k()
            )));
        }
        let perm = interleave_permutation(n, m)?;
        let block_generators = (0..m)
            .map(|b| {
                code.generators()
                    .iter()
                    .map(|g| g.embed(n * m, b * n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InterleavedPipeline {
            code: code.clone(),
            m,
            perm,
            block_generators,
            table,
        })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn width(&self) -> usize {
        self.code.n() * self.m
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn table(&self) -> &SyndromeTable {
        &self.table
    }

    /// Block-layout input state, one `(c0, c1)` pair per block.
    pub fn encode<T: Real>(&self, coeffs: &[(Complex<T>, Complex<T>)]) -> Result<StateVector<T>> {
        if coeffs.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: coeffs.len(),
            });
        }
        crate::codes::encode_blocks(coeffs, |c0, c1| encode_logical(&self.code, c0, c1))
    }

    pub fn interleave<T: Real>(&self, input: &StateVector<T>) -> Result<StateVector<T>> {
        input.apply_qubit_permutation(&self.perm)
    }

    pub fn deinterleave<T: Real>(&self, transmitted: &StateVector<T>) -> Result<StateVector<T>> {
        transmitted.apply_qubit_permutation(&self.perm.inverse())
    }

    /// Runs `error` (in transmitted positions) through the pipeline.
    pub fn run<T: Real>(
        &self,
        input: &StateVector<T>,
        interleaved: &StateVector<T>,
        error: &PauliString,
    ) -> Result<BlockOutcome<T>> {
        let corrupted = interleaved.apply_pauli(error)?;
        let received = self.deinterleave(&corrupted)?;
        self.decode(input, &received, error.permuted(&self.perm.inverse())?)
    }

    /// Block-wise syndrome decoding of a deinterleaved state.
    pub fn decode<T: Real>(
        &self,
        input: &StateVector<T>,
        received: &StateVector<T>,
        residual: PauliString,
    ) -> Result<BlockOutcome<T>> {
        let n = self.code.n();
        let mut corrected = received.clone();
        let mut syndromes = Vec::with_capacity(self.m);
        let mut recoveries = Vec::with_capacity(self.m);
        for (b, gens) in self.block_generators.iter().enumerate() {
            let s = syndrome_from_eigenvalues(gens, received)?;
            let recovery = self.table.get(&s).cloned();
            if let Some(r) = &recovery {
                corrected = corrected.apply_pauli(&r.embed(n * self.m, b * n)?)?;
            }
            syndromes.push(s);
            recoveries.push(recovery);
        }
        let fidelity = corrected.fidelity(input)?;
        Ok(BlockOutcome {
            residual,
            syndromes,
            recoveries,
            corrected,
            fidelity,
        })
    }
}
