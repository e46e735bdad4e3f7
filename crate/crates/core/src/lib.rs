//! Quantum burst-error correction by interleaving.
//!
//! Interleaving `m` code words of an `[[n,k]]` stabilizer code spreads any
//! burst of length at most `b*m` into bursts of length at most `b` per code
//! word. This crate builds the interleaving permutation and its SWAP network,
//! simulates Pauli bursts on encoded registers, and checks burst
//! correctability both on dense state vectors and with the stabilizer
//! formalism.
//!
//! The dense simulator is generic over the real scalar (`f32` or `f64`);
//! [`StateVector64`] and [`StateVector32`] name the two instantiations.

pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod interleaver;
pub mod pauli;
pub mod pipeline;
pub mod scalar;
pub mod statevector;

pub use channel::{apply_branches, sample_burst, BranchSet, ErrorBranch};
pub use codes::{
    analyze_error_set, build_syndrome_table, burst_ability_measured, correct, corrects_error_set,
    encode_blocks, encode_logical, encode_phase3, extract_syndrome, five_qubit_code, interleaved_code,
    phase3_code, StabilizerCode, SyndromeTable,
};
pub use error::{Error, Result};
pub use interleaver::{
    cnot_count, interleave_permutation, synthesize_swap_network, Circuit, CircuitFormat, Gate, Permutation,
};
pub use pauli::{enumerate_bursts, BinaryVector, BurstKind, Pauli, PauliString};
pub use pipeline::{BlockOutcome, InterleavedPipeline};
pub use scalar::Real;
pub use statevector::StateVector;

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
