use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("binary vectors must have length at least 1")]
    EmptyVector,

    #[error("invalid symbol {0:?}")]
    InvalidSymbol(char),

    #[error("register of {n} qubits is outside the supported range 1..={max}")]
    RegisterSize { n: usize, max: usize },

    #[error("qubit {qubit} out of range for a {width}-qubit register")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("gate operands must be distinct (got {0} twice)")]
    RepeatedOperand(usize),

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("burst length {l} out of range 1..={n}")]
    BurstLengthOutOfRange { l: usize, n: usize },

    #[error("interleaver dimensions must be positive (got {n}x{m})")]
    ZeroSize { n: usize, m: usize },

    #[error("images do not form a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("state is not an eigenstate of {pauli} (expectation {expectation})")]
    Indeterminate { pauli: String, expectation: f64 },

    #[error("errors {first} and {second} share a syndrome but differ by a non-stabilizer")]
    SyndromeCollision { first: String, second: String },

    #[error("syndrome {0} has no entry in the decoding table")]
    UnknownSyndrome(String),

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("branch set must contain at least one branch")]
    EmptyBranchSet,

    #[error("invalid branch label: {0:?}")]
    BranchLabel(String),
}
