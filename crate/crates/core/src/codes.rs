//! Stabilizer codes, syndrome decoding and burst-correctability checks.
//!
//! The three-qubit phase code stores `|0>` as the even-parity superposition
//! `|000> + |011> + |101> + |110>` and `|1>` as the odd-parity one. Every
//! even-parity basis state is mapped to another by flipping two adjacent bits,
//! so `XXI` and `IXX` fix both code words; they are the stabilizer generators.
//! `ZZZ` reads the parity (logical Z) and `XXX` exchanges the two code words
//! (logical X). A single `Z_j` anticommutes with a distinct subset of the
//! generators, which is why one phase error is correctable.
//!
//! The five-qubit code uses the cyclic generators `XZZXI` and its shifts.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interleaver::interleave_permutation;
use crate::pauli::{enumerate_bursts, BinaryVector, BurstKind, PauliString};
use crate::scalar::Real;
use crate::statevector::StateVector;

/// Span of a set of symplectic rows over GF(2), kept in echelon form.
#[derive(Debug, Clone)]
pub struct SymplecticBasis {
    rows: Vec<(usize, BinaryVector)>,
}

impl SymplecticBasis {
    pub fn new() -> Self {
        SymplecticBasis { rows: Vec::new() }
    }

    fn reduce(&self, mut v: BinaryVector) -> BinaryVector {
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign_unchecked(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already dependent.
    pub fn insert(&mut self, v: BinaryVector) -> bool {
        let reduced = self.reduce(v);
        match reduced.first_one() {
            Some(pivot) => {
                self.rows.push((pivot, reduced));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

impl Default for SymplecticBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// GF(2) rank of the symplectic rows of `paulis`.
pub fn symplectic_rank(paulis: &[PauliString]) -> usize {
    let mut basis = SymplecticBasis::new();
    for p in paulis {
        basis.insert(p.symplectic_row());
    }
    basis.rank()
}

#[derive(Debug, Clone)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    generators: Vec<PauliString>,
    logical_xs: Vec<PauliString>,
    logical_zs: Vec<PauliString>,
    burst_ability: usize,
    burst_kind: BurstKind,
    stabilizer: SymplecticBasis,
}

impl StabilizerCode {
    /// Validates commutation, independence and the logical-operator pairing.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<PauliString>,
        logical_xs: Vec<PauliString>,
        logical_zs: Vec<PauliString>,
        burst_ability: usize,
        burst_kind: BurstKind,
    ) -> Result<Self> {
        let invalid = |msg: String| Error::InvalidCode(msg);
        let n = generators
            .first()
            .or(logical_xs.first())
            .map(PauliString::n)
            .ok_or_else(|| invalid("no generators or logical operators".into()))?;
        let k = logical_xs.len();
        if logical_zs.len() != k {
            return Err(invalid(format!(
                "{} logical X operators but {} logical Z operators",
                k,
                logical_zs.len()
            )));
        }
        if generators.len() + k != n {
            return Err(invalid(format!(
                "{} generators and {} logical qubits do not fit {} physical qubits",
                generators.len(),
                k,
                n
            )));
        }
        for p in generators.iter().chain(&logical_xs).chain(&logical_zs) {
            if p.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.anticommutes_unchecked(b) {
                    return Err(invalid(format!("generators {a} and {b} anticommute")));
                }
            }
        }
        let mut stabilizer = SymplecticBasis::new();
        for g in &generators {
            if !stabilizer.insert(g.symplectic_row()) {
                return Err(invalid(format!("generator {g} is dependent")));
            }
        }
        for l in logical_xs.iter().chain(&logical_zs) {
            if let Some(g) = generators.iter().find(|g| l.anticommutes_unchecked(g)) {
                return Err(invalid(format!("logical {l} anticommutes with generator {g}")));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let expect = i == j;
                if logical_xs[i].anticommutes_unchecked(&logical_zs[j]) != expect {
                    return Err(invalid(format!(
                        "logical X{i} and Z{j} must {}",
                        if expect { "anticommute" } else { "commute" }
                    )));
                }
                if i < j
                    && (logical_xs[i].anticommutes_unchecked(&logical_xs[j])
                        || logical_zs[i].anticommutes_unchecked(&logical_zs[j]))
                {
                    return Err(invalid(format!("logical pairs {i} and {j} do not commute")));
                }
            }
        }
        Ok(StabilizerCode {
            name: name.into(),
            n,
            k,
            generators,
            logical_xs,
            logical_zs,
            burst_ability,
            burst_kind,
            stabilizer,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_xs(&self) -> &[PauliString] {
        &self.logical_xs
    }

    pub fn logical_zs(&self) -> &[PauliString] {
        &self.logical_zs
    }

    /// Declared burst-error-correcting ability.
    pub fn burst_ability(&self) -> usize {
        self.burst_ability
    }

    /// Burst family the declared ability refers to.
    pub fn burst_kind(&self) -> BurstKind {
        self.burst_kind
    }

    /// Whether `p` is in the stabilizer group (up to phase).
    pub fn in_stabilizer(&self, p: &PauliString) -> bool {
        p.n() == self.n && self.stabilizer.contains(&p.symplectic_row())
    }

    /// Commutation pattern of `error` with the generators, bit `i` for generator `i`.
    pub fn syndrome(&self, error: &PauliString) -> Result<BinaryVector> {
        if error.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: error.n(),
            });
        }
        let mut s = BinaryVector::zeros(self.generators.len().max(1))?;
        for (i, g) in self.generators.iter().enumerate() {
            if error.anticommutes_unchecked(g) {
                s.set(i, true);
            }
        }
        Ok(s)
    }

    /// Generators, then logicals, one Pauli string per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[[{},{}]] {} burst_ability={} kind={}",
            self.n, self.k, self.name, self.burst_ability, self.burst_kind
        )?;
        writeln!(f, "generators:")?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        writeln!(f, "logical_x:")?;
        for l in &self.logical_xs {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "logical_z:")?;
        for l in &self.logical_zs {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn paulis(strings: &[&str]) -> Vec<PauliString> {
    strings
        .iter()
        .map(|s| s.parse().expect("built-in Pauli strings are well formed"))
        .collect()
}

/// `[[3,1]]` phase-flip code, correcting any single phase error.
pub fn phase3_code() -> StabilizerCode {
    StabilizerCode::new(
        "phase3",
        paulis(&["XXI", "IXX"]),
        paulis(&["XXX"]),
        paulis(&["ZZZ"]),
        1,
        BurstKind::Phase,
    )
    .expect("phase code is valid")
}

/// `[[5,1]]` perfect code with cyclic generators, correcting any single-qubit error.
pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode::new(
        "five",
        paulis(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]),
        paulis(&["XXXXX"]),
        paulis(&["ZZZZZ"]),
        1,
        BurstKind::Colocated,
    )
    .expect("five-qubit code is valid")
}

/// Looks up a built-in code by name (`phase3` or `five`).
pub fn code_by_name(name: &str) -> Option<StabilizerCode> {
    match name.to_ascii_lowercase().as_str() {
        "phase3" | "phase" | "three" => Some(phase3_code()),
        "five" | "five_qubit" | "5" => Some(five_qubit_code()),
        _ => None,
    }
}

fn check_normalized<T: Real>(c0: Complex<T>, c1: Complex<T>) -> Result<()> {
    let norm_sqr = c0.norm_sqr() + c1.norm_sqr();
    if (norm_sqr - T::one()).abs() > T::tolerance() {
        return Err(Error::NotNormalized {
            norm_sqr: norm_sqr.to_f64_lossy(),
        });
    }
    Ok(())
}

/// `c0|C0> + c1|C1>` for the phase code, with both code words normalized.
pub fn encode_phase3<T: Real>(c0: Complex<T>, c1: Complex<T>) -> Result<StateVector<T>> {
    check_normalized(c0, c1)?;
    let half = T::from_f64_lossy(0.5);
    let mut amplitudes = vec![Complex::zero(); 8];
    for (index, amp) in amplitudes.iter_mut().enumerate() {
        let odd = (index as u32).count_ones() % 2 == 1;
        *amp = if odd { c1 } else { c0 } * half;
    }
    StateVector::from_amplitudes(3, amplitudes)
}

/// Encodes one logical qubit into `code` by projecting a basis state onto the
/// `+1` eigenspace of every generator and of the logical Z.
pub fn encode_logical<T: Real>(code: &StabilizerCode, c0: Complex<T>, c1: Complex<T>) -> Result<StateVector<T>> {
    check_normalized(c0, c1)?;
    if code.k() != 1 {
        return Err(Error::InvalidCode(format!(
            "logical encoding needs k = 1, code has k = {}",
            code.k()
        )));
    }
    let n = code.n();
    let half = T::from_f64_lossy(0.5);
    let projectors: Vec<&PauliString> = code.generators().iter().chain(code.logical_zs()).collect();
    let mut zero_word = None;
    for index in 0..(1usize << n) {
        let bits: Vec<bool> = (0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect();
        let mut amplitudes = StateVector::<T>::basis_state(n, &BinaryVector::from_bits(&bits)?)?
            .amplitudes()
            .to_vec();
        for p in &projectors {
            let flipped = StateVector::from_raw_parts(n, amplitudes.clone()).apply_hermitian_pauli(p)?;
            amplitudes = amplitudes
                .iter()
                .zip(flipped.amplitudes())
                .map(|(a, b)| (*a + *b) * half)
                .collect();
        }
        let norm_sqr = amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if norm_sqr > T::from_f64_lossy(1e-6) {
            zero_word = Some(StateVector::normalized(n, amplitudes)?);
            break;
        }
    }
    let zero_word = zero_word.ok_or_else(|| Error::InvalidCode("empty code space".into()))?;
    let one_word = zero_word.apply_hermitian_pauli(&code.logical_xs()[0])?;
    let amplitudes = zero_word
        .amplitudes()
        .iter()
        .zip(one_word.amplitudes())
        .map(|(a, b)| c0 * *a + c1 * *b)
        .collect();
    StateVector::from_amplitudes(n, amplitudes)
}

/// Tensor product of per-block encodings, block 0 on the lowest positions.
pub fn encode_blocks<T, F>(coeffs: &[(Complex<T>, Complex<T>)], encoder: F) -> Result<StateVector<T>>
where
    T: Real,
    F: Fn(Complex<T>, Complex<T>) -> Result<StateVector<T>>,
{
    let (first, rest) = coeffs.split_first().ok_or(Error::ZeroSize { n: 1, m: 0 })?;
    let mut state = encoder(first.0, first.1)?;
    for &(c0, c1) in rest {
        state = state.tensor(&encoder(c0, c1)?)?;
    }
    Ok(state)
}

/// Reads the syndrome of a Pauli-corrupted code state from generator eigenvalues.
pub fn extract_syndrome<T: Real>(code: &StabilizerCode, state: &StateVector<T>) -> Result<BinaryVector> {
    syndrome_from_eigenvalues(code.generators(), state)
}

/// Bit `i` is 1 when `state` is a `-1` eigenstate of `generators[i]`.
pub fn syndrome_from_eigenvalues<T: Real>(generators: &[PauliString], state: &StateVector<T>) -> Result<BinaryVector> {
    let mut s = BinaryVector::zeros(generators.len().max(1))?;
    for (i, g) in generators.iter().enumerate() {
        if state.stabilizer_eigenvalue(g)? == -1 {
            s.set(i, true);
        }
    }
    Ok(s)
}

/// Syndrome to recovery-operator lookup.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    entries: HashMap<BinaryVector, PauliString>,
}

impl SyndromeTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, syndrome: &BinaryVector) -> Option<&PauliString> {
        self.entries.get(syndrome)
    }

    /// Entries sorted by syndrome.
    pub fn entries(&self) -> Vec<(&BinaryVector, &PauliString)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort();
        v
    }

    /// Table for the code's declared correctable bursts.
    pub fn for_declared_ability(code: &StabilizerCode) -> Result<Self> {
        let errors = if code.burst_ability() == 0 {
            Vec::new()
        } else {
            enumerate_bursts(code.n(), code.burst_ability().min(code.n()), code.burst_kind())?
        };
        build_syndrome_table(code, &errors)
    }
}

/// Maps each error's syndrome to that error. The first error seen for a
/// syndrome is kept; later ones must differ from it by a stabilizer.
pub fn build_syndrome_table(code: &StabilizerCode, errors: &[PauliString]) -> Result<SyndromeTable> {
    let identity = PauliString::identity(code.n())?;
    let mut entries: HashMap<BinaryVector, PauliString> = HashMap::new();
    for e in std::iter::once(&identity).chain(errors) {
        let s = code.syndrome(e)?;
        match entries.get(&s) {
            Some(existing) => {
                if !code.in_stabilizer(&existing.multiply(e)?) {
                    return Err(Error::SyndromeCollision {
                        first: existing.to_string(),
                        second: e.to_string(),
                    });
                }
            }
            None => {
                entries.insert(s, e.clone());
            }
        }
    }
    Ok(SyndromeTable { entries })
}

/// Measures the syndrome and applies the tabulated recovery.
pub fn correct<T: Real>(code: &StabilizerCode, table: &SyndromeTable, state: &StateVector<T>) -> Result<StateVector<T>> {
    let s = extract_syndrome(code, state)?;
    let recovery = table.get(&s).ok_or_else(|| Error::UnknownSyndrome(s.to_string()))?;
    state.apply_pauli(recovery)
}

/// Interleaves `m` copies of `code`: block generators are embedded in block
/// order and pushed through the interleaving permutation.
pub fn interleaved_code(code: &StabilizerCode, m: usize) -> Result<StabilizerCode> {
    let n = code.n();
    let perm = interleave_permutation(n, m)?;
    let spread = |ops: &[PauliString]| -> Result<Vec<PauliString>> {
        let mut out = Vec::with_capacity(ops.len() * m);
        for block in 0..m {
            for op in ops {
                out.push(op.embed(n * m, block * n)?.permuted(&perm)?);
            }
        }
        Ok(out)
    };
    let name = if m == 1 {
        code.name().to_string()
    } else {
        format!("{}x{}", code.name(), m)
    };
    StabilizerCode::new(
        name,
        spread(code.generators())?,
        spread(code.logical_xs())?,
        spread(code.logical_zs())?,
        code.burst_ability() * m,
        code.burst_kind(),
    )
}

/// Per-error outcome of the correctability check.
#[derive(Debug, Clone)]
pub struct Correctability {
    /// Syndrome of each input error, in input order.
    pub syndromes: Vec<BinaryVector>,
    /// Whether each input error differs from its syndrome class representative by a stabilizer.
    pub consistent: Vec<bool>,
    /// Lexicographically smallest offending pair, if any.
    pub witness: Option<(PauliString, PauliString)>,
}

impl Correctability {
    pub fn is_correctable(&self) -> bool {
        self.witness.is_none()
    }
}

/// Per-bucket consistency flags and the bucket's smallest offending pair.
type BucketResult = (Vec<(usize, bool)>, Option<(PauliString, PauliString)>);

/// Checks the stabilizer error-correction condition on `errors ∪ {I}`.
///
/// Errors are bucketed by syndrome. Pairs across buckets anticommute with some
/// generator and are fine. Inside a bucket, equivalence modulo the stabilizer
/// is transitive, so every member is compared with the bucket's smallest member.
pub fn analyze_error_set(code: &StabilizerCode, errors: &[PauliString]) -> Result<Correctability> {
    let identity = PauliString::identity(code.n())?;
    let syndromes: Vec<BinaryVector> = errors
        .par_iter()
        .map(|e| code.syndrome(e))
        .collect::<Result<_>>()?;

    let mut buckets: HashMap<&BinaryVector, Vec<usize>> = HashMap::new();
    for (i, s) in syndromes.iter().enumerate() {
        buckets.entry(s).or_default().push(i);
    }
    let zero = code.syndrome(&identity)?;

    let results: Vec<BucketResult> = buckets
        .par_iter()
        .map(|(s, members)| {
            let mut rep = members
                .iter()
                .map(|&i| &errors[i])
                .min()
                .expect("buckets are nonempty");
            if **s == zero {
                rep = &identity;
            }
            let mut flags = Vec::with_capacity(members.len());
            let mut worst: Option<&PauliString> = None;
            for &i in members {
                let e = &errors[i];
                let ok = code.in_stabilizer(&rep.multiply(e).expect("sizes checked by syndrome"));
                flags.push((i, ok));
                if !ok && worst.is_none_or(|w| e < w) {
                    worst = Some(e);
                }
            }
            (flags, worst.map(|w| (rep.clone(), w.clone())))
        })
        .collect();

    let mut consistent = vec![true; errors.len()];
    let mut witness: Option<(PauliString, PauliString)> = None;
    for (flags, w) in results {
        for (i, ok) in flags {
            consistent[i] = ok;
        }
        if let Some(pair) = w {
            if witness.as_ref().is_none_or(|cur| pair < *cur) {
                witness = Some(pair);
            }
        }
    }
    Ok(Correctability {
        syndromes,
        consistent,
        witness,
    })
}

/// True when every pair from `errors ∪ {I}` is distinguishable or equivalent
/// modulo the stabilizer; otherwise the offending pair.
pub fn corrects_error_set(
    code: &StabilizerCode,
    errors: &[PauliString],
) -> Result<std::result::Result<(), (PauliString, PauliString)>> {
    Ok(match analyze_error_set(code, errors)?.witness {
        None => Ok(()),
        Some(pair) => Err(pair),
    })
}

/// Largest `l` such that every burst of length at most `l` is correctable.
pub fn burst_ability_measured(code: &StabilizerCode, kind: BurstKind) -> Result<usize> {
    for l in 1..=code.n() {
        let errors = enumerate_bursts(code.n(), l, kind)?;
        if !analyze_error_set(code, &errors)?.is_correctable() {
            return Ok(l - 1);
        }
    }
    Ok(code.n())
}
