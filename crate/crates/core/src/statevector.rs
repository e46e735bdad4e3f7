//! Dense state-vector simulator for small registers.
//!
//! Endianness: qubit 0 is the leftmost symbol of a ket label and the most
//! significant bit of the amplitude index, so `|b0 b1 .. b(n-1)>` lives at
//! index `sum b_q * 2^(n-1-q)`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interleaver::{Circuit, Gate, Permutation};
use crate::pauli::{BinaryVector, PauliString};
use crate::scalar::Real;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real = f64> {
    n: usize,
    amplitudes: Vec<Complex<T>>,
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::RegisterSize { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// Bit of the amplitude index that carries qubit `q`.
#[inline]
fn qubit_bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Converts a qubit mask into an amplitude-index mask.
fn index_mask(n: usize, v: &BinaryVector) -> usize {
    v.iter_ones().fold(0, |acc, q| acc | qubit_bit(n, q))
}

impl<T: Real> StateVector<T> {
    /// `|label>`.
    pub fn basis_state(n: usize, label: &BinaryVector) -> Result<Self> {
        check_size(n)?;
        if label.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: label.len(),
            });
        }
        let mut amplitudes = vec![Complex::zero(); 1 << n];
        amplitudes[index_mask(n, label)] = Complex::one();
        Ok(StateVector { n, amplitudes })
    }

    pub fn zero_state(n: usize) -> Result<Self> {
        Self::basis_state(n, &BinaryVector::zeros(n.max(1))?)
    }

    /// Wraps raw amplitudes, which must already be normalized.
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_size(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let s = StateVector { n, amplitudes };
        let norm_sqr = s.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::tolerance() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(s)
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(n: usize, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_size(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        if norm <= T::tolerance() {
            return Err(Error::NotNormalized {
                norm_sqr: (norm * norm).to_f64_lossy(),
            });
        }
        for a in &mut amplitudes {
            *a = *a / norm;
        }
        Ok(StateVector { n, amplitudes })
    }

    // Unchecked constructor for intermediate, possibly unnormalized vectors.
    pub(crate) fn from_raw_parts(n: usize, amplitudes: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        StateVector { n, amplitudes }
    }

    /// Single-qubit state `c0|0> + c1|1>`.
    pub fn qubit(c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        Self::from_amplitudes(1, vec![c0, c1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &BinaryVector) -> Complex<T> {
        self.amplitudes[index_mask(self.n, label)]
    }

    /// Ket label of an amplitude index, qubit 0 first.
    pub fn label_of(&self, index: usize) -> String {
        (0..self.n)
            .map(|q| if index & qubit_bit(self.n, q) != 0 { '1' } else { '0' })
            .collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b)
    }

    fn check_same(&self, other_n: usize) -> Result<()> {
        if self.n != other_n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other_n,
            });
        }
        Ok(())
    }

    /// `self ⊗ other`, with `self` on the lower-numbered qubits.
    pub fn tensor(&self, other: &StateVector<T>) -> Result<Self> {
        let n = self.n + other.n;
        check_size(n)?;
        let mut amplitudes = Vec::with_capacity(1 << n);
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(*a * *b);
            }
        }
        Ok(StateVector { n, amplitudes })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_same(other.n)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector<T>) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `Z_z` first, then `X_x`: `new[i ^ x] = (-1)^(i.z) old[i]`.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        self.check_same(p.n())?;
        let x = index_mask(self.n, p.x_mask());
        let z = index_mask(self.n, p.z_mask());
        let mut amplitudes = vec![Complex::zero(); self.amplitudes.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            amplitudes[i ^ x] = if (i & z).count_ones() % 2 == 1 { -*a } else { *a };
        }
        Ok(StateVector { n: self.n, amplitudes })
    }

    /// Applies the Hermitian form `i^{#Y} X_x Z_z` of `p`, which squares to the identity.
    pub fn apply_hermitian_pauli(&self, p: &PauliString) -> Result<Self> {
        let mut out = self.apply_pauli(p)?;
        let phase = match p.y_count() % 4 {
            0 => Complex::one(),
            1 => Complex::i(),
            2 => -Complex::<T>::one(),
            _ => -Complex::<T>::i(),
        };
        if !p.y_count().is_multiple_of(4) {
            for a in &mut out.amplitudes {
                *a = *a * phase;
            }
        }
        Ok(out)
    }

    pub fn apply_gate(&self, gate: &Gate) -> Result<Self> {
        gate.validate(self.n)?;
        let mut out = self.clone();
        match *gate {
            Gate::H(q) => {
                let bit = qubit_bit(self.n, q);
                let h = T::FRAC_1_SQRT_2();
                for i in 0..out.amplitudes.len() {
                    if i & bit == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | bit];
                        out.amplitudes[i] = (a + b) * h;
                        out.amplitudes[i | bit] = (a - b) * h;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let c = qubit_bit(self.n, control);
                let t = qubit_bit(self.n, target);
                for i in 0..out.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        out.amplitudes.swap(i, i | t);
                    }
                }
            }
            Gate::Swap(a, b) => {
                let ba = qubit_bit(self.n, a);
                let bb = qubit_bit(self.n, b);
                for i in 0..out.amplitudes.len() {
                    if i & ba != 0 && i & bb == 0 {
                        out.amplitudes.swap(i, (i & !ba) | bb);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply_circuit(&self, circuit: &Circuit) -> Result<Self> {
        self.check_same(circuit.width())?;
        let mut out = self.clone();
        for g in circuit.gates() {
            out = out.apply_gate(g)?;
        }
        Ok(out)
    }

    /// Moves the qubit at position `i` to position `perm(i)`.
    pub fn apply_qubit_permutation(&self, perm: &Permutation) -> Result<Self> {
        self.check_same(perm.len())?;
        let n = self.n;
        let from: Vec<usize> = (0..n).map(|q| qubit_bit(n, q)).collect();
        let to: Vec<usize> = (0..n).map(|q| qubit_bit(n, perm.image(q))).collect();
        let mut amplitudes = vec![Complex::zero(); self.amplitudes.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let mut j = 0;
            for q in 0..n {
                if i & from[q] != 0 {
                    j |= to[q];
                }
            }
            amplitudes[j] = *a;
        }
        Ok(StateVector { n, amplitudes })
    }

    /// `<self| P |self>` for the Hermitian form of `p`.
    pub fn expectation(&self, p: &PauliString) -> Result<Complex<T>> {
        self.inner(&self.apply_hermitian_pauli(p)?)
    }

    /// Eigenvalue (+1 or -1) of `p` on a state that is one of its eigenstates.
    pub fn stabilizer_eigenvalue(&self, p: &PauliString) -> Result<i8> {
        let e = self.expectation(p)?;
        let re = e.re;
        let tol = T::eigen_tolerance();
        if (re.abs() - T::one()).abs() > tol || e.im.abs() > tol {
            return Err(Error::Indeterminate {
                pauli: p.to_string(),
                expectation: re.to_f64_lossy(),
            });
        }
        Ok(if re > T::zero() { 1 } else { -1 })
    }

    /// Labels and amplitudes of the entries with magnitude above `threshold`.
    pub fn nonzero_terms(&self, threshold: T) -> Vec<(String, Complex<T>)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > threshold)
            .map(|(i, a)| (self.label_of(i), *a))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interleaver::{interleave_permutation, synthesize_swap_network};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn bv(s: &str) -> BinaryVector {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn random_state(n: usize, rng: &mut impl Rng) -> StateVector<f64> {
        let amps = (0..1 << n)
            .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        StateVector::normalized(n, amps).unwrap()
    }

    fn close(a: &StateVector<f64>, b: &StateVector<f64>) -> bool {
        a.n() == b.n()
            && a
                .amplitudes()
                .iter()
                .zip(b.amplitudes())
                .all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn basis_state_examples() {
        let s = StateVector::<f64>::basis_state(3, &bv("000")).unwrap();
        assert_eq!(s.amplitudes()[0], C::one());
        let one = StateVector::<f64>::basis_state(1, &bv("1")).unwrap();
        assert_eq!(one.amplitudes(), &[C::zero(), C::one()]);
        let s10 = StateVector::<f64>::basis_state(2, &bv("10")).unwrap();
        assert_eq!(s10.amplitudes()[2], C::one());
        assert_eq!(s10.label_of(2), "10");
        assert!(StateVector::<f64>::basis_state(2, &bv("101")).is_err());
        assert!(StateVector::<f64>::basis_state(27, &BinaryVector::zeros(27).unwrap()).is_err());
    }

    #[test]
    fn tensor_examples() {
        let zero = StateVector::<f64>::basis_state(1, &bv("0")).unwrap();
        let one = StateVector::<f64>::basis_state(1, &bv("1")).unwrap();
        let t = zero.tensor(&one).unwrap();
        assert_eq!(t, StateVector::basis_state(2, &bv("01")).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = random_state(3, &mut rng);
        let ext = phi.tensor(&zero).unwrap();
        assert!((ext.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((ext.fidelity(&phi.tensor(&zero).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let big = StateVector::<f64>::zero_state(20).unwrap();
        assert!(big.tensor(&StateVector::zero_state(7).unwrap()).is_err());
    }

    #[test]
    fn pauli_examples() {
        let zero = StateVector::<f64>::basis_state(1, &bv("0")).unwrap();
        assert_eq!(
            zero.apply_pauli(&ps("X")).unwrap(),
            StateVector::basis_state(1, &bv("1")).unwrap()
        );
        let s11 = StateVector::<f64>::basis_state(2, &bv("11")).unwrap();
        let zz = s11.apply_pauli(&ps("ZZ")).unwrap();
        // diag(1,-1) ⊗ diag(1,-1) at |11> is (+1)
        let zz_matrix = [1.0, -1.0, -1.0, 1.0];
        assert_eq!(zz.amplitudes()[3], C::new(zz_matrix[3], 0.0));
        assert!(zero.apply_pauli(&ps("XX")).is_err());
    }

    #[test]
    fn pauli_order_is_z_then_x() {
        // X Z |0> = |1>, X Z |1> = -|0>
        let zero = StateVector::<f64>::basis_state(1, &bv("0")).unwrap();
        let one = StateVector::<f64>::basis_state(1, &bv("1")).unwrap();
        assert_eq!(zero.apply_pauli(&ps("Y")).unwrap().amplitudes(), &[C::zero(), C::one()]);
        assert_eq!(one.apply_pauli(&ps("Y")).unwrap().amplitudes(), &[-C::one(), C::zero()]);
        // Hermitian Y |0> = i|1>
        assert_eq!(
            zero.apply_hermitian_pauli(&ps("Y")).unwrap().amplitudes(),
            &[C::zero(), C::i()]
        );
    }

    #[test]
    fn gate_examples() {
        let s10 = StateVector::<f64>::basis_state(2, &bv("10")).unwrap();
        let out = s10.apply_gate(&Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(out, StateVector::basis_state(2, &bv("11")).unwrap());
        let zero = StateVector::<f64>::zero_state(1).unwrap();
        let plus = zero.apply_gate(&Gate::H(0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((plus.amplitudes()[0].re - h).abs() < 1e-15);
        assert!((plus.amplitudes()[1].re - h).abs() < 1e-15);
        assert!(s10.apply_gate(&Gate::H(2)).is_err());
        assert!(s10.apply_gate(&Gate::Cnot { control: 0, target: 0 }).is_err());
    }

    #[test]
    fn three_cnots_exchange_two_qubits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let psi = random_state(1, &mut rng);
            let chi = random_state(1, &mut rng);
            let start = psi.tensor(&chi).unwrap();
            let mut s = start.clone();
            for g in Gate::Swap(0, 1).expand() {
                s = s.apply_gate(&g).unwrap();
            }
            assert!(close(&s, &chi.tensor(&psi).unwrap()));
        }
    }

    #[test]
    fn swap_equals_three_cnots_on_basis_states() {
        for n in 2..=6usize {
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    for idx in 0u32..(1 << n) {
                        let bits: Vec<bool> = (0..n).map(|q| (idx >> q) & 1 == 1).collect();
                        let s = StateVector::<f64>::basis_state(n, &BinaryVector::from_bits(&bits).unwrap()).unwrap();
                        let direct = s.apply_gate(&Gate::Swap(a, b)).unwrap();
                        let mut via = s.clone();
                        for g in Gate::Swap(a, b).expand() {
                            via = via.apply_gate(&g).unwrap();
                        }
                        assert_eq!(direct, via);
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_state(4, &mut rng);
        assert_eq!(s.apply_qubit_permutation(&Permutation::identity(4)).unwrap(), s);
        // qubit 0 carries |1>, moved to position 2
        let b = StateVector::<f64>::basis_state(3, &bv("100")).unwrap();
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(
            b.apply_qubit_permutation(&p).unwrap(),
            StateVector::basis_state(3, &bv("001")).unwrap()
        );
        assert!(s.apply_qubit_permutation(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn swap_network_matches_permutation_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, m) in [(2, 3), (3, 3), (2, 5), (4, 3)] {
            let p = interleave_permutation(n, m).unwrap();
            let c = synthesize_swap_network(&p);
            let s = random_state(n * m, &mut rng);
            let direct = s.apply_qubit_permutation(&p).unwrap();
            assert!(close(&direct, &s.apply_circuit(&c).unwrap()));
            assert!(close(&direct, &s.apply_circuit(&c.expanded()).unwrap()));
        }
    }

    #[test]
    fn fidelity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_state(3, &mut rng);
        assert!((s.fidelity(&s).unwrap() - 1.0).abs() < 1e-12);
        let zero = StateVector::<f64>::basis_state(1, &bv("0")).unwrap();
        let one = StateVector::<f64>::basis_state(1, &bv("1")).unwrap();
        assert_eq!(zero.fidelity(&one).unwrap(), 0.0);
        assert!(zero.fidelity(&s).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = random_state(3, &mut rng);
        assert_eq!(s.stabilizer_eigenvalue(&PauliString::identity(3).unwrap()).unwrap(), 1);
        assert!(matches!(
            s.stabilizer_eigenvalue(&ps("XXI")),
            Err(Error::Indeterminate { .. })
        ));
        let minus = StateVector::<f64>::basis_state(1, &bv("1")).unwrap();
        assert_eq!(minus.stabilizer_eigenvalue(&ps("Z")).unwrap(), -1);
        let plus_i = StateVector::<f64>::qubit(
            C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            C::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
        )
        .unwrap();
        assert_eq!(plus_i.stabilizer_eigenvalue(&ps("Y")).unwrap(), 1);
    }

    #[test]
    fn norm_preservation_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let n = rng.gen_range(1..=10);
            let s = random_state(n, &mut rng);
            let mut p = PauliString::identity(n).unwrap();
            for q in 0..n {
                p.set(q, crate::pauli::Pauli::ALL[rng.gen_range(0..4)]);
            }
            let e = s.apply_pauli(&p).unwrap();
            assert!((e.norm_sqr() - 1.0).abs() < 1e-12);
            assert!((e.apply_pauli(&p).unwrap().fidelity(&s).unwrap() - 1.0).abs() < 1e-12);
            let q = rng.gen_range(0..n);
            let h = s.apply_gate(&Gate::H(q)).unwrap();
            assert!((h.norm_sqr() - 1.0).abs() < 1e-12);
            if n >= 2 {
                let t = (q + 1) % n;
                for g in [Gate::Cnot { control: q, target: t }, Gate::Swap(q, t)] {
                    assert!((s.apply_gate(&g).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn permutation_inverse_and_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let n = rng.gen_range(1..=10);
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let perm = Permutation::new(images).unwrap();
            let s = random_state(n, &mut rng);
            let back = s
                .apply_qubit_permutation(&perm)
                .unwrap()
                .apply_qubit_permutation(&perm.inverse())
                .unwrap();
            assert!(close(&back, &s));

            let mut p = PauliString::identity(n).unwrap();
            for q in 0..n {
                p.set(q, crate::pauli::Pauli::ALL[rng.gen_range(0..4)]);
            }
            let lhs = s.apply_pauli(&p).unwrap().apply_qubit_permutation(&perm).unwrap();
            let rhs = s
                .apply_qubit_permutation(&perm)
                .unwrap()
                .apply_pauli(&p.permuted(&perm).unwrap())
                .unwrap();
            assert!(close(&lhs, &rhs));
        }
    }

    #[test]
    fn single_precision_works() {
        let s = StateVector::<f32>::zero_state(2).unwrap();
        let bell = s
            .apply_gate(&Gate::H(0))
            .unwrap()
            .apply_gate(&Gate::Cnot { control: 0, target: 1 })
            .unwrap();
        assert_eq!(bell.stabilizer_eigenvalue(&ps("XX")).unwrap(), 1);
        assert_eq!(bell.stabilizer_eigenvalue(&ps("ZZ")).unwrap(), 1);
        assert!((bell.norm_sqr() - 1.0).abs() < f32::tolerance());
    }
}
