//! Block interleaving as a qubit permutation, and its SWAP/CNOT realization.
//!
//! `m` code blocks of length `n` sit in row-major order (block `i` on positions
//! `i*n..(i+1)*n`). Interleaving transmits them column by column: symbol `j` of
//! block `i` goes to slot `j*m + i`. For `n == m` this is a matrix transpose and
//! therefore its own inverse.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::BinaryVector;

/// Bijection on `0..len()`; `images[i]` is where the element at `i` is sent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &i in &images {
            if i >= len || seen[i] {
                return Err(Error::NotAPermutation(len));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            images: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    /// `self` after `first`: `i -> self(first(i))`.
    pub fn compose(&self, first: &Permutation) -> Result<Self> {
        if self.len() != first.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: first.len(),
            });
        }
        Ok(Permutation {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Cycles of length at least 2, each starting at its smallest element,
    /// listed in order of that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut next = self.images[start];
            while next != start {
                visited[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Moves bit `i` to position `self(i)`.
    pub fn apply_to_vector(&self, v: &BinaryVector) -> Result<BinaryVector> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        let mut out = BinaryVector::zeros(v.len())?;
        for i in v.iter_ones() {
            out.set(self.images[i], true);
        }
        Ok(out)
    }

    /// Moves `items[i]` to slot `self(i)`.
    pub fn apply_to_slice<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: items.len(),
            });
        }
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.images[i]] = Some(item.clone());
        }
        Ok(out.into_iter().map(|x| x.expect("bijection fills every slot")).collect())
    }
}

/// The interleaver for `m` blocks of length `n`: `i*n + j -> j*m + i`.
pub fn interleave_permutation(n: usize, m: usize) -> Result<Permutation> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroSize { n, m });
    }
    let mut images = vec![0; n * m];
    for block in 0..m {
        for symbol in 0..n {
            images[block * n + symbol] = symbol * m + block;
        }
    }
    Ok(Permutation { images })
}

/// Positions occupied by block `block` after interleaving.
pub fn block_positions(n: usize, m: usize, block: usize) -> Vec<usize> {
    (0..n).map(|symbol| symbol * m + block).collect()
}

/// Largest per-block burst length after deinterleaving a transmitted-layout vector.
pub fn max_block_burst(n: usize, m: usize, transmitted: &BinaryVector) -> Result<usize> {
    let deinterleave = interleave_permutation(n, m)?.inverse();
    let blocks = deinterleave.apply_to_vector(transmitted)?;
    let mut worst = 0;
    for block in 0..m {
        worst = worst.max(blocks.slice(block * n, n)?.burst_length());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= width {
                return Err(Error::QubitOutOfRange { qubit: q, width });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedOperand(qubits[0]));
        }
        Ok(())
    }

    /// `SWAP(a, b)` as `CNOT(a, b) CNOT(b, a) CNOT(a, b)`; other gates unchanged.
    pub fn expand(&self) -> Vec<Gate> {
        match *self {
            Gate::Swap(a, b) => vec![
                Gate::Cnot { control: a, target: b },
                Gate::Cnot { control: b, target: a },
                Gate::Cnot { control: a, target: b },
            ],
            g => vec![g],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Swap(a, b) => write!(f, "SWAP {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn swap_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Swap(..))).count()
    }

    /// CNOTs after expanding every SWAP into three.
    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::Swap(..) => 3,
                Gate::Cnot { .. } => 1,
                Gate::H(_) => 0,
            })
            .sum()
    }

    pub fn expanded(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().flat_map(Gate::expand).collect(),
        }
    }

    /// Net relabeling performed by the SWAPs; `None` if any other gate is present.
    pub fn swap_permutation(&self) -> Option<Permutation> {
        // position[q] = current location of the content that started on q
        let mut holder: Vec<usize> = (0..self.width).collect();
        for gate in &self.gates {
            match *gate {
                Gate::Swap(a, b) => holder.swap(a, b),
                _ => return None,
            }
        }
        let mut images = vec![0; self.width];
        for (slot, &origin) in holder.iter().enumerate() {
            images[origin] = slot;
        }
        Some(Permutation { images })
    }

    /// Plain text: header `qubits N`, then one gate per line, LF-terminated.
    pub fn to_plain(&self, expand_swaps: bool) -> String {
        let mut out = format!("qubits {}\n", self.width);
        let circuit = if expand_swaps { self.expanded() } else { self.clone() };
        for g in &circuit.gates {
            writeln!(out, "{g}").expect("writing to a String cannot fail");
        }
        out
    }

    /// QASM 2 listing using `cx` (and `h`); SWAPs are always expanded.
    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        writeln!(out, "qreg q[{}];", self.width).expect("writing to a String cannot fail");
        for g in self.expanded().gates {
            match g {
                Gate::H(q) => writeln!(out, "h q[{q}];"),
                Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
                Gate::Swap(..) => unreachable!("expanded circuits contain no swaps"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn export(&self, format: CircuitFormat, expand_swaps: bool) -> String {
        match format {
            CircuitFormat::Plain => self.to_plain(expand_swaps),
            CircuitFormat::Qasm => self.to_qasm(),
        }
    }

    pub fn parse_plain(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let width = header
            .strip_prefix("qubits ")
            .and_then(|w| w.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `qubits N`, found {header:?}"),
            })?;
        let mut circuit = Circuit::new(width);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let operand = |k: usize| -> Result<usize> {
                fields
                    .get(k)
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| parse_err(format!("bad operand in {line:?}")))
            };
            let gate = match (fields.first().copied(), fields.len()) {
                (Some("H"), 2) => Gate::H(operand(1)?),
                (Some("CNOT"), 3) => Gate::Cnot {
                    control: operand(1)?,
                    target: operand(2)?,
                },
                (Some("SWAP"), 3) => Gate::Swap(operand(1)?, operand(2)?),
                _ => return Err(parse_err(format!("unrecognized gate line {line:?}"))),
            };
            circuit.push(gate).map_err(|e| parse_err(e.to_string()))?;
        }
        Ok(circuit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircuitFormat {
    Plain,
    Qasm,
}

impl FromStr for CircuitFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(CircuitFormat::Plain),
            "qasm" => Ok(CircuitFormat::Qasm),
            other => Err(format!("unknown circuit format {other:?} (expected plain or qasm)")),
        }
    }
}

/// SWAP network realizing `perm` via cycle decomposition.
///
/// A cycle `(c0 c1 .. ck-1)` with `perm(c_t) = c_{t+1}` becomes
/// `SWAP(c_{k-2}, c_{k-1}), .., SWAP(c0, c1)`, applied in that order.
pub fn synthesize_swap_network(perm: &Permutation) -> Circuit {
    let mut circuit = Circuit::new(perm.len());
    for cycle in perm.cycles() {
        for t in (0..cycle.len() - 1).rev() {
            circuit.gates.push(Gate::Swap(cycle[t], cycle[t + 1]));
        }
    }
    circuit
}

/// CNOT count of a circuit with SWAPs counted as three CNOTs.
pub fn cnot_count(circuit: &Circuit) -> usize {
    circuit.cnot_count()
}

/// Closed-form CNOT count of the square interleaver, `3n(n-1)/2`.
pub fn square_interleaver_cnots(n: usize) -> usize {
    3 * n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleave_examples() {
        let p = interleave_permutation(3, 3).unwrap();
        assert_eq!(p.image(1), 3);
        let block0: Vec<usize> = (0..3).map(|j| p.image(j)).collect();
        assert_eq!(block0, vec![0, 3, 6]);
        assert!(interleave_permutation(1, 1).unwrap().is_identity());
        assert_eq!(interleave_permutation(0, 3), Err(Error::ZeroSize { n: 0, m: 3 }));
    }

    #[test]
    fn interleave_matches_array_readout() {
        // rows are blocks; transmission reads the array column by column
        for n in 1..=6 {
            for m in 1..=6 {
                let array: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
                let mut transmitted = Vec::new();
                for j in 0..n {
                    for row in &array {
                        transmitted.push(row[j]);
                    }
                }
                let p = interleave_permutation(n, m).unwrap();
                for (slot, &origin) in transmitted.iter().enumerate() {
                    assert_eq!(p.image(origin), slot);
                }
            }
        }
        let p = interleave_permutation(5, 5).unwrap();
        assert_eq!(
            (0..5).map(|j| p.image(j)).collect::<Vec<_>>(),
            vec![0, 5, 10, 15, 20]
        );
        assert_eq!(block_positions(5, 5, 0), vec![0, 5, 10, 15, 20]);
    }

    #[test]
    fn inverse_examples() {
        let p33 = interleave_permutation(3, 3).unwrap();
        assert_eq!(p33.inverse(), p33);
        assert!(Permutation::identity(4).inverse().is_identity());
        let p23 = interleave_permutation(2, 3).unwrap();
        let inv = p23.inverse();
        assert!(inv.compose(&p23).unwrap().is_identity());
        assert!(p23.compose(&inv).unwrap().is_identity());
        assert_eq!(inv, interleave_permutation(3, 2).unwrap());
    }

    #[test]
    fn inverse_is_involution() {
        for n in 1..=8 {
            for m in 1..=8 {
                let p = interleave_permutation(n, m).unwrap();
                assert_eq!(p.inverse().inverse(), p);
                assert!(p.inverse().compose(&p).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert_eq!(Permutation::new(vec![0, 0]), Err(Error::NotAPermutation(2)));
        assert_eq!(Permutation::new(vec![0, 2]), Err(Error::NotAPermutation(2)));
    }

    #[test]
    fn synthesis_examples() {
        let c = synthesize_swap_network(&interleave_permutation(3, 3).unwrap());
        assert_eq!(c.gates(), &[Gate::Swap(1, 3), Gate::Swap(2, 6), Gate::Swap(5, 7)]);
        assert!(synthesize_swap_network(&Permutation::identity(5)).is_empty());
        let c55 = synthesize_swap_network(&interleave_permutation(5, 5).unwrap());
        assert_eq!(c55.swap_count(), 10);
        assert_eq!(cnot_count(&c55), 30);
    }

    #[test]
    fn synthesized_relabeling_matches_permutation() {
        for n in 1..=8 {
            for m in 1..=8 {
                let p = interleave_permutation(n, m).unwrap();
                let c = synthesize_swap_network(&p);
                assert_eq!(c.swap_permutation().unwrap(), p, "{n}x{m}");
            }
        }
        let p = Permutation::new(vec![2, 0, 3, 1, 4]).unwrap();
        let c = synthesize_swap_network(&p);
        assert_eq!(c.swap_count(), 3);
        assert_eq!(c.swap_permutation().unwrap(), p);
    }

    #[test]
    fn cnot_count_bounds() {
        for n in 1..=8 {
            let c = synthesize_swap_network(&interleave_permutation(n, n).unwrap());
            assert_eq!(cnot_count(&c), square_interleaver_cnots(n));
            for m in 1..=8 {
                let c = synthesize_swap_network(&interleave_permutation(n, m).unwrap());
                assert!(cnot_count(&c) <= 3 * (n * m - 1));
            }
        }
        assert_eq!(square_interleaver_cnots(3), 9);
        assert_eq!(square_interleaver_cnots(1), 0);
    }

    #[test]
    fn plain_export() {
        assert_eq!(Circuit::new(4).to_plain(false), "qubits 4\n");
        let mut swap = Circuit::new(2);
        swap.push(Gate::Swap(0, 1)).unwrap();
        assert_eq!(swap.to_plain(false), "qubits 2\nSWAP 0 1\n");
        assert_eq!(swap.to_plain(true), "qubits 2\nCNOT 0 1\nCNOT 1 0\nCNOT 0 1\n");
    }

    #[test]
    fn plain_round_trip() {
        let c = synthesize_swap_network(&interleave_permutation(3, 3).unwrap());
        assert_eq!(Circuit::parse_plain(&c.to_plain(false)).unwrap(), c);
        let expanded = c.expanded();
        assert_eq!(Circuit::parse_plain(&c.to_plain(true)).unwrap(), expanded);
        let mut mixed = Circuit::new(3);
        mixed.push(Gate::H(2)).unwrap();
        mixed.push(Gate::Cnot { control: 2, target: 0 }).unwrap();
        assert_eq!(Circuit::parse_plain(&mixed.to_plain(false)).unwrap(), mixed);
    }

    #[test]
    fn plain_parse_errors() {
        assert!(Circuit::parse_plain("").is_err());
        assert!(Circuit::parse_plain("qubits x\n").is_err());
        assert!(matches!(
            Circuit::parse_plain("qubits 2\nSWAP 0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Circuit::parse_plain("qubits 2\nCNOT 1 1\n").is_err());
        assert!(Circuit::parse_plain("qubits 2\nTOFFOLI 0 1\n").is_err());
    }

    #[test]
    fn qasm_export() {
        let mut swap = Circuit::new(2);
        swap.push(Gate::Swap(0, 1)).unwrap();
        swap.push(Gate::H(1)).unwrap();
        assert_eq!(
            swap.to_qasm(),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\nh q[1];\n"
        );
    }

    #[test]
    fn gate_validation() {
        let mut c = Circuit::new(2);
        assert_eq!(c.push(Gate::H(2)), Err(Error::QubitOutOfRange { qubit: 2, width: 2 }));
        assert_eq!(
            c.push(Gate::Cnot { control: 1, target: 1 }),
            Err(Error::RepeatedOperand(1))
        );
    }

    #[test]
    fn burst_spreading_exhaustive_small() {
        // every vector on nm <= 16 positions: a burst of length L spreads to at most ceil(L/m) per block
        for n in 1..=8usize {
            for m in 1..=8usize {
                if n * m > 16 {
                    continue;
                }
                let len = n * m;
                for w in 1u32..(1 << len) {
                    let bits: Vec<bool> = (0..len).map(|i| (w >> i) & 1 == 1).collect();
                    let v = BinaryVector::from_bits(&bits).unwrap();
                    let bound = v.burst_length().div_ceil(m);
                    assert!(max_block_burst(n, m, &v).unwrap() <= bound, "{n}x{m} {v}");
                }
            }
        }
    }
}
