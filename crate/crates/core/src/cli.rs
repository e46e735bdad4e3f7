//! Report-producing front ends behind the `qinterleave` binary.
//!
//! Every command returns a [`Report`]; the verdict is `pass` exactly when every
//! item passed. Positions appear 0-based in machine fields and 1-based in the
//! text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::channel::{apply_branches, BranchSet};
use crate::codes::{analyze_error_set, code_by_name, interleaved_code, phase3_code};
use crate::error::{Error, Result};
use crate::interleaver::{
    interleave_permutation, square_interleaver_cnots, synthesize_swap_network, Circuit, CircuitFormat,
};
use crate::pauli::{enumerate_bursts, BinaryVector, BurstKind, PauliString};
use crate::pipeline::{BlockOutcome, InterleavedPipeline};
use crate::statevector::StateVector;
use crate::Complex64;

/// Largest register on which `synth` checks every basis state.
pub const EXHAUSTIVE_SYNTH_QUBITS: usize = 12;

/// Text rendering lists every item only up to this many.
const TEXT_ITEM_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?} (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Statevector,
    Stabilizer,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Statevector => "statevector",
            Method::Stabilizer => "stabilizer",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "statevector" | "state" | "sv" => Ok(Method::Statevector),
            "stabilizer" | "stab" => Ok(Method::Stabilizer),
            other => Err(format!("unknown method {other:?} (expected statevector or stabilizer)")),
        }
    }
}

/// One checked entry of a report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub label: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burst: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions_1based: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_positions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_positions_1based: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syndromes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<(String, f64, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportItem {
    pub fn new(label: impl Into<String>, pass: bool) -> Self {
        ReportItem {
            label: label.into(),
            pass,
            ..Default::default()
        }
    }

    fn with_burst(mut self, p: &PauliString) -> Self {
        self.burst = Some(p.to_string());
        self.positions = Some(p.support());
        self.positions_1based = Some(p.support_one_based());
        self
    }

    fn with_residual(mut self, p: &PauliString) -> Self {
        self.residual = Some(p.to_string());
        self.residual_positions = Some(p.support());
        self.residual_positions_1based = Some(p.support_one_based());
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub items: Vec<ReportItem>,
    pub summary: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub verdict: Verdict,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            parameters: BTreeMap::new(),
            items: Vec::new(),
            summary: BTreeMap::new(),
            witness: None,
            verdict: Verdict::Pass,
            elapsed_ms: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) {
        self.summary
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    fn finish(mut self, started: Instant) -> Self {
        self.verdict = if self.items.iter().all(|i| i.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let passed = self.items.iter().filter(|i| i.pass).count();
        self.summarize("items", self.items.len());
        self.summarize("passed", passed);
        self.summarize("failed", self.items.len() - passed);
        self.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Human-readable rendering; omits timing so output is reproducible.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "command: {}", self.command).ok();
        for (k, v) in &self.parameters {
            writeln!(w, "  {k} = {}", plain_value(v)).ok();
        }
        let failing = self.items.iter().filter(|i| !i.pass).count();
        let show_all = self.items.len() <= TEXT_ITEM_LIMIT;
        for item in &self.items {
            if show_all || !item.pass {
                writeln!(w, "{}", render_item(item)).ok();
            }
        }
        if !show_all {
            writeln!(
                w,
                "({} passing items not shown; use --format json for the full list)",
                self.items.len() - failing
            )
            .ok();
        }
        for (k, v) in &self.summary {
            writeln!(w, "{k}: {}", plain_value(v)).ok();
        }
        if let Some(witness) = &self.witness {
            writeln!(w, "witness: {witness}").ok();
        }
        writeln!(
            w,
            "verdict: {}",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }
        )
        .ok();
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn render_item(item: &ReportItem) -> String {
    let mut line = format!("[{}] {}", if item.pass { "pass" } else { "FAIL" }, item.label);
    if let (Some(b), Some(p)) = (&item.burst, &item.positions_1based) {
        write!(line, " | error {b} at {{{}}}", join(p)).ok();
    }
    if let (Some(r), Some(p)) = (&item.residual, &item.residual_positions_1based) {
        write!(line, " | deinterleaved {r} at {{{}}}", join(p)).ok();
    }
    if let Some(s) = &item.syndromes {
        write!(line, " | syndromes {}", s.join(" ")).ok();
    }
    if let Some(f) = item.fidelity {
        write!(line, " | fidelity {f:.12}").ok();
    }
    if let Some(d) = &item.detail {
        write!(line, " | {d}").ok();
    }
    if let Some(amps) = &item.amplitudes {
        for (label, re, im) in amps {
            write!(line, "\n      |{label}> {re:+.6} {im:+.6}i").ok();
        }
    }
    line
}

/// Fixed logical states, none of them an eigenstate of X, Y or Z, so every
/// logical Pauli error lowers the fidelity.
pub fn default_coefficients(m: usize) -> Vec<(Complex64, Complex64)> {
    let theta = (1.0f64 / 3f64.sqrt()).acos();
    (0..m)
        .map(|t| {
            let phi = (2 * (t % 4) + 1) as f64 * std::f64::consts::FRAC_PI_4;
            (
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            )
        })
        .collect()
}

/// Uniformly random single-qubit logical states from a seed.
pub fn random_coefficients(seed: u64, m: usize) -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
            let half = cos_theta.acos() / 2.0;
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let global: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            (
                Complex64::from_polar(half.cos(), global),
                Complex64::from_polar(half.sin(), global + phi),
            )
        })
        .collect()
}

fn format_coefficients(coeffs: &[(Complex64, Complex64)]) -> Vec<String> {
    coeffs
        .iter()
        .map(|(a, b)| format!("({:.6}{:+.6}i, {:.6}{:+.6}i)", a.re, a.im, b.re, b.im))
        .collect()
}

fn outcome_item(label: String, error: &PauliString, outcome: &BlockOutcome<f64>) -> ReportItem {
    let mut item = ReportItem::new(label, outcome.is_success())
        .with_burst(error)
        .with_residual(&outcome.residual);
    item.syndromes = Some(outcome.syndromes.iter().map(ToString::to_string).collect());
    item.fidelity = Some(outcome.fidelity);
    let recoveries: Vec<String> = outcome
        .recoveries
        .iter()
        .map(|r| r.as_ref().map_or_else(|| "unknown-syndrome".to_string(), ToString::to_string))
        .collect();
    item.with_detail(format!("recoveries {}", recoveries.join(" ")))
}

/// The two-branch burst used by the worked example: `Z` on positions 1-3 and 6-8 (1-based).
pub fn demo_branches() -> BranchSet {
    BranchSet::parse("ZZZIIIIII,IIIIIZZZI").expect("demo branches are well formed")
}

#[derive(Debug, Clone, Default)]
pub struct DemoOptions {
    pub coefficients: Option<Vec<(Complex64, Complex64)>>,
    pub seed: Option<u64>,
    pub branches: Option<BranchSet>,
}

/// Three phase-code blocks: encode, interleave, apply the branch set,
/// deinterleave, then correct each block.
pub fn run_demo(options: &DemoOptions) -> Result<Report> {
    let started = Instant::now();
    let m = 3;
    let pipeline = InterleavedPipeline::new(&phase3_code(), m)?;
    let coeffs = match (&options.coefficients, options.seed) {
        (Some(c), _) => c.clone(),
        (None, Some(seed)) => random_coefficients(seed, m),
        (None, None) => default_coefficients(m),
    };
    let branches = options.branches.clone().unwrap_or_else(demo_branches);

    let mut command = String::from("demo");
    if let Some(seed) = options.seed {
        write!(command, " --seed {seed}").ok();
    }
    if options.branches.is_some() {
        let list: Vec<String> = branches.branches().iter().map(|b| b.pauli.to_string()).collect();
        write!(command, " --branches {}", list.join(",")).ok();
    }
    let mut report = Report::new(command);
    report.param("code", "phase3");
    report.param("degree", m);
    report.param("coefficients", format_coefficients(&coeffs));
    report.param("seed", options.seed);
    report.param(
        "branches",
        branches.branches().iter().map(|b| b.pauli.to_string()).collect::<Vec<_>>(),
    );

    let input: StateVector<f64> = pipeline.encode(&coeffs)?;
    let interleaved = pipeline.interleave(&input)?;

    let big = interleaved_code(pipeline.code(), m)?;
    let stabilized = big
        .generators()
        .iter()
        .map(|g| interleaved.stabilizer_eigenvalue(g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|e| e == 1);
    let roundtrip = pipeline.deinterleave(&interleaved)?.fidelity(&input)?;
    let mut item = ReportItem::new(
        "interleaved state is a code state of the interleaved code",
        stabilized && (1.0 - roundtrip) <= 1e-10,
    )
    .with_detail(format!(
        "block b occupies positions {{b+1, b+4, b+7}}; deinterleave round-trip fidelity {roundtrip:.12}"
    ));
    item.amplitudes = Some(
        interleaved
            .nonzero_terms(1e-12)
            .into_iter()
            .take(8)
            .map(|(label, a)| (label, a.re, a.im))
            .collect(),
    );
    report.items.push(item);

    for (branch, corrupted) in apply_branches(&branches, &interleaved)? {
        if branch.pauli.n() != pipeline.width() {
            return Err(Error::LengthMismatch {
                expected: pipeline.width(),
                found: branch.pauli.n(),
            });
        }
        let received = pipeline.deinterleave(&corrupted)?;
        let residual = branch.pauli.permuted(&pipeline.permutation().inverse())?;
        let outcome = pipeline.decode(&input, &received, residual)?;
        report
            .items
            .push(outcome_item(format!("branch {}", branch.label), &branch.pauli, &outcome));
    }
    report.summarize("branches", branches.len());
    Ok(report.finish(started))
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub code: String,
    pub degree: usize,
    pub burst: usize,
    pub kind: BurstKind,
    pub method: Method,
    pub seed: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            code: "phase3".into(),
            degree: 3,
            burst: 3,
            kind: BurstKind::Phase,
            method: Method::Statevector,
            seed: None,
        }
    }
}

/// Exhaustively checks every burst of length at most `burst` on the interleaved code.
pub fn run_verify(options: &VerifyOptions) -> Result<Report> {
    let started = Instant::now();
    let base = code_by_name(&options.code)
        .ok_or_else(|| Error::InvalidCode(format!("unknown code name {:?} (expected phase3 or five)", options.code)))?;
    let m = options.degree;
    if m == 0 {
        return Err(Error::ZeroSize { n: base.n(), m });
    }
    let width = base.n() * m;
    let bursts = enumerate_bursts(width, options.burst, options.kind)?;

    let mut command = format!(
        "verify --code {} --degree {} --burst {} --kind {} --method {}",
        base.name(),
        m,
        options.burst,
        options.kind,
        options.method.as_str()
    );
    if let Some(seed) = options.seed {
        write!(command, " --seed {seed}").ok();
    }
    let mut report = Report::new(command);
    report.param("code", base.name());
    report.param("degree", m);
    report.param("burst", options.burst);
    report.param("kind", options.kind);
    report.param("method", options.method);
    report.param("seed", options.seed);
    report.summarize("interleaved_code", format!("[[{},{}]]", width, base.k() * m));
    report.summarize("declared_ability", base.burst_ability() * m);
    report.summarize("bursts", bursts.len());

    match options.method {
        Method::Statevector => {
            let pipeline = InterleavedPipeline::new(&base, m)?;
            let coeffs = match options.seed {
                Some(seed) => random_coefficients(seed, m),
                None => default_coefficients(m),
            };
            report.param("coefficients", format_coefficients(&coeffs));
            let input: StateVector<f64> = pipeline.encode(&coeffs)?;
            let interleaved = pipeline.interleave(&input)?;
            let outcomes = bursts
                .par_iter()
                .map(|b| pipeline.run(&input, &interleaved, b))
                .collect::<Result<Vec<_>>>()?;
            for (b, outcome) in bursts.iter().zip(&outcomes) {
                report.items.push(outcome_item(format!("burst {b}"), b, outcome));
            }
            report.witness = bursts
                .iter()
                .zip(&outcomes)
                .find(|(_, o)| !o.is_success())
                .map(|(b, _)| b.to_string());
        }
        Method::Stabilizer => {
            let code = interleaved_code(&base, m)?;
            let analysis = analyze_error_set(&code, &bursts)?;
            for (i, b) in bursts.iter().enumerate() {
                let mut item = ReportItem::new(format!("burst {b}"), analysis.consistent[i]).with_burst(b);
                item.syndromes = Some(vec![analysis.syndromes[i].to_string()]);
                if !analysis.consistent[i] {
                    item = item.with_detail("shares its syndrome with an inequivalent error");
                }
                report.items.push(item);
            }
            report.witness = analysis.witness.map(|(a, b)| format!("{a} / {b}"));
        }
    }
    Ok(report.finish(started))
}

/// Checks that the SWAP network acts on every basis state like the permutation.
pub fn circuit_matches_on_basis_states(circuit: &Circuit, perm: &crate::interleaver::Permutation) -> Result<bool> {
    let n = perm.len();
    for index in 0..(1usize << n) {
        let bits: Vec<bool> = (0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect();
        let basis = StateVector::<f64>::basis_state(n, &BinaryVector::from_bits(&bits)?)?;
        if basis.apply_circuit(circuit)? != basis.apply_qubit_permutation(perm)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Synthesizes the `rows x cols` interleaver and returns the exported circuit with its report.
pub fn run_synth(rows: usize, cols: usize, format: CircuitFormat, expand_swaps: bool) -> Result<(String, Report)> {
    let started = Instant::now();
    let perm = interleave_permutation(rows, cols)?;
    let circuit = synthesize_swap_network(&perm);
    let text = circuit.export(format, expand_swaps);

    let fmt_name = match format {
        CircuitFormat::Plain => "plain",
        CircuitFormat::Qasm => "qasm",
    };
    let mut command = format!("synth --rows {rows} --cols {cols} --format {fmt_name}");
    if expand_swaps {
        command.push_str(" --expand-swaps");
    }
    let mut report = Report::new(command);
    report.param("rows", rows);
    report.param("cols", cols);
    report.param("format", format);
    report.param("expand_swaps", expand_swaps);

    let width = rows * cols;
    let relabel_ok = circuit.swap_permutation().as_ref() == Some(&perm);
    let (equiv_ok, how) = if width <= EXHAUSTIVE_SYNTH_QUBITS {
        (
            relabel_ok && circuit_matches_on_basis_states(&circuit, &perm)?,
            format!("checked on all {} basis states", 1usize << width),
        )
    } else {
        (relabel_ok, "checked as a qubit relabeling".to_string())
    };
    report
        .items
        .push(ReportItem::new("swap network realizes the interleaving permutation", equiv_ok).with_detail(how));

    let cnots = circuit.cnot_count();
    if rows == cols {
        let expected = square_interleaver_cnots(rows);
        report.items.push(
            ReportItem::new("CNOT count equals 3n(n-1)/2", cnots == expected)
                .with_detail(format!("{cnots} CNOTs, formula gives {expected}")),
        );
    }
    let bound = 3 * (width - 1);
    report.items.push(
        ReportItem::new("CNOT count within 3(nm-1)", cnots <= bound)
            .with_detail(format!("{cnots} <= {bound}")),
    );
    report.summarize("swaps", circuit.swap_count());
    report.summarize("cnots", cnots);
    report.summarize("cycles", perm.cycles().len());
    report.summarize("circuit", text.clone());
    Ok((text, report.finish(started)))
}

/// Lists every burst of length at most `burst` on `qubits` qubits.
pub fn run_enumerate(qubits: usize, burst: usize, kind: BurstKind) -> Result<Report> {
    let started = Instant::now();
    let bursts = enumerate_bursts(qubits, burst, kind)?;
    let mut report = Report::new(format!("enumerate --qubits {qubits} --burst {burst} --kind {kind}"));
    report.param("qubits", qubits);
    report.param("burst", burst);
    report.param("kind", kind);
    for b in &bursts {
        let ok = kind.admits(b, burst) && !b.is_identity();
        report.items.push(ReportItem::new(b.to_string(), ok).with_burst(b));
    }
    report.summarize("count", bursts.len());
    Ok(report.finish(started))
}
