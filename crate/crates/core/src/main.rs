use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qinterleave::cli::{
    run_demo, run_enumerate, run_synth, run_verify, DemoOptions, Method, OutputFormat, Report, VerifyOptions,
};
use qinterleave::{BranchSet, BurstKind, CircuitFormat};

/// Quantum burst-error correction by interleaving.
#[derive(Debug, Parser)]
#[command(name = "qinterleave", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode three phase-code blocks, interleave, apply a burst and decode.
    Demo {
        /// Seed for random logical coefficients; fixed generic states otherwise.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated error branches, e.g. ZZZIIIIII,IIIIIZZZI.
        #[arg(long)]
        branches: Option<String>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check every burst up to a length on the interleaved code.
    Verify {
        /// phase3 or five.
        #[arg(long, default_value = "phase3")]
        code: String,
        /// Interleaving degree m.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Maximum burst length.
        #[arg(long, default_value_t = 3)]
        burst: usize,
        /// bit, phase, colocated or independent.
        #[arg(long, default_value = "phase")]
        kind: BurstKind,
        /// statevector or stabilizer.
        #[arg(long, default_value = "statevector")]
        method: Method,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Synthesize the SWAP network of a rows x cols interleaver.
    Synth {
        /// Code length n.
        #[arg(long)]
        rows: usize,
        /// Interleaving degree m.
        #[arg(long)]
        cols: usize,
        /// plain, qasm or json (report with the embedded circuit).
        #[arg(long, default_value = "plain")]
        format: String,
        /// Write each SWAP as three CNOTs.
        #[arg(long)]
        expand_swaps: bool,
        /// Circuit destination; the report then goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List every burst up to a length.
    Enumerate {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        burst: usize,
        #[arg(long, default_value = "phase")]
        kind: BurstKind,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: &Report, format: OutputFormat, output: Option<&PathBuf>) -> Result<bool, String> {
    emit(&report.render(format), output)?;
    Ok(report.is_pass())
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Demo {
            seed,
            branches,
            format,
            output,
        } => {
            let branches = branches
                .map(|b| BranchSet::parse(&b))
                .transpose()
                .map_err(|e| e.to_string())?;
            let report = run_demo(&DemoOptions {
                coefficients: None,
                seed,
                branches,
            })
            .map_err(|e| e.to_string())?;
            finish(&report, format, output.as_ref())
        }
        Command::Verify {
            code,
            degree,
            burst,
            kind,
            method,
            seed,
            format,
            output,
        } => {
            let report = run_verify(&VerifyOptions {
                code,
                degree,
                burst,
                kind,
                method,
                seed,
            })
            .map_err(|e| e.to_string())?;
            finish(&report, format, output.as_ref())
        }
        Command::Synth {
            rows,
            cols,
            format,
            expand_swaps,
            output,
        } => {
            let json = format.eq_ignore_ascii_case("json");
            let circuit_format: CircuitFormat = if json {
                CircuitFormat::Plain
            } else {
                format.parse()?
            };
            let (circuit, report) =
                run_synth(rows, cols, circuit_format, expand_swaps).map_err(|e| e.to_string())?;
            if json {
                return finish(&report, OutputFormat::Json, output.as_ref());
            }
            match output {
                Some(path) => {
                    emit(&circuit, Some(&path))?;
                    print!("{}", report.to_text());
                }
                None => {
                    print!("{circuit}");
                    eprint!("{}", report.to_text());
                }
            }
            Ok(report.is_pass())
        }
        Command::Enumerate {
            qubits,
            burst,
            kind,
            format,
            output,
        } => {
            let report = run_enumerate(qubits, burst, kind).map_err(|e| e.to_string())?;
            finish(&report, format, output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
