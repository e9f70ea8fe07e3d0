use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::codes::resolve;
use crate::enumerator::{
    coset_enumerator, logical_cosets, path_report, shor_laflamme, MergeMode, NoiseModel,
    PathReport, SelfCheck, DEFAULT_MAX_DEGREE,
};
use crate::tensor::{diagonal_to_pauli_probs, CircuitTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "qect",
    version,
    about = "Circuit tensors, circuit enumerators and error-path counts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub out: OutFormat,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, env = "QECT_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elaborate a circuit file and print its untraced tensor.
    Tensor { file: PathBuf },
    /// Elaborate a circuit file and print the tensor with every noise group traced.
    Trace {
        file: PathBuf,
        /// Also print Pauli-channel probabilities for a diagonal qubit channel.
        #[arg(long)]
        probs: bool,
    },
    /// Path enumerators for noisy syndrome extraction on a code.
    Paths {
        /// Built-in code name or path to a generator file.
        code: String,
        /// Add per-qubit idle noise on qubits outside each measured generator.
        #[arg(long)]
        idle: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        degree: u32,
        /// One variable for all generator triggers instead of one per support size.
        #[arg(long)]
        merge: bool,
    },
    /// Enumerator of paths landing in one logical coset.
    Coset {
        code: String,
        #[arg(long)]
        logical: String,
        #[arg(long)]
        idle: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        degree: u32,
        #[arg(long)]
        merge: bool,
    },
    /// Shor-Laflamme enumerators A(z) and B(z).
    Sl { code: String },
    /// Run a self-check suite.
    Check { suite: String },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or an error during computation.
    Input(String),
    /// Computation finished but a self-check failed.
    Check,
}

fn merge_mode(merge: bool) -> MergeMode {
    if merge {
        MergeMode::All
    } else {
        MergeMode::BySupportSize
    }
}

fn tensor_text(t: &CircuitTensor) -> String {
    t.to_string()
}

fn checks_text(checks: &[SelfCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = writeln!(s, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    s
}

fn report_text(r: &PathReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, k = {}, degree cap {}, |S| = {}, |N| = {}",
        r.meta.n, r.meta.k, r.meta.degree_cap, r.meta.group_sizes[0], r.meta.group_sizes[1]
    );
    let show = |j: &crate::poly::PolyJson| {
        crate::poly::Polynomial::from_json(j).map_or_else(|e| format!("<{e}>"), |p| p.to_string())
    };
    let _ = writeln!(s, "A_path = {}", show(&r.a_path));
    let _ = writeln!(s, "B_path = {}", show(&r.b_path));
    let _ = writeln!(s, "B_path - A_path = {}", show(&r.difference));
    for (name, p) in &r.cosets {
        let _ = writeln!(s, "coset {name} ({}) = {}", r.meta.logicals[name], show(p));
    }
    let _ = writeln!(
        s,
        "{:>6} {:>24} {:>24} {:>24}",
        "degree", "A_path", "B_path", "difference"
    );
    for t in &r.totals {
        let _ = writeln!(
            s,
            "{:>6} {:>24} {:>24} {:>24}",
            t.degree, t.a_path, t.b_path, t.difference
        );
    }
    s.push_str(&checks_text(&r.checks));
    s
}

fn read(file: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn elaborate(file: &PathBuf) -> Result<super::run::Elaborated, Failure> {
    let src = read(file)?;
    super::run::elaborate_source(&src)
        .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// Runs one command, returning the text to print.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.out;
    let emit = |v: serde_json::Value, text: String| match fmt {
        OutFormat::Json => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        OutFormat::Text => text,
    };
    match &cli.cmd {
        Command::Tensor { file } => {
            let e = elaborate(file)?;
            Ok(emit(
                json!({ "tensor": e.tensor.to_json(), "inputs": e.inputs, "outputs": e.outputs }),
                tensor_text(&e.tensor),
            ))
        }
        Command::Trace { file, probs } => {
            let e = elaborate(file)?;
            let t = e.traced().map_err(input)?;
            let mut text = tensor_text(&t);
            let mut v = json!({ "tensor": t.to_json(), "outputs": e.outputs });
            if *probs {
                let ps = diagonal_to_pauli_probs(&t).map_err(input)?;
                let mut list = Vec::new();
                for (p, poly) in &ps {
                    let _ = writeln!(text, "p_{p} = {poly}");
                    list.push(json!({ "pauli": p.to_string(), "probability": poly.to_json() }));
                }
                v["probabilities"] = serde_json::Value::Array(list);
            }
            Ok(emit(v, text))
        }
        Command::Paths {
            code,
            idle,
            degree,
            merge,
        } => {
            let c = resolve(code).map_err(input)?;
            let r = path_report(&c, *idle, merge_mode(*merge), *degree).map_err(input)?;
            let out = emit(
                serde_json::to_value(&r).expect("serializable"),
                report_text(&r),
            );
            if r.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Check)
            }
        }
        Command::Coset {
            code,
            logical,
            idle,
            degree,
            merge,
        } => {
            let c = resolve(code).map_err(input)?;
            let cosets = logical_cosets(&c);
            let Some((name, l)) = cosets.iter().find(|(n, _)| n == logical) else {
                let names: Vec<&str> = cosets.iter().map(|(n, _)| n.as_str()).collect();
                return Err(Failure::Input(format!(
                    "unknown logical {logical:?}; expected one of {names:?}"
                )));
            };
            let model = NoiseModel::syndrome_extraction(&c, *idle, merge_mode(*merge));
            let p = coset_enumerator(&c, l, &model, *degree).map_err(input)?;
            Ok(emit(
                json!({ "logical": name, "representative": l.to_string(), "enumerator": p.to_json() }),
                format!("coset {name} ({l}) = {p}\n"),
            ))
        }
        Command::Sl { code } => {
            let c = resolve(code).map_err(input)?;
            let (a, b) = shor_laflamme(&c).map_err(input)?;
            Ok(emit(
                json!({ "A": a.to_json(), "B": b.to_json() }),
                format!("A(z) = {a}\nB(z) = {b}\n"),
            ))
        }
        Command::Check { suite } => {
            let checks = super::check::run_suite(suite).ok_or_else(|| {
                Failure::Input(format!(
                    "unknown suite {suite:?}; expected one of {:?}",
                    super::check::SUITES
                ))
            })?;
            let out = emit(
                json!({ "suite": suite, "checks": checks }),
                checks_text(&checks),
            );
            if checks.iter().all(|c| c.passed) {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Check)
            }
        }
    }
}

/// Entry point for the binary: 0 on success, 1 on a failed self-check, 2 on bad input.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if !crate::init_threads(n) {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match execute(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
