//! Batch front end: load structures from documents, run law suites,
//! enumerate small structures, decompose medial quasigroups, and emit
//! machine-readable reports.
//!
//! Exit codes: 0 all non-skipped laws pass, 1 some law failed, 2 parse
//! error, 3 budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polymedial_core::docs::{self, SuiteDocument};
use polymedial_core::report::{Budget, LawStatus, RunConfig, VerificationReport};
use polymedial_core::suite;
use polymedial_core::Error;

#[derive(Parser)]
#[command(name = "polymedial", about = "verification workbench for finite medial and polyadic structures", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonOpts {
    /// Probe budget for exhaustive scans.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Seed for sampled checks; fixed seed means identical reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for partitionable scans.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl CommonOpts {
    fn config(&self) -> RunConfig {
        RunConfig {
            budget: Budget::new(self.budget),
            sample: 8192,
            seed: self.seed,
            jobs: self.jobs.max(1),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a law suite over a structure document.
    Verify {
        /// Input document (operation table, factor or algebra).
        input: PathBuf,
        /// Suite selector, e.g. mediality, associativity, quasigroup,
        /// cancellative, commutation, cocycle, mediality-factor, graded,
        /// almost-commutative, almost-medial, jacobi, full.
        #[arg(long, default_value = "full")]
        suite: String,
        /// Companion factor document for the almost-commutative,
        /// almost-medial and jacobi suites.
        #[arg(long)]
        factor: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Count (and optionally stream) quasigroup tables.
    Enumerate {
        /// Structure kind; only quasigroups are enumerable.
        #[arg(long, default_value = "quasigroups")]
        kind: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Predicate: any, medial, associative.
        #[arg(long, default_value = "any")]
        predicate: String,
        /// Emit up to this many matching tables (counting never caps).
        #[arg(long, default_value_t = 0)]
        emit_tables: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decompose a binary medial quasigroup into a linear presentation.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run coherence diagram suites for arity n.
    Coherence {
        #[arg(long)]
        n: usize,
        /// Suite: polygon, triangle, braiding, braid, medial, groupal, full.
        #[arg(long, default_value = "full")]
        suite: String,
        /// Braid permutation as comma-separated images, e.g. 2,1,0.
        #[arg(long)]
        sigma: Option<String>,
        /// Operation table document for the groupal model.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn exit_code_for(reports: &[VerificationReport]) -> ExitCode {
    if reports.iter().any(|r| r.status == LawStatus::Fail) {
        ExitCode::from(1)
    } else if reports.iter().any(|r| r.status == LawStatus::BudgetExceeded) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(doc: &SuiteDocument, format: Format) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn code_of_error(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            input,
            suite,
            factor,
            common,
        } => {
            let cfg = common.config();
            let doc = match read_json(&input) {
                Ok(d) => d,
                Err(e) => return fail(2, e),
            };
            let structure = match suite::parse_structure(&doc) {
                Ok(s) => s,
                Err(e) => return fail(2, e),
            };
            let aux = match factor {
                None => None,
                Some(path) => match read_json(&path).map_err(Error::Parse).and_then(|d| {
                    docs::factor_from_doc(&d)
                }) {
                    Ok(f) => Some(f),
                    Err(e) => return fail(2, e),
                },
            };
            match suite::run_suite(&structure, &suite, aux.as_ref(), &cfg) {
                Ok(reports) => {
                    let doc = SuiteDocument {
                        input: input.display().to_string(),
                        suite,
                        seed: cfg.seed,
                        budget: cfg.budget.max_probes,
                        jobs: cfg.jobs,
                        reports,
                    };
                    emit(&doc, common.format);
                    exit_code_for(&doc.reports)
                }
                Err(e) => fail(code_of_error(&e), e),
            }
        }
        Command::Enumerate {
            kind,
            order,
            arity,
            predicate,
            emit_tables,
            common,
        } => {
            if kind != "quasigroups" {
                return fail(2, format!("unknown enumeration kind {kind}"));
            }
            let cfg = common.config();
            let mut tables = Vec::new();
            match suite::run_enumerate(order, arity, &predicate, &cfg, emit_tables, |op| {
                tables.push(docs::op_to_doc(op));
            }) {
                Ok(count) => {
                    let out = serde_json::json!({
                        "kind": kind,
                        "order": order,
                        "arity": arity,
                        "predicate": predicate,
                        "count": count,
                        "tables": tables,
                    });
                    match common.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&out).expect("serializes")
                        ),
                        Format::Text => println!("count: {count}"),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(code_of_error(&e), e),
            }
        }
        Command::Decompose { input, common } => {
            let cfg = common.config();
            let doc = match read_json(&input) {
                Ok(d) => d,
                Err(e) => return fail(2, e),
            };
            let op = match docs::op_from_doc(&doc) {
                Ok(op) => op,
                Err(e) => return fail(2, e),
            };
            match suite::run_decompose(&op, &cfg) {
                Ok(Some(pres)) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&pres).expect("serializes")
                    );
                    ExitCode::SUCCESS
                }
                Ok(None) => {
                    let witness = op.check_mediality(&cfg.budget, cfg.jobs);
                    let out = serde_json::json!({
                        "result": "not medial",
                        "witness": witness,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializes")
                    );
                    ExitCode::from(1)
                }
                Err(e) => fail(code_of_error(&e), e),
            }
        }
        Command::Coherence {
            n,
            suite,
            sigma,
            model,
            common,
        } => {
            let cfg = common.config();
            let sigma_vec: Option<Vec<usize>> = match sigma {
                None => None,
                Some(s) => {
                    let parsed: Result<Vec<usize>, _> =
                        s.split(',').map(|x| x.trim().parse::<usize>()).collect();
                    match parsed {
                        Ok(v) => Some(v),
                        Err(e) => return fail(2, format!("bad sigma: {e}")),
                    }
                }
            };
            let model_op = match model {
                None => None,
                Some(path) => match read_json(&path)
                    .map_err(Error::Parse)
                    .and_then(|d| docs::op_from_doc(&d))
                {
                    Ok(op) => Some(op),
                    Err(e) => return fail(2, e),
                },
            };
            match suite::run_coherence(n, &suite, sigma_vec.as_deref(), model_op.as_ref(), &cfg) {
                Ok(reports) => {
                    let doc = SuiteDocument {
                        input: format!("coherence n={n}"),
                        suite,
                        seed: cfg.seed,
                        budget: cfg.budget.max_probes,
                        jobs: cfg.jobs,
                        reports,
                    };
                    emit(&doc, common.format);
                    exit_code_for(&doc.reports)
                }
                Err(e) => fail(code_of_error(&e), e),
            }
        }
    }
}
