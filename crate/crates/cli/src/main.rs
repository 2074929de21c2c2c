//! `pbforge`: check kernel proofs, encode problems, run the oracles.
//!
//! Exit codes are shared by every command: 0 verified (or SAT/valid),
//! 1 rejected (or UNSAT/invalid), 2 parse, I/O or usage error,
//! 3 instance too large for the oracle, 4 pipeline skipped.

mod family;
mod pipeline;
mod report;

use clap::{Parser, Subcommand};
use family::{format_witness, parse_witness, Family};
use pbforge::checker::{check_reader, CheckOptions, Status};
use pbforge::encodings::{decode_model, verify_witness};
use pbforge::opb::{parse_opb, serialize_opb_with_comments, Formula};
use pbforge::oracle::{brute_force_sat, SatStatus, DEFAULT_VAR_LIMIT};
use pbforge::proofast::serialize_proof;
use report::{ReportStats, RunReport};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;
pub const EXIT_SKIPPED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pbforge", version, about = "Pseudo-Boolean proof checking toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check kernel proofs against OPB formulas, given as FORMULA PROOF pairs.
    Check {
        #[arg(required = true, num_args = 2.., value_names = ["FORMULA", "PROOF"])]
        files: Vec<PathBuf>,
        /// Emit one JSON report per pair.
        #[arg(long)]
        json: bool,
        /// Fail `rup` steps whose hints alone do not propagate to a conflict.
        #[arg(long)]
        strict_hints: bool,
    },
    /// Write the OPB encoding of a problem instance.
    Encode {
        #[command(subcommand)]
        family: Family,
        /// Output file (default: stdout).
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Decide a small formula by exhaustive enumeration.
    Oracle {
        formula: PathBuf,
        /// Largest variable count to enumerate.
        #[arg(long, default_value_t = DEFAULT_VAR_LIMIT)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a witness for a problem instance directly.
    Witness {
        #[command(subcommand)]
        family: Family,
        /// Colors as an R/B string, or comma-separated integers.
        #[arg(short, long, global = true)]
        witness: Option<String>,
    },
    /// Encode, solve and elaborate with external tools, then check.
    Pipeline {
        #[command(subcommand)]
        family: Family,
        /// Solver executable (default: $PBFORGE_SOLVER).
        #[arg(long, global = true)]
        solver: Option<PathBuf>,
        /// Elaborator executable (default: $PBFORGE_ELABORATOR).
        #[arg(long, global = true)]
        elaborator: Option<PathBuf>,
        /// Directory for intermediate files (default: a fresh temp dir).
        #[arg(long, global = true)]
        workdir: Option<PathBuf>,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Produce a kernel refutation by exhaustive search (small formulas only).
    Prove {
        formula: PathBuf,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check {
            files,
            json,
            strict_hints,
        } => cmd_check(&files, json, strict_hints),
        Command::Encode { family, out } => cmd_encode(&family, out.as_deref()),
        Command::Oracle {
            formula,
            limit,
            json,
        } => cmd_oracle(&formula, limit, json),
        Command::Witness { family, witness } => cmd_witness(&family, witness.as_deref()),
        Command::Pipeline {
            family,
            solver,
            elaborator,
            workdir,
            json,
        } => pipeline::cmd_pipeline(&family, solver, elaborator, workdir, json),
        Command::Prove { formula, out } => cmd_prove(&formula, out.as_deref()),
    };
    ExitCode::from(code as u8)
}

pub fn read_formula(path: &Path) -> Result<Formula, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_opb(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Streams one proof through the checker.
pub fn check_pair(formula_path: &Path, proof_path: &Path, opts: &CheckOptions) -> RunReport {
    let mut report = RunReport::new(
        "check",
        vec![formula_path.display().to_string(), proof_path.display().to_string()],
    );
    let fail = |mut r: RunReport, msg: String| {
        r.result = "Error".into();
        r.detail = msg;
        r.exit_code = EXIT_ERROR;
        r
    };
    let formula = match read_formula(formula_path) {
        Ok(f) => f,
        Err(e) => return fail(report, e),
    };
    let file = match File::open(proof_path) {
        Ok(f) => f,
        Err(e) => return fail(report, format!("{}: {e}", proof_path.display())),
    };
    let start = Instant::now();
    let verdict = check_reader(&formula, BufReader::new(file), opts);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    match verdict {
        Err(e) => fail(report, format!("{}: {e}", proof_path.display())),
        Ok(v) => {
            report.result = v.status.to_string();
            report.exit_code = if v.status == Status::Rejected {
                EXIT_REJECTED
            } else {
                EXIT_OK
            };
            report.detail = match v.failed_line {
                Some(l) => format!("line {l}: {}", v.detail),
                None => v.detail.clone(),
            };
            report.stats = Some(ReportStats::from_checker(&v.stats, v.failed_line));
            report
        }
    }
}

fn cmd_check(files: &[PathBuf], json: bool, strict_hints: bool) -> i32 {
    if !files.len().is_multiple_of(2) {
        eprintln!("error: expected FORMULA PROOF pairs, got {} paths", files.len());
        return EXIT_ERROR;
    }
    let opts = CheckOptions { strict_hints };
    let reports: Vec<RunReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(2)
            .map(|pair| {
                let opts = opts.clone();
                scope.spawn(move || check_pair(&pair[0], &pair[1], &opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker thread panicked"))
            .collect()
    });
    for r in &reports {
        if json {
            println!("{}", r.to_json());
        } else if r.exit_code == EXIT_ERROR {
            eprintln!("error: {}", r.detail);
        } else {
            println!("{}: {} ({})", r.inputs[1], r.result, r.detail);
        }
    }
    reports.iter().map(|r| r.exit_code).max().unwrap_or(EXIT_OK)
}

fn cmd_encode(family: &Family, out: Option<&Path>) -> i32 {
    let encoded = match family.instance().and_then(|i| i.encode()) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let text = serialize_opb_with_comments(&encoded.formula, &encoded.comments());
    let summary = format!(
        "{} vars, {} constraints",
        encoded.num_vars(),
        encoded.num_constraints()
    );
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_ERROR;
            }
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    EXIT_OK
}

fn cmd_oracle(path: &Path, limit: usize, json: bool) -> i32 {
    let formula = match read_formula(path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let start = Instant::now();
    let result = brute_force_sat(&formula, limit);
    let mut report = RunReport::new("oracle", vec![path.display().to_string()]);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let (result_name, code, detail) = match &result.status {
        SatStatus::Sat(v) => {
            let lits: Vec<String> = (1..=result.variables as u32)
                .map(|i| {
                    let x = pbforge::pbcore::Var::from_index(i);
                    if v.get(x) { x.pos() } else { x.neg() }.to_string()
                })
                .collect();
            ("SAT", EXIT_OK, format!("v {}", lits.join(" ")))
        }
        SatStatus::Unsat => (
            "UNSAT",
            EXIT_REJECTED,
            format!("{} variables exhausted", result.variables),
        ),
        SatStatus::TooLarge => (
            "TooLarge",
            EXIT_TOO_LARGE,
            format!("{} variables exceed the limit of {limit}", result.variables),
        ),
    };
    report.result = result_name.into();
    report.detail = detail;
    report.exit_code = code;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.result);
        if code == EXIT_OK {
            println!("{}", report.detail);
        } else {
            eprintln!("{}", report.detail);
        }
    }
    code
}

fn cmd_witness(family: &Family, spec: Option<&str>) -> i32 {
    let instance = match family.instance() {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let Some(spec) = spec else {
        eprintln!("error: --witness is required");
        return EXIT_ERROR;
    };
    let witness = match parse_witness(&instance, spec) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    match verify_witness(&instance, &witness) {
        Ok(true) => {
            println!("valid {} witness: {}", instance.family(), format_witness(&witness));
            EXIT_OK
        }
        Ok(false) => {
            println!("invalid {} witness: {}", instance.family(), format_witness(&witness));
            EXIT_REJECTED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn cmd_prove(path: &Path, out: Option<&Path>) -> i32 {
    let formula = match read_formula(path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    match pbforge::prover::refute(&formula) {
        Ok(proof) => {
            let text = serialize_proof(&proof);
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("error: {}: {e}", p.display());
                        return EXIT_ERROR;
                    }
                }
                None => print!("{text}"),
            }
            eprintln!("refutation with {} steps", proof.steps.len());
            EXIT_OK
        }
        Err(model) => {
            let lits: Vec<String> = model.true_vars().map(|v| v.to_string()).collect();
            println!("SAT");
            println!("true: {}", lits.join(" "));
            EXIT_REJECTED
        }
    }
}

/// Reads a native witness out of a model, for reporting.
pub fn describe_model(family: &Family, model: &pbforge::pbcore::Valuation) -> Option<String> {
    let instance = family.instance().ok()?;
    Some(format_witness(&decode_model(&instance, model)))
}
