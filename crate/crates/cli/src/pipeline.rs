//! `pipeline`: encode, run an external solver and elaborator, check.
//!
//! The tools are untrusted and optional. Their command lines are templates
//! with the placeholders `{opb}`, `{proof}` (the solver's proof log) and
//! `{kernel}` (the elaborated kernel proof), overridable through
//! `PBFORGE_SOLVER_ARGS` and `PBFORGE_ELABORATOR_ARGS`.

use crate::family::Family;
use crate::report::RunReport;
use crate::{check_pair, describe_model, EXIT_ERROR, EXIT_OK, EXIT_REJECTED, EXIT_SKIPPED};
use pbforge::checker::CheckOptions;
use pbforge::opb::serialize_opb_with_comments;
use pbforge::pbcore::{Literal, Valuation};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const DEFAULT_SOLVER_ARGS: &str = "{opb} --proof-log={proof}";
pub const DEFAULT_ELABORATOR_ARGS: &str = "{opb} {proof} --elaborate {kernel}";

fn resolve_tool(flag: Option<PathBuf>, env: &str) -> Option<PathBuf> {
    let path = flag.or_else(|| std::env::var_os(env).filter(|v| !v.is_empty()).map(PathBuf::from))?;
    if path.components().count() > 1 || path.is_file() {
        return path.is_file().then_some(path);
    }
    std::env::split_paths(&std::env::var_os("PATH")?)
        .map(|dir| dir.join(&path))
        .find(|p| p.is_file())
}

fn expand(template: &str, files: &[(&str, &Path)]) -> Vec<String> {
    template
        .split_whitespace()
        .map(|arg| {
            files.iter().fold(arg.to_string(), |a, (key, path)| {
                a.replace(&format!("{{{key}}}"), &path.display().to_string())
            })
        })
        .collect()
}

fn run(tool: &Path, args: &[String]) -> Result<Output, String> {
    log::info!("running {} {}", tool.display(), args.join(" "));
    Command::new(tool)
        .args(args)
        .output()
        .map_err(|e| format!("cannot run {}: {e}", tool.display()))
}

enum SolverAnswer {
    Unsat,
    Sat(Valuation),
    Unknown,
}

/// Reads the competition-style `s` and `v` lines, falling back to the
/// conventional exit codes 10 (SAT) and 20 (UNSAT).
fn solver_answer(out: &Output) -> SolverAnswer {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut status = None;
    let mut lits = Vec::new();
    for line in stdout.lines() {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("s") => status = Some(words.collect::<Vec<_>>().join(" ")),
            Some("v") => {
                for w in words {
                    // `-x3` and `~x3` both mean x3 is false
                    let parsed = match w.strip_prefix('-') {
                        Some(rest) => Literal::parse(rest).map(|l| !l),
                        None => Literal::parse(w),
                    };
                    lits.extend(parsed);
                }
            }
            _ => {}
        }
    }
    match (status.as_deref(), out.status.code()) {
        (Some("UNSATISFIABLE"), _) | (None, Some(20)) => SolverAnswer::Unsat,
        (Some("SATISFIABLE" | "OPTIMUM FOUND"), _) | (None, Some(10)) => {
            SolverAnswer::Sat(Valuation::from_literals(&lits))
        }
        _ => SolverAnswer::Unknown,
    }
}

fn finish(report: RunReport, json: bool) -> i32 {
    if json {
        println!("{}", report.to_json());
    } else if report.exit_code == EXIT_ERROR {
        eprintln!("error: {}", report.detail);
    } else {
        println!("{}: {}", report.result, report.detail);
    }
    report.exit_code
}

pub fn cmd_pipeline(
    family: &Family,
    solver: Option<PathBuf>,
    elaborator: Option<PathBuf>,
    workdir: Option<PathBuf>,
    json: bool,
) -> i32 {
    let mut report = RunReport::new("pipeline", vec![format!("{family:?}")]);
    let error = |mut r: RunReport, msg: String| {
        r.result = "Error".into();
        r.detail = msg;
        r.exit_code = EXIT_ERROR;
        finish(r, json)
    };
    let (Some(solver), Some(elaborator)) = (
        resolve_tool(solver, "PBFORGE_SOLVER"),
        resolve_tool(elaborator, "PBFORGE_ELABORATOR"),
    ) else {
        report.result = "Skipped".into();
        report.detail = "pipeline skipped: solver or elaborator not available (set PBFORGE_SOLVER and PBFORGE_ELABORATOR)".into();
        report.exit_code = EXIT_SKIPPED;
        return finish(report, json);
    };

    let encoded = match family.instance().and_then(|i| i.encode()) {
        Ok(e) => e,
        Err(e) => return error(report, e.to_string()),
    };
    let temp;
    let dir = match workdir {
        Some(d) => {
            if let Err(e) = std::fs::create_dir_all(&d) {
                return error(report, format!("{}: {e}", d.display()));
            }
            d
        }
        None => match tempfile::Builder::new().prefix("pbforge-").tempdir() {
            Ok(t) => {
                temp = t;
                temp.path().to_path_buf()
            }
            Err(e) => return error(report, format!("cannot create work directory: {e}")),
        },
    };
    let opb = dir.join("formula.opb");
    let proof = dir.join("solver.pbp");
    let kernel = dir.join("kernel.pbp");
    let files = [("opb", opb.as_path()), ("proof", proof.as_path()), ("kernel", kernel.as_path())];
    let text = serialize_opb_with_comments(&encoded.formula, &encoded.comments());
    if let Err(e) = std::fs::write(&opb, text) {
        return error(report, format!("{}: {e}", opb.display()));
    }
    report.inputs.push(opb.display().to_string());

    let template = |var: &str, default: &str| std::env::var(var).unwrap_or_else(|_| default.into());
    let solver_args = expand(&template("PBFORGE_SOLVER_ARGS", DEFAULT_SOLVER_ARGS), &files);
    let out = match run(&solver, &solver_args) {
        Ok(o) => o,
        Err(e) => return error(report, e),
    };
    match solver_answer(&out) {
        SolverAnswer::Unknown => error(
            report,
            format!(
                "solver gave no answer (exit {:?}): {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr).trim()
            ),
        ),
        SolverAnswer::Sat(model) => {
            let ok = encoded.formula.constraints.iter().all(|c| c.is_satisfied(&model));
            report.result = if ok { "VerifiedSat" } else { "Rejected" }.into();
            report.exit_code = if ok { EXIT_OK } else { EXIT_REJECTED };
            report.detail = if ok {
                format!(
                    "solver model satisfies the encoding; witness {}",
                    describe_model(family, &model).unwrap_or_default()
                )
            } else {
                "solver model violates the encoding".into()
            };
            finish(report, json)
        }
        SolverAnswer::Unsat => {
            let elab_args = expand(&template("PBFORGE_ELABORATOR_ARGS", DEFAULT_ELABORATOR_ARGS), &files);
            let out = match run(&elaborator, &elab_args) {
                Ok(o) => o,
                Err(e) => return error(report, e),
            };
            if !out.status.success() || !kernel.is_file() {
                return error(
                    report,
                    format!(
                        "elaborator failed (exit {:?}): {}",
                        out.status.code(),
                        String::from_utf8_lossy(&out.stderr).trim()
                    ),
                );
            }
            let mut checked = check_pair(&opb, &kernel, &CheckOptions::default());
            checked.command = "pipeline".into();
            checked.inputs = report.inputs;
            finish(checked, json)
        }
    }
}
