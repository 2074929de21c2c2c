use super::ast::*;
use super::KERNEL_VERSION;
use std::fmt::{self, Write};

impl fmt::Display for PolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolOp::Id(id) => write!(f, "{id}"),
            PolOp::Axiom(l) => write!(f, "{l}"),
            PolOp::Add => f.write_str("+"),
            PolOp::Multiply(k) => write!(f, "{k} *"),
            PolOp::Divide(k) => write!(f, "{k} d"),
            PolOp::Saturate => f.write_str("s"),
            PolOp::Weaken(v) => write!(f, "{v} w"),
        }
    }
}

impl fmt::Display for GoalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalId::Existing(id) => write!(f, "{id}"),
            GoalId::NewConstraint => f.write_str("#new"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    let mut s = String::new();
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{item}");
    }
    s
}

fn write_steps(out: &mut String, steps: &[Located], indent: usize) {
    for l in steps {
        write_step(out, &l.step, indent);
    }
}

fn write_step(out: &mut String, step: &ProofStep, indent: usize) {
    let pad = "  ".repeat(indent);
    let _ = match step {
        ProofStep::LoadFormula(Some(n)) => writeln!(out, "{pad}f {n}"),
        ProofStep::LoadFormula(None) => writeln!(out, "{pad}f"),
        ProofStep::Pol(ops) => writeln!(out, "{pad}pol {}", join(ops)),
        ProofStep::Rup { target, hints, .. } => {
            if hints.is_empty() {
                writeln!(out, "{pad}rup {target} ;")
            } else {
                writeln!(out, "{pad}rup {target} ; {}", join(hints))
            }
        }
        ProofStep::Pbc { target, subproof } => {
            let _ = writeln!(out, "{pad}pbc {target} ; begin");
            write_steps(out, subproof, indent + 1);
            writeln!(out, "{pad}end")
        }
        ProofStep::Red(r) => {
            write_red(out, "red", r, indent);
            Ok(())
        }
        ProofStep::Dom(r) => {
            write_red(out, "dom", r, indent);
            Ok(())
        }
        ProofStep::Del(ids) => writeln!(out, "{pad}del id {}", join(ids)),
        ProofStep::Weaken { id, var } => writeln!(out, "{pad}weaken {id} {var}"),
        ProofStep::Sol(lits) => writeln!(out, "{pad}sol {}", join(lits)),
        ProofStep::SolImplied(lits) => writeln!(out, "{pad}soli {}", join(lits)),
        ProofStep::Output => writeln!(out, "{pad}output NONE"),
        ProofStep::Conclusion { kind, reference } => match (kind, reference) {
            (ConclusionKind::Unsat, Some(id)) => writeln!(out, "{pad}conclusion UNSAT : {id}"),
            (ConclusionKind::Unsat, None) => writeln!(out, "{pad}conclusion UNSAT"),
            (ConclusionKind::Sat, _) => writeln!(out, "{pad}conclusion SAT"),
            (ConclusionKind::Bounds, _) => writeln!(out, "{pad}conclusion BOUNDS"),
        },
    };
}

fn write_red(out: &mut String, rule: &str, r: &Redundance, indent: usize) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}{rule} {} ; {}", r.target, r.witness);
    if r.goals.is_empty() {
        out.push('\n');
        return;
    }
    out.push_str(" ; begin\n");
    for g in &r.goals {
        let _ = writeln!(out, "{pad}  goal {}", g.id);
        write_steps(out, &g.steps, indent + 2);
        let _ = writeln!(out, "{pad}  end");
    }
    let _ = writeln!(out, "{pad}end");
}

/// Renders one step (including any nested blocks) as kernel text.
pub fn step_to_string(step: &ProofStep) -> String {
    let mut out = String::new();
    write_step(&mut out, step, 0);
    out
}

/// Renders a proof as kernel text, header and trailer included.
pub fn serialize_proof(proof: &Proof) -> String {
    let mut out = String::new();
    let version = if proof.version.is_empty() {
        KERNEL_VERSION
    } else {
        &proof.version
    };
    let _ = writeln!(out, "pseudo-Boolean proof version {version}");
    write_steps(&mut out, &proof.steps, 0);
    out.push_str("end pseudo-Boolean proof\n");
    out
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_proof(self))
    }
}
