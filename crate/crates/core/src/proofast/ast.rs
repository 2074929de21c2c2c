use crate::pbcore::{Coeff, Constraint, Literal, Substitution, Var};

pub type ConstraintId = u64;

/// One token of a `pol` reverse-Polish expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolOp {
    /// Push a copy of a database constraint.
    Id(ConstraintId),
    /// Push the literal axiom `ℓ ≥ 0`.
    Axiom(Literal),
    Add,
    Multiply(Coeff),
    Divide(Coeff),
    Saturate,
    Weaken(Var),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GoalId {
    Existing(ConstraintId),
    /// The goal for the substituted target itself (`#new`).
    NewConstraint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub id: GoalId,
    pub line: usize,
    pub steps: Vec<Located>,
}

/// Payload shared by `red` and `dom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redundance {
    pub target: Constraint,
    pub witness: Substitution,
    pub goals: Vec<Goal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConclusionKind {
    Unsat,
    Sat,
    Bounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    /// `f [M]`: load the formula's constraints as IDs `1..=M`.
    LoadFormula(Option<usize>),
    Pol(Vec<PolOp>),
    Rup {
        target: Constraint,
        hints: Vec<ConstraintId>,
        hinted: bool,
    },
    Pbc {
        target: Constraint,
        subproof: Vec<Located>,
    },
    Red(Redundance),
    Dom(Redundance),
    Del(Vec<ConstraintId>),
    /// `weaken ID xN`: derive the constraint with the term over `xN` removed.
    Weaken {
        id: ConstraintId,
        var: Var,
    },
    Sol(Vec<Literal>),
    SolImplied(Vec<Literal>),
    /// `output NONE`.
    Output,
    Conclusion {
        kind: ConclusionKind,
        reference: Option<ConstraintId>,
    },
}

impl ProofStep {
    pub fn rule_name(&self) -> &'static str {
        match self {
            ProofStep::LoadFormula(_) => "f",
            ProofStep::Pol(_) => "pol",
            ProofStep::Rup { .. } => "rup",
            ProofStep::Pbc { .. } => "pbc",
            ProofStep::Red(_) => "red",
            ProofStep::Dom(_) => "dom",
            ProofStep::Del(_) => "del",
            ProofStep::Weaken { .. } => "weaken",
            ProofStep::Sol(_) => "sol",
            ProofStep::SolImplied(_) => "soli",
            ProofStep::Output => "output",
            ProofStep::Conclusion { .. } => "conclusion",
        }
    }
}

/// A step with the 1-based line it starts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub step: ProofStep,
}

impl Located {
    pub fn new(line: usize, step: ProofStep) -> Located {
        Located { line, step }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub version: String,
    pub steps: Vec<Located>,
}

impl Proof {
    pub fn new(steps: Vec<ProofStep>) -> Proof {
        Proof {
            version: super::KERNEL_VERSION.to_string(),
            steps: steps.into_iter().map(|s| Located::new(0, s)).collect(),
        }
    }

    /// A copy with every line number zeroed, for comparing ASTs that came
    /// from differently formatted text.
    pub fn without_lines(&self) -> Proof {
        Proof {
            version: self.version.clone(),
            steps: strip(&self.steps),
        }
    }

    /// Nesting depth of `pbc`/`red`/`dom` blocks (0 for a flat proof).
    pub fn depth(&self) -> usize {
        depth(&self.steps)
    }
}

fn strip(steps: &[Located]) -> Vec<Located> {
    steps
        .iter()
        .map(|l| {
            let step = match &l.step {
                ProofStep::Pbc { target, subproof } => ProofStep::Pbc {
                    target: target.clone(),
                    subproof: strip(subproof),
                },
                ProofStep::Red(r) => ProofStep::Red(strip_red(r)),
                ProofStep::Dom(r) => ProofStep::Dom(strip_red(r)),
                other => other.clone(),
            };
            Located::new(0, step)
        })
        .collect()
}

fn strip_red(r: &Redundance) -> Redundance {
    Redundance {
        target: r.target.clone(),
        witness: r.witness.clone(),
        goals: r
            .goals
            .iter()
            .map(|g| Goal {
                id: g.id,
                line: 0,
                steps: strip(&g.steps),
            })
            .collect(),
    }
}

fn depth(steps: &[Located]) -> usize {
    steps
        .iter()
        .map(|l| match &l.step {
            ProofStep::Pbc { subproof, .. } => 1 + depth(subproof),
            ProofStep::Red(r) | ProofStep::Dom(r) => {
                1 + r.goals.iter().map(|g| depth(&g.steps)).max().unwrap_or(0)
            }
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}
