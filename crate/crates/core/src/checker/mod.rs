//! Proof replay.
//!
//! A [`Checker`] loads the formula, replays kernel rules one at a time
//! against a [`ConstraintDb`] and turns the outcome into a [`Verdict`].
//! Rule failures never escape as errors; they end the replay with a
//! `Rejected` verdict naming the offending line.

mod db;

pub use db::{ConstraintDb, Snapshot};

use crate::opb::{Formula, ParseError};
use crate::pbcore::{
    propagate_in_place, Constraint, Literal, PartialAssignment, RuleViolation, Substitution,
};
use crate::proofast::{
    ConclusionKind, ConstraintId, Goal, GoalId, Located, PolOp, Proof, ProofReader, ProofStep,
};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::BufRead;

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Never fall back to full-database propagation when `rup` hints do not
    /// reach a conflict.
    pub strict_hints: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    VerifiedUnsat,
    VerifiedSat,
    Rejected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::VerifiedUnsat => "VerifiedUnsat",
            Status::VerifiedSat => "VerifiedSat",
            Status::Rejected => "Rejected",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Every replayed step, including those inside subproofs.
    pub steps_replayed: u64,
    pub constraints_created: u64,
    pub constraints_deleted: u64,
    /// Largest number of simultaneously live constraints.
    pub max_live: usize,
    /// How often each rule (and each `pol` operator, as `pol:<op>`) ran.
    pub rule_counts: BTreeMap<String, u64>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
    /// Line of the step that caused a rejection.
    pub failed_line: Option<usize>,
    pub stats: Stats,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        self.status != Status::Rejected
    }
}

/// A rule violation located at a proof line.
#[derive(Clone, Debug)]
struct StepError {
    line: usize,
    message: String,
}

impl StepError {
    fn at(line: usize, e: impl fmt::Display) -> StepError {
        StepError {
            line,
            message: e.to_string(),
        }
    }
}

/// Checks an in-memory proof.
pub fn check(formula: &Formula, proof: &Proof, opts: &CheckOptions) -> Verdict {
    let mut checker = Checker::new(formula, opts.clone());
    for step in &proof.steps {
        if !checker.step(step) {
            break;
        }
    }
    checker.finish()
}

/// Checks a proof as it is being parsed. Only parse errors are returned as
/// `Err`; rule failures produce a `Rejected` verdict.
pub fn check_steps<I>(formula: &Formula, steps: I, opts: &CheckOptions) -> Result<Verdict, ParseError>
where
    I: IntoIterator<Item = Result<Located, ParseError>>,
{
    let mut checker = Checker::new(formula, opts.clone());
    for step in steps {
        let step = step?;
        if !checker.step(&step) {
            break;
        }
    }
    Ok(checker.finish())
}

/// Streams a proof from `reader` through the checker.
pub fn check_reader<R: BufRead>(
    formula: &Formula,
    reader: R,
    opts: &CheckOptions,
) -> Result<Verdict, ParseError> {
    check_steps(formula, ProofReader::new(reader)?, opts)
}

/// Incremental proof replay.
pub struct Checker<'f> {
    formula: &'f Formula,
    opts: CheckOptions,
    db: ConstraintDb,
    stats: Stats,
    loaded: bool,
    solution_checked: bool,
    outcome: Option<Verdict>,
}

impl<'f> Checker<'f> {
    pub fn new(formula: &'f Formula, opts: CheckOptions) -> Checker<'f> {
        Checker {
            formula,
            opts,
            db: ConstraintDb::new(),
            stats: Stats::default(),
            loaded: false,
            solution_checked: false,
            outcome: None,
        }
    }

    pub fn db(&self) -> &ConstraintDb {
        &self.db
    }

    /// Replays one top-level step. Returns `false` once the proof has been
    /// rejected; any step after a conclusion is a rejection.
    pub fn step(&mut self, located: &Located) -> bool {
        if let Some(done) = &self.outcome {
            if done.status != Status::Rejected {
                let line = located.line;
                self.reject(line, "step after conclusion");
            }
            return false;
        }
        if let Err(e) = self.top_level(located) {
            self.reject(e.line, e.message);
            return false;
        }
        true
    }

    pub fn finish(mut self) -> Verdict {
        self.stats.max_live = self.db.max_live();
        match self.outcome.take() {
            Some(mut v) => {
                v.stats = self.stats;
                v
            }
            None => Verdict {
                status: Status::Rejected,
                detail: "proof has no conclusion".into(),
                failed_line: None,
                stats: self.stats,
            },
        }
    }

    fn reject(&mut self, line: usize, detail: impl Into<String>) {
        self.outcome = Some(Verdict {
            status: Status::Rejected,
            detail: detail.into(),
            failed_line: Some(line),
            stats: Stats::default(),
        });
    }

    fn top_level(&mut self, located: &Located) -> Result<(), StepError> {
        let line = located.line;
        match &located.step {
            ProofStep::LoadFormula(count) => {
                self.count("f");
                if self.loaded {
                    return Err(StepError::at(line, "formula loaded twice"));
                }
                if let Some(n) = count {
                    if *n != self.formula.len() {
                        return Err(StepError::at(
                            line,
                            format!("proof expects {n} formula constraints, formula has {}", self.formula.len()),
                        ));
                    }
                }
                for c in &self.formula.constraints {
                    self.db.insert(c.normalize());
                    self.stats.constraints_created += 1;
                }
                self.loaded = true;
                Ok(())
            }
            ProofStep::Output => {
                self.count("output");
                Ok(())
            }
            _ if !self.loaded => Err(StepError::at(line, "formula not loaded (missing `f`)")),
            ProofStep::Conclusion { kind, reference } => {
                self.count("conclusion");
                self.conclude(line, *kind, *reference)
            }
            ProofStep::Sol(lits) => {
                self.count("sol");
                self.check_solution(lits, false).map_err(|e| StepError::at(line, e))
            }
            ProofStep::SolImplied(lits) => {
                self.count("soli");
                self.check_solution(lits, true).map_err(|e| StepError::at(line, e))
            }
            _ => self.apply(located),
        }
    }

    fn conclude(
        &mut self,
        line: usize,
        kind: ConclusionKind,
        reference: Option<ConstraintId>,
    ) -> Result<(), StepError> {
        let verdict = match kind {
            ConclusionKind::Unsat => {
                let Some(found) = self.db.contradiction() else {
                    return Err(StepError::at(line, "conclusion UNSAT without a derived contradiction"));
                };
                if let Some(id) = reference {
                    let c = self.db.lookup(id).map_err(|e| StepError::at(line, e))?;
                    if !c.is_contradiction() {
                        return Err(StepError::at(line, format!("constraint {id} is not a contradiction")));
                    }
                }
                Verdict {
                    status: Status::VerifiedUnsat,
                    detail: format!("contradiction derived as constraint {}", reference.unwrap_or(found)),
                    failed_line: None,
                    stats: Stats::default(),
                }
            }
            ConclusionKind::Sat => {
                if !self.solution_checked {
                    return Err(StepError::at(line, "conclusion SAT without a checked solution"));
                }
                Verdict {
                    status: Status::VerifiedSat,
                    detail: "logged solution satisfies the formula".into(),
                    failed_line: None,
                    stats: Stats::default(),
                }
            }
            ConclusionKind::Bounds => {
                return Err(StepError::at(line, "unsupported: optimization conclusions"))
            }
        };
        self.outcome = Some(verdict);
        Ok(())
    }

    fn count(&mut self, rule: &str) {
        self.stats.steps_replayed += 1;
        *self.stats.rule_counts.entry(rule.to_string()).or_default() += 1;
    }

    fn count_op(&mut self, op: &str) {
        *self.stats.rule_counts.entry(format!("pol:{op}")).or_default() += 1;
    }

    fn insert(&mut self, c: Constraint) -> ConstraintId {
        self.stats.constraints_created += 1;
        self.db.insert(c)
    }

    /// Replays a derivation step; shared by the top level and subproofs.
    fn apply(&mut self, located: &Located) -> Result<(), StepError> {
        let line = located.line;
        let at = |e: RuleViolation| StepError::at(line, e);
        match &located.step {
            ProofStep::Pol(ops) => {
                self.count("pol");
                let c = self.eval_pol(ops).map_err(at)?;
                self.insert(c);
            }
            ProofStep::Rup { target, hints, .. } => {
                self.count("rup");
                self.check_rup(target, hints).map_err(at)?;
            }
            ProofStep::Pbc { target, subproof } => {
                self.count("pbc");
                self.check_pbc(line, target, subproof)?;
            }
            ProofStep::Red(r) => {
                self.count("red");
                self.check_red(line, &r.target, &r.witness, &r.goals)?;
            }
            ProofStep::Dom(r) => {
                self.count("dom");
                self.check_red(line, &r.target, &r.witness, &r.goals)?;
            }
            ProofStep::Del(ids) => {
                self.count("del");
                for &id in ids {
                    self.db.delete(id).map_err(at)?;
                    self.stats.constraints_deleted += 1;
                }
            }
            ProofStep::Weaken { id, var } => {
                self.count("weaken");
                let c = self.db.lookup(*id).map_err(at)?.weaken(*var);
                self.insert(c);
            }
            other => {
                return Err(StepError::at(
                    line,
                    format!("`{}` is not allowed here", other.rule_name()),
                ))
            }
        }
        Ok(())
    }

    /// Evaluates a reverse-Polish cutting-planes expression.
    pub fn eval_pol(&mut self, ops: &[PolOp]) -> Result<Constraint, RuleViolation> {
        let mut stack: Vec<Constraint> = Vec::new();
        fn pop(stack: &mut Vec<Constraint>, op: &str) -> Result<Constraint, RuleViolation> {
            stack
                .pop()
                .ok_or_else(|| RuleViolation::new(format!("stack underflow at `{op}`")))
        }
        for op in ops {
            match op {
                PolOp::Id(id) => stack.push(self.db.lookup(*id)?.clone()),
                PolOp::Axiom(l) => stack.push(Constraint::literal_axiom(*l)),
                PolOp::Add => {
                    self.count_op("+");
                    let b = pop(&mut stack, "+")?;
                    let a = pop(&mut stack, "+")?;
                    stack.push(a.add(&b));
                }
                PolOp::Multiply(k) => {
                    self.count_op("*");
                    let a = pop(&mut stack, "*")?;
                    stack.push(a.multiply(k)?);
                }
                PolOp::Divide(k) => {
                    self.count_op("d");
                    let a = pop(&mut stack, "d")?;
                    stack.push(a.divide(k)?);
                }
                PolOp::Saturate => {
                    self.count_op("s");
                    let a = pop(&mut stack, "s")?;
                    stack.push(a.saturate());
                }
                PolOp::Weaken(v) => {
                    self.count_op("w");
                    let a = pop(&mut stack, "w")?;
                    stack.push(a.weaken(*v));
                }
            }
        }
        match stack.len() {
            1 => Ok(stack.pop().expect("one element").normalize()),
            0 => Err(RuleViolation::new("empty pol expression")),
            n => Err(RuleViolation::new(format!("pol leaves {n} constraints on the stack"))),
        }
    }

    /// Reverse unit propagation: the negated target must propagate to a
    /// conflict, first over the hints and then (unless strict) the whole db.
    fn check_rup(
        &mut self,
        target: &Constraint,
        hints: &[ConstraintId],
    ) -> Result<ConstraintId, RuleViolation> {
        let target = target.normalize();
        if rup_holds(&self.db, &target, hints, self.opts.strict_hints)? {
            Ok(self.insert(target))
        } else {
            Err(RuleViolation::new("rup failed: no conflict reached"))
        }
    }

    fn check_pbc(
        &mut self,
        line: usize,
        target: &Constraint,
        subproof: &[Located],
    ) -> Result<ConstraintId, StepError> {
        let target = target.normalize();
        let snap = self.db.snapshot();
        self.insert(target.negate());
        let result = self.replay_block(subproof);
        let closed = self.db.contradiction().is_some();
        self.db.restore(snap);
        result?;
        if !closed {
            return Err(StepError::at(line, "pbc subproof incomplete: no contradiction derived"));
        }
        Ok(self.insert(target))
    }

    fn replay_block(&mut self, steps: &[Located]) -> Result<(), StepError> {
        for s in steps {
            self.apply(s)?;
        }
        Ok(())
    }

    /// Redundance: every constraint touched by the witness, and the target
    /// itself, must hold after substitution given the database and the
    /// negated target.
    fn check_red(
        &mut self,
        line: usize,
        target: &Constraint,
        witness: &Substitution,
        goals: &[Goal],
    ) -> Result<ConstraintId, StepError> {
        let target = target.normalize();

        let mut blocks: HashMap<GoalId, &Goal> = HashMap::new();
        for g in goals {
            if blocks.insert(g.id, g).is_some() {
                return Err(StepError::at(g.line, format!("duplicate proof goal {}", g.id)));
            }
        }

        let live: HashSet<Constraint> = self.db.iter().map(|(_, c)| c.canonical()).collect();
        let mut obligations: Vec<(GoalId, Constraint)> = self
            .db
            .iter()
            .filter(|(_, c)| witness.touches(c))
            .map(|(id, c)| (GoalId::Existing(id), witness.apply(c)))
            .collect();
        obligations.push((GoalId::NewConstraint, witness.apply(&target)));

        let affected: HashSet<GoalId> = obligations.iter().map(|(g, _)| *g).collect();
        if let Some(g) = goals.iter().find(|g| !affected.contains(&g.id)) {
            return Err(StepError::at(
                g.line,
                format!("proof goal {} is not affected by the witness", g.id),
            ));
        }

        let mut explicit: HashMap<GoalId, Constraint> = HashMap::new();
        for (gid, goal) in obligations {
            if blocks.contains_key(&gid) {
                explicit.insert(gid, goal);
            } else if !(goal.is_trivial() || live.contains(&goal.canonical())) {
                return Err(StepError::at(
                    line,
                    format!("uncovered proof goal {gid}: {goal}"),
                ));
            }
        }
        // goal blocks run in the order they are written
        let pending: Vec<(&Goal, Constraint)> = goals
            .iter()
            .map(|g| (g, explicit.remove(&g.id).expect("affected goal")))
            .collect();

        if !pending.is_empty() {
            let outer = self.db.snapshot();
            self.insert(target.negate());
            let mut result = Ok(());
            for (block, goal) in pending {
                let snap = self.db.snapshot();
                self.insert(goal.negate());
                let r = self.replay_block(&block.steps);
                let closed = self.db.contradiction().is_some();
                self.db.restore(snap);
                if let Err(e) = r {
                    result = Err(e);
                    break;
                }
                if !closed {
                    result = Err(StepError::at(
                        block.line,
                        format!("proof goal {} incomplete: no contradiction derived", block.id),
                    ));
                    break;
                }
            }
            self.db.restore(outer);
            result?;
        }
        Ok(self.insert(target))
    }

    /// `sol` / `soli`: the literals (extended by propagation for `soli`,
    /// unlisted variables false) must satisfy every live constraint and every
    /// formula constraint.
    fn check_solution(&mut self, literals: &[Literal], implied: bool) -> Result<(), RuleViolation> {
        let mut rho = PartialAssignment::new();
        for &l in literals {
            if !rho.assign(l) {
                return Err(RuleViolation::new(format!("inconsistent solution: {} listed twice", l.var())));
            }
        }
        if implied {
            let all: Vec<(ConstraintId, &Constraint)> = self.db.iter().collect();
            if let Some(id) = propagate_in_place(&all, &mut rho, |_, _| {}) {
                return Err(RuleViolation::new(format!("solution propagates to a conflict on constraint {id}")));
            }
        }
        let v = rho.to_valuation();
        if let Some((id, _)) = self.db.iter().find(|(_, c)| !c.is_satisfied(&v)) {
            return Err(RuleViolation::new(format!("solution violates constraint {id}")));
        }
        if let Some(i) = self.formula.constraints.iter().position(|c| !c.is_satisfied(&v)) {
            return Err(RuleViolation::new(format!(
                "solution violates formula constraint {}",
                i + 1
            )));
        }
        self.solution_checked = true;
        Ok(())
    }
}

/// Whether `target` follows by reverse unit propagation.
pub fn rup_holds(
    db: &ConstraintDb,
    target: &Constraint,
    hints: &[ConstraintId],
    strict_hints: bool,
) -> Result<bool, RuleViolation> {
    let negated = target.negate();
    let mut rho = PartialAssignment::new();
    let mut list: Vec<(ConstraintId, &Constraint)> = Vec::with_capacity(hints.len() + 1);
    list.push((0, &negated));
    for &h in hints {
        list.push((h, db.lookup(h)?));
    }
    if propagate_in_place(&list, &mut rho, |_, _| {}).is_some() {
        return Ok(true);
    }
    if strict_hints {
        return Ok(false);
    }
    list.truncate(1);
    list.extend(db.iter());
    Ok(propagate_in_place(&list, &mut rho, |_, _| {}).is_some())
}
