//! Small proof generators.
//!
//! [`refute`] turns a DPLL search into a kernel proof made only of hinted
//! `rup` clauses and deletions, which is enough to certify the modest
//! instances shipped as fixtures. [`write_synthetic_proof`] emits a long
//! stream of `pol`/`rup` steps for stress-testing the checker.

use crate::opb::Formula;
use crate::pbcore::{propagate_in_place, Constraint, Literal, PartialAssignment, Valuation, Var};
use crate::proofast::{ConclusionKind, ConstraintId, Proof, ProofStep, PolOp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{self, Write};

/// Refutes `f` by exhaustive search, or returns a model.
///
/// Every node of the search tree whose decisions `d1..dk` lead to a conflict
/// becomes the clause `~d1 + ... + ~dk >= 1`, checked by `rup` with the
/// constraints that propagated on the way as hints. An inner node's clause
/// follows from its two children by `rup`, after which the children are
/// deleted, so the number of live derived clauses stays within the depth of
/// the tree. The root clause is the empty contradiction.
pub fn refute(f: &Formula) -> Result<Proof, Valuation> {
    let ids: Vec<(ConstraintId, &Constraint)> = f
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| (i as ConstraintId + 1, c))
        .collect();
    let mut dpll = Dpll {
        constraints: ids,
        num_vars: f.num_vars(),
        rho: PartialAssignment::new(),
        reasons: Vec::new(),
        decisions: Vec::new(),
        steps: vec![ProofStep::LoadFormula(Some(f.len()))],
        next_id: f.len() as ConstraintId + 1,
    };
    let root = dpll.solve()?;
    dpll.steps.push(ProofStep::Conclusion {
        kind: ConclusionKind::Unsat,
        reference: Some(root),
    });
    Ok(Proof::new(dpll.steps))
}

struct Dpll<'f> {
    constraints: Vec<(ConstraintId, &'f Constraint)>,
    num_vars: usize,
    rho: PartialAssignment,
    /// Constraints that forced a literal, in order, along the current path.
    reasons: Vec<ConstraintId>,
    decisions: Vec<Literal>,
    steps: Vec<ProofStep>,
    next_id: ConstraintId,
}

impl Dpll<'_> {
    /// Returns the id of the learned clause for the current decisions.
    fn solve(&mut self) -> Result<ConstraintId, Valuation> {
        let trail = self.rho.trail_len();
        let reasons = self.reasons.len();
        let mut forced = Vec::new();
        let conflict = propagate_in_place(&self.constraints, &mut self.rho, |id, _| forced.push(id));
        self.reasons.extend(forced);
        let result = match conflict {
            Some(conflict) => {
                let mut hints = self.reasons.clone();
                hints.push(conflict);
                let mut seen = std::collections::HashSet::new();
                hints.retain(|h| seen.insert(*h));
                let hints = self.minimize_hints(hints);
                Ok(self.emit_rup(hints))
            }
            None => match (1..=self.num_vars)
                .map(|i| Var::from_index(i as u32))
                .find(|&v| self.rho.value(v).is_none())
            {
                None => Err(self.rho.to_valuation()),
                Some(v) => self.branch(v),
            },
        };
        self.rho.undo_to(trail);
        self.reasons.truncate(reasons);
        result
    }

    fn branch(&mut self, v: Var) -> Result<ConstraintId, Valuation> {
        let mut children = Vec::with_capacity(2);
        for lit in [v.pos(), v.neg()] {
            let trail = self.rho.trail_len();
            self.rho.assign(lit);
            self.decisions.push(lit);
            let child = self.solve();
            self.decisions.pop();
            self.rho.undo_to(trail);
            children.push(child?);
        }
        let id = self.emit_rup(children.clone());
        self.steps.push(ProofStep::Del(children));
        Ok(id)
    }

    /// Greedily drops hints that the conflict does not need.
    fn minimize_hints(&self, mut hints: Vec<ConstraintId>) -> Vec<ConstraintId> {
        let negated = Constraint::clause(self.decisions.iter().map(|&d| !d)).negate();
        let conflicts = |hints: &[ConstraintId]| {
            let mut list = vec![(0, &negated)];
            list.extend(hints.iter().map(|&h| (h, self.constraints[h as usize - 1].1)));
            propagate_in_place(&list, &mut PartialAssignment::new(), |_, _| {}).is_some()
        };
        let mut i = hints.len();
        while i > 0 {
            i -= 1;
            let h = hints.remove(i);
            if !conflicts(&hints) {
                hints.insert(i, h);
            }
        }
        hints
    }

    fn emit_rup(&mut self, hints: Vec<ConstraintId>) -> ConstraintId {
        let target = Constraint::clause(self.decisions.iter().map(|&d| !d));
        self.steps.push(ProofStep::Rup {
            target,
            hints,
            hinted: true,
        });
        self.next_id += 1;
        self.next_id - 1
    }
}

/// Random cutting-planes steps over a fixed formula.
///
/// The formula is a chain of random 3-clauses over `vars` variables with the
/// unit clash `x1 >= 1`, `~x1 >= 1` in front, so every proof ends in a
/// contradiction. See [`write_synthetic_proof`].
pub fn synthetic_formula(vars: u32, clauses: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x1 = Var::from_index(1);
    let mut cs = vec![Constraint::clause([x1.pos()]), Constraint::clause([x1.neg()])];
    while cs.len() < clauses + 2 {
        let mut lits: Vec<Literal> = Vec::new();
        while lits.len() < 3 {
            let v = Var::from_index(rng.gen_range(2..=vars.max(4)));
            if lits.iter().all(|l| l.var() != v) {
                lits.push(if rng.gen() { v.pos() } else { v.neg() });
            }
        }
        cs.push(Constraint::clause(lits));
    }
    Formula::new(cs)
}

/// Writes a kernel proof with `steps` derivation steps (`pol` or `rup`) for
/// [`synthetic_formula`], deleting derived constraints so that at most
/// `window` of them are live at once. The last derivation adds the two unit
/// constraints, yielding `0 >= 1`.
///
/// Returns the id of the contradiction.
pub fn write_synthetic_proof<W: Write>(
    out: &mut W,
    formula: &Formula,
    steps: usize,
    window: usize,
    seed: u64,
) -> io::Result<ConstraintId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = formula.len() as ConstraintId;
    let window = window.max(1);
    writeln!(out, "pseudo-Boolean proof version 3.0")?;
    writeln!(out, "f {m}")?;
    let mut next = m + 1;
    let mut live = std::collections::VecDeque::new();
    for _ in 0..steps.saturating_sub(1) {
        let a = rng.gen_range(3..=m.max(3));
        let b = rng.gen_range(3..=m.max(3));
        match rng.gen_range(0..4) {
            0 => writeln!(out, "pol {a} {b} +")?,
            1 => writeln!(out, "pol {a} {} * {b} + 2 d", rng.gen_range(2..5))?,
            2 => {
                let op = match live.back() {
                    Some(&d) => PolOp::Id(d),
                    None => PolOp::Id(a),
                };
                writeln!(out, "pol {op} {b} + s")?
            }
            _ => {
                // a superset of clause `a` is implied by it alone
                let c = &formula.constraints[a as usize - 1];
                let extra = Var::from_index(rng.gen_range(2..=formula.max_var().max(2) as u32));
                let mut target = c.clone();
                if target.vars().all(|v| v != extra) {
                    target = target.add(&Constraint::new(
                        vec![crate::pbcore::Term::new(1u64, extra.pos())],
                        0u64,
                    ));
                }
                writeln!(out, "rup {target} ; {a}")?
            }
        }
        live.push_back(next);
        next += 1;
        if live.len() > window {
            writeln!(out, "del id {}", live.pop_front().expect("nonempty"))?;
        }
    }
    writeln!(out, "pol 1 2 +")?;
    writeln!(out, "conclusion UNSAT : {next}")?;
    writeln!(out, "end pseudo-Boolean proof")?;
    Ok(next)
}
