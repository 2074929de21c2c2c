//! Slack-based unit propagation over pseudo-Boolean constraints.

use super::assignment::PartialAssignment;
use super::coeff::Coeff;
use super::constraint::Constraint;
use super::literal::Literal;

#[derive(Clone, Debug)]
pub enum Propagation<Id> {
    /// No constraint is violated and nothing more is forced.
    Fixpoint(PartialAssignment),
    /// The first constraint, in caller order, found with negative slack.
    Conflict(Id),
}

/// Propagates `rho` to a fixpoint over `constraints`, visited in the given
/// order on every pass.
pub fn propagate<Id: Copy>(
    constraints: &[(Id, &Constraint)],
    mut rho: PartialAssignment,
) -> Propagation<Id> {
    match propagate_in_place(constraints, &mut rho, |_, _| {}) {
        Some(id) => Propagation::Conflict(id),
        None => Propagation::Fixpoint(rho),
    }
}

/// In-place variant of [`propagate`]. `on_force` is called for every literal
/// assigned, with the id of the constraint that forced it. Returns the
/// conflicting constraint id, if any.
///
/// Constraints must be normalized: forcing a literal of a constraint then
/// never changes that constraint's own slack.
pub fn propagate_in_place<Id: Copy>(
    constraints: &[(Id, &Constraint)],
    rho: &mut PartialAssignment,
    mut on_force: impl FnMut(Id, Literal),
) -> Option<Id> {
    loop {
        let mut changed = false;
        for &(id, c) in constraints {
            match propagate_one(c, rho) {
                Step::Conflict => return Some(id),
                Step::Quiet => {}
                Step::Forced(lits) => {
                    changed = true;
                    for l in lits {
                        on_force(id, l);
                    }
                }
            }
        }
        if !changed {
            return None;
        }
    }
}

enum Step {
    Conflict,
    Quiet,
    Forced(Vec<Literal>),
}

fn propagate_one(c: &Constraint, rho: &mut PartialAssignment) -> Step {
    let available: Coeff = c
        .terms
        .iter()
        .filter(|t| !rho.is_falsified(t.lit))
        .map(|t| &t.coeff)
        .sum();
    if available < c.degree {
        return Step::Conflict;
    }
    let slack = available.saturating_sub(&c.degree);
    let mut forced = Vec::new();
    for t in &c.terms {
        if t.coeff > slack && rho.lit_value(t.lit).is_none() {
            rho.assign(t.lit);
            forced.push(t.lit);
        }
    }
    if forced.is_empty() {
        Step::Quiet
    } else {
        Step::Forced(forced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbcore::{Term, Var};

    fn x(i: u32) -> Var {
        Var::from_index(i)
    }

    #[test]
    fn unit_clash_conflicts_on_second() {
        let c1 = Constraint::clause([x(1).pos()]);
        let c2 = Constraint::clause([x(1).neg()]);
        match propagate(&[(1, &c1), (2, &c2)], PartialAssignment::new()) {
            Propagation::Conflict(id) => assert_eq!(id, 2),
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn large_coefficient_forced() {
        let c = Constraint::new(
            vec![Term::new(3u64, x(1).pos()), Term::new(5u64, x(2).pos())],
            4u64,
        );
        match propagate(&[(1, &c)], PartialAssignment::new()) {
            Propagation::Fixpoint(rho) => {
                assert_eq!(rho.value(x(2)), Some(true));
                assert_eq!(rho.value(x(1)), None);
                assert_eq!(rho.trail().len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_list_is_fixpoint() {
        let mut rho = PartialAssignment::new();
        rho.assign(x(3).neg());
        match propagate::<u64>(&[], rho) {
            Propagation::Fixpoint(rho) => assert_eq!(rho.trail(), &[x(3)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chain_needs_second_pass() {
        // order puts the consumer before the producer
        let c1 = Constraint::clause([x(1).neg(), x(2).pos()]);
        let c2 = Constraint::clause([x(1).pos()]);
        let c3 = Constraint::clause([x(2).neg()]);
        let mut rho = PartialAssignment::new();
        let mut forced = Vec::new();
        let conflict = propagate_in_place(&[(1, &c1), (2, &c2), (3, &c3)], &mut rho, |id, l| {
            forced.push((id, l))
        });
        // c3 fires in the first pass, so c1 is the first to conflict in the second
        assert_eq!(forced, vec![(2, x(1).pos()), (3, x(2).neg())]);
        assert_eq!(conflict, Some(1));
    }
}
