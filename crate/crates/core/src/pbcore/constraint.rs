use super::assignment::{PartialAssignment, Valuation};
use super::coeff::Coeff;
use super::literal::{Literal, Var};
use super::RuleViolation;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;

/// A weighted literal `a·ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub lit: Literal,
}

impl Term {
    pub fn new(coeff: impl Into<Coeff>, lit: Literal) -> Term {
        Term {
            coeff: coeff.into(),
            lit,
        }
    }
}

/// `Σ aᵢ·ℓᵢ ≥ degree` with non-negative coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Constraint {
    pub terms: Vec<Term>,
    pub degree: Coeff,
}

/// Σ coefficient × literal value.
pub fn eval_sum(v: &Valuation, terms: &[Term]) -> Coeff {
    terms
        .iter()
        .filter(|t| v.eval_literal(t.lit) == 1)
        .map(|t| &t.coeff)
        .sum()
}

pub fn coeff_sum(terms: &[Term]) -> Coeff {
    terms.iter().map(|t| &t.coeff).sum()
}

impl Constraint {
    pub fn new(terms: Vec<Term>, degree: impl Into<Coeff>) -> Constraint {
        Constraint {
            terms,
            degree: degree.into(),
        }
    }

    /// `ℓ₁ + … + ℓₖ ≥ 1`.
    pub fn clause(lits: impl IntoIterator<Item = Literal>) -> Constraint {
        Constraint::new(lits.into_iter().map(|l| Term::new(1u64, l)).collect(), 1u64)
    }

    /// `ℓ₁ + … + ℓₖ ≥ degree`.
    pub fn cardinality(lits: impl IntoIterator<Item = Literal>, degree: u64) -> Constraint {
        Constraint::new(lits.into_iter().map(|l| Term::new(1u64, l)).collect(), degree)
    }

    /// `1·ℓ ≥ 0`, true under every valuation.
    pub fn literal_axiom(lit: Literal) -> Constraint {
        Constraint::new(vec![Term::new(1u64, lit)], 0u64)
    }

    pub fn coeff_sum(&self) -> Coeff {
        coeff_sum(&self.terms)
    }

    pub fn eval_sum(&self, v: &Valuation) -> Coeff {
        eval_sum(v, &self.terms)
    }

    pub fn is_satisfied(&self, v: &Valuation) -> bool {
        self.degree <= self.eval_sum(v)
    }

    /// Degree zero: satisfied by every valuation.
    pub fn is_trivial(&self) -> bool {
        self.degree.is_zero()
    }

    /// `coeff_sum < degree`: violated by every valuation.
    pub fn is_contradiction(&self) -> bool {
        self.coeff_sum() < self.degree
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.iter().map(|t| t.lit.var())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.vars().max()
    }

    /// Merges duplicate literals, cancels complementary pairs and drops zero
    /// coefficients. Terms keep the first-occurrence order of their variable.
    pub fn normalize(&self) -> Constraint {
        // (var, positive coefficient, negative coefficient)
        let mut slots: Vec<(Var, Coeff, Coeff)> = Vec::with_capacity(self.terms.len());
        let mut index: HashMap<Var, usize> = HashMap::with_capacity(self.terms.len());
        for t in &self.terms {
            let var = t.lit.var();
            let slot = *index.entry(var).or_insert_with(|| {
                slots.push((var, Coeff::ZERO, Coeff::ZERO));
                slots.len() - 1
            });
            let entry = &mut slots[slot];
            if t.lit.is_positive() {
                entry.1 = entry.1.add(&t.coeff);
            } else {
                entry.2 = entry.2.add(&t.coeff);
            }
        }
        let mut degree = self.degree.clone();
        let mut terms = Vec::with_capacity(slots.len());
        for (var, pos, neg) in slots {
            let cancel = pos.min_of(&neg);
            if !cancel.is_zero() {
                degree = degree.saturating_sub(&cancel);
            }
            let pos = pos.saturating_sub(&cancel);
            let neg = neg.saturating_sub(&cancel);
            if !pos.is_zero() {
                terms.push(Term::new(pos, var.pos()));
            } else if !neg.is_zero() {
                terms.push(Term::new(neg, var.neg()));
            }
        }
        Constraint { terms, degree }
    }

    pub fn is_normalized(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.terms.len());
        self.terms
            .iter()
            .all(|t| !t.coeff.is_zero() && seen.insert(t.lit.var()))
    }

    /// Sum of two constraints, normalized.
    pub fn add(&self, other: &Constraint) -> Constraint {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        terms.extend(self.terms.iter().cloned());
        terms.extend(other.terms.iter().cloned());
        Constraint {
            terms,
            degree: self.degree.add(&other.degree),
        }
        .normalize()
    }

    pub fn multiply(&self, k: &Coeff) -> Result<Constraint, RuleViolation> {
        if k.is_zero() {
            return Err(RuleViolation::new("multiplication by zero"));
        }
        Ok(Constraint {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(k),
                    lit: t.lit,
                })
                .collect(),
            degree: self.degree.mul(k),
        }
        .normalize())
    }

    /// Ceiling division of every coefficient and the degree. The input is
    /// normalized first.
    pub fn divide(&self, k: &Coeff) -> Result<Constraint, RuleViolation> {
        if k.is_zero() {
            return Err(RuleViolation::new("division by zero"));
        }
        let c = self.normalize();
        Ok(Constraint {
            terms: c
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.div_ceil(k),
                    lit: t.lit,
                })
                .collect(),
            degree: c.degree.div_ceil(k),
        })
    }

    /// Caps every coefficient at the degree. The input is normalized first.
    pub fn saturate(&self) -> Constraint {
        let c = self.normalize();
        let degree = c.degree;
        Constraint {
            terms: c
                .terms
                .into_iter()
                .map(|t| Term {
                    coeff: t.coeff.min_of(&degree),
                    lit: t.lit,
                })
                .collect(),
            degree,
        }
        .normalize()
    }

    /// Drops the term over `var` and lowers the degree by its coefficient.
    pub fn weaken(&self, var: Var) -> Constraint {
        let c = self.normalize();
        let mut degree = c.degree;
        let mut terms = Vec::with_capacity(c.terms.len());
        for t in c.terms {
            if t.lit.var() == var {
                degree = degree.saturating_sub(&t.coeff);
            } else {
                terms.push(t);
            }
        }
        Constraint { terms, degree }
    }

    /// `Σ aᵢ·¬ℓᵢ ≥ Σ aᵢ − d + 1`, with the degree floored at zero.
    pub fn negate(&self) -> Constraint {
        let c = self.normalize();
        let degree = c.coeff_sum().add(&Coeff::ONE).saturating_sub(&c.degree);
        Constraint {
            terms: c
                .terms
                .into_iter()
                .map(|t| Term {
                    coeff: t.coeff,
                    lit: !t.lit,
                })
                .collect(),
            degree,
        }
    }

    /// Sum of coefficients of literals not falsified by `rho`, minus the degree.
    pub fn slack(&self, rho: &PartialAssignment) -> BigInt {
        let available: Coeff = self
            .terms
            .iter()
            .filter(|t| !rho.is_falsified(t.lit))
            .map(|t| &t.coeff)
            .sum();
        available.to_bigint() - self.degree.to_bigint()
    }

    /// Terms sorted by variable, for order-insensitive comparison.
    pub fn canonical(&self) -> Constraint {
        let mut c = self.normalize();
        c.terms.sort_by_key(|t| t.lit.var());
        c
    }
}

impl fmt::Display for Constraint {
    /// OPB term syntax without the terminating `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            write!(f, "+{} {} ", t.coeff, t.lit)?;
        }
        write!(f, ">= {}", self.degree)
    }
}
