//! Pseudo-Boolean constraints and the cutting-planes algebra.
//!
//! A constraint is `Σ aᵢ·ℓᵢ ≥ d` with natural-number coefficients. Every
//! operation that lowers a degree floors it at zero, so a constraint whose
//! degree would go negative becomes trivially true. Operations that combine
//! constraints return normalized results.

mod assignment;
mod coeff;
mod constraint;
mod literal;
mod propagate;
mod substitution;

pub use assignment::{PartialAssignment, Valuation};
pub use coeff::Coeff;
pub use constraint::{coeff_sum, eval_sum, Constraint, Term};
pub use literal::{Literal, Polarity, Var};
pub use propagate::{propagate, propagate_in_place, Propagation};
pub use substitution::{Image, Substitution};

use thiserror::Error;

/// An inference rule was applied outside its domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct RuleViolation(pub String);

impl RuleViolation {
    pub fn new(msg: impl Into<String>) -> RuleViolation {
        RuleViolation(msg.into())
    }
}
