use super::assignment::Valuation;
use super::constraint::{Constraint, Term};
use super::literal::{Literal, Var};
use std::collections::BTreeMap;
use std::fmt;

/// What a substituted variable is replaced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Image {
    Const(bool),
    Lit(Literal),
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Const(b) => write!(f, "{}", *b as u8),
            Image::Lit(l) => write!(f, "{l}"),
        }
    }
}

/// A partial map from variables to constants or literals. Lookups are never
/// chained: `x1 -> x2, x2 -> x1` swaps the two variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Image>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Returns the previous image if `var` was already mapped.
    pub fn insert(&mut self, var: Var, image: Image) -> Option<Image> {
        self.map.insert(var, image)
    }

    pub fn get(&self, var: Var) -> Option<Image> {
        self.map.get(&var).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.map.contains_key(&var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Image)> + '_ {
        self.map.iter().map(|(&v, &i)| (v, i))
    }

    pub fn touches(&self, c: &Constraint) -> bool {
        c.vars().any(|v| self.contains(v))
    }

    /// The image of a literal: a constant or another literal.
    pub fn apply_literal(&self, lit: Literal) -> Image {
        match self.get(lit.var()) {
            None => Image::Lit(lit),
            Some(Image::Const(b)) => Image::Const(lit.eval_with(b)),
            Some(Image::Lit(m)) => Image::Lit(if lit.is_positive() { m } else { !m }),
        }
    }

    /// `C|ω`, normalized. A result of degree 0 is returned as the empty `>= 0`.
    pub fn apply(&self, c: &Constraint) -> Constraint {
        let mut degree = c.degree.clone();
        let mut terms = Vec::with_capacity(c.terms.len());
        for t in &c.terms {
            match self.apply_literal(t.lit) {
                Image::Lit(lit) => terms.push(Term {
                    coeff: t.coeff.clone(),
                    lit,
                }),
                Image::Const(true) => degree = degree.saturating_sub(&t.coeff),
                Image::Const(false) => {}
            }
        }
        let c = Constraint { terms, degree }.normalize();
        if c.degree.is_zero() {
            // every trivial constraint gets the same shape
            Constraint::new(Vec::new(), 0u64)
        } else {
            c
        }
    }

    /// `ω(v)`: the valuation that reads each variable through the substitution.
    pub fn apply_to_valuation(&self, v: &Valuation) -> Valuation {
        let top = self
            .map
            .keys()
            .map(|var| var.index() as usize)
            .max()
            .unwrap_or(0)
            .max(v.len());
        Valuation::from_bits((1..=top as u32).map(|i| {
            let var = Var::from_index(i);
            match self.get(var) {
                None => v.get(var),
                Some(Image::Const(b)) => b,
                Some(Image::Lit(m)) => v.eval_literal(m) == 1,
            }
        }))
    }
}

impl fmt::Display for Substitution {
    /// `x1 -> x2 x3 -> 0` (kernel witness syntax).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (var, image) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{var} -> {image}")?;
        }
        Ok(())
    }
}

impl FromIterator<(Var, Image)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Image)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}
