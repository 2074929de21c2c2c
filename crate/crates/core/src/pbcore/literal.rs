use std::fmt;
use std::ops::Not;

/// A Boolean variable, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Returns `None` for index 0.
    pub fn new(index: u32) -> Option<Var> {
        (index >= 1).then_some(Var(index))
    }

    /// Panics on index 0.
    pub fn from_index(index: u32) -> Var {
        Var::new(index).expect("variable indices start at 1")
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Literal {
        Literal::positive(self)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Literal {
        Literal::negative(self)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A variable or its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    polarity: Polarity,
}

impl Literal {
    pub fn new(var: Var, polarity: Polarity) -> Literal {
        Literal { var, polarity }
    }

    pub fn positive(var: Var) -> Literal {
        Literal::new(var, Polarity::Positive)
    }

    pub fn negative(var: Var) -> Literal {
        Literal::new(var, Polarity::Negative)
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn polarity(self) -> Polarity {
        self.polarity
    }

    pub fn is_positive(self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn complement(self) -> Literal {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Literal { var: self.var, polarity }
    }

    /// The truth value of this literal when its variable takes `value`.
    pub fn eval_with(self, value: bool) -> bool {
        value == self.is_positive()
    }

    /// Parses `xN` or `~xN`.
    pub fn parse(token: &str) -> Option<Literal> {
        let (negated, rest) = match token.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let digits = rest.strip_prefix('x')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let var = Var::new(digits.parse().ok()?)?;
        Some(if negated { var.neg() } else { var.pos() })
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.complement()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.var)
        } else {
            write!(f, "~{}", self.var)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literals() {
        assert_eq!(Literal::parse("x12"), Some(Var::from_index(12).pos()));
        assert_eq!(Literal::parse("~x3"), Some(Var::from_index(3).neg()));
        assert_eq!(Literal::parse("x0"), None);
        assert_eq!(Literal::parse("x"), None);
        assert_eq!(Literal::parse("y1"), None);
        assert_eq!(Literal::parse("~~x1"), None);
        assert_eq!(Literal::parse("x+1"), None);
    }

    #[test]
    fn complement_is_involution() {
        let l = Var::from_index(4).neg();
        assert_eq!(l.complement().complement(), l);
        assert_eq!(!l, Var::from_index(4).pos());
        assert_eq!(l.to_string(), "~x4");
    }
}
