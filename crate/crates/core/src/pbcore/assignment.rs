use super::literal::{Literal, Var};

/// A total assignment. Variables that were never set read as `false`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    // values[i] is the value of variable i + 1
    values: Vec<bool>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    /// Builds a valuation from the values of `x1, x2, ...` in order.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Valuation {
        Valuation {
            values: bits.into_iter().collect(),
        }
    }

    /// Sets every listed literal true.
    pub fn from_literals(literals: &[Literal]) -> Valuation {
        let mut v = Valuation::new();
        for &l in literals {
            v.set(l.var(), l.is_positive());
        }
        v
    }

    pub fn get(&self, var: Var) -> bool {
        self.values
            .get(var.index() as usize - 1)
            .copied()
            .unwrap_or(false)
    }

    pub fn set(&mut self, var: Var, value: bool) {
        let i = var.index() as usize - 1;
        if i >= self.values.len() {
            if !value {
                return;
            }
            self.values.resize(i + 1, false);
        }
        self.values[i] = value;
    }

    /// Number of explicitly stored slots; every variable above this reads `false`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Variables set to `true`, ascending.
    pub fn true_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Var::from_index(i as u32 + 1))
    }

    /// 1 if the literal is satisfied, 0 otherwise.
    pub fn eval_literal(&self, lit: Literal) -> u8 {
        lit.eval_with(self.get(lit.var())) as u8
    }
}

/// A partial assignment with a trail recording assignment order.
#[derive(Clone, Debug, Default)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
    trail: Vec<Var>,
}

impl PartialAssignment {
    pub fn new() -> PartialAssignment {
        PartialAssignment::default()
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        self.values
            .get(var.index() as usize - 1)
            .copied()
            .flatten()
    }

    /// Truth value of a literal, `None` when unassigned.
    pub fn lit_value(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var()).map(|v| lit.eval_with(v))
    }

    pub fn is_falsified(&self, lit: Literal) -> bool {
        self.lit_value(lit) == Some(false)
    }

    /// Makes `lit` true. Returns `false` without changing anything if the
    /// variable is already assigned the opposite value.
    pub fn assign(&mut self, lit: Literal) -> bool {
        let i = lit.var().index() as usize - 1;
        if i >= self.values.len() {
            self.values.resize(i + 1, None);
        }
        match self.values[i] {
            Some(v) => v == lit.is_positive(),
            None => {
                self.values[i] = Some(lit.is_positive());
                self.trail.push(lit.var());
                true
            }
        }
    }

    pub fn trail(&self) -> &[Var] {
        &self.trail
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    /// Unassigns everything assigned after the trail had length `len`.
    pub fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let var = self.trail.pop().expect("trail longer than len");
            self.values[var.index() as usize - 1] = None;
        }
    }

    /// Extends to a total valuation, unassigned variables become `false`.
    pub fn to_valuation(&self) -> Valuation {
        Valuation::from_bits(self.values.iter().map(|v| v.unwrap_or(false)))
    }

    /// The assigned literals in trail order.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.trail.iter().map(|&var| {
            if self.value(var) == Some(true) {
                var.pos()
            } else {
                var.neg()
            }
        })
    }
}
