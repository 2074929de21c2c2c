//! The pbcore lemmas as runnable properties, shared by the lemma suite and
//! the acceptance report. Each property runs through its own
//! [`TestRunner`] so callers choose the number of cases.

use pbforge::pbcore::{
    propagate, Constraint, Image, PartialAssignment, Propagation, Substitution, Term, Valuation,
    Var,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const VARS: u32 = 8;
pub const CASES: u32 = 10_000;

pub fn all_valuations() -> impl Iterator<Item = Valuation> {
    (0u32..1 << VARS).map(|bits| Valuation::from_bits((0..VARS).map(|i| bits >> i & 1 == 1)))
}

fn arb_term() -> impl Strategy<Value = Term> {
    (0u64..=16, 1..=VARS, any::<bool>()).prop_map(|(c, v, positive)| {
        let var = Var::from_index(v);
        Term::new(c, if positive { var.pos() } else { var.neg() })
    })
}

fn arb_constraint() -> impl Strategy<Value = Constraint> {
    (prop::collection::vec(arb_term(), 0..=8), 0u64..=48)
        .prop_map(|(terms, degree)| Constraint::new(terms, degree))
}

fn arb_normalized() -> impl Strategy<Value = Constraint> {
    arb_constraint().prop_map(|c| c.normalize())
}

/// Normalized constraints whose degree does not exceed the coefficient sum.
fn arb_attainable() -> impl Strategy<Value = Constraint> {
    (arb_normalized(), 0u64..=100).prop_map(|(c, pct)| {
        let sum = c.coeff_sum().as_u64().unwrap();
        Constraint::new(c.terms.clone(), sum * pct / 100).normalize()
    })
}

fn arb_valuation() -> impl Strategy<Value = Valuation> {
    prop::collection::vec(any::<bool>(), VARS as usize).prop_map(Valuation::from_bits)
}

fn arb_partial() -> impl Strategy<Value = Vec<Option<bool>>> {
    prop::collection::vec(prop::option::of(any::<bool>()), VARS as usize)
}

fn arb_image() -> impl Strategy<Value = Image> {
    prop_oneof![
        any::<bool>().prop_map(Image::Const),
        (1..=VARS, any::<bool>()).prop_map(|(v, p)| {
            let var = Var::from_index(v);
            Image::Lit(if p { var.pos() } else { var.neg() })
        }),
    ]
}

fn arb_substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::btree_map(1..=VARS, arb_image(), 0..=4)
        .prop_map(|m| m.into_iter().map(|(v, i)| (Var::from_index(v), i)).collect())
}

fn sat(c: &Constraint, v: &Valuation) -> bool {
    c.is_satisfied(v)
}

type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

macro_rules! property {
    ($cases:expr, $strategy:expr, |$pat:pat_param| $body:block) => {
        runner($cases)
            .run(&$strategy, |$pat| {
                $body
                Ok(())
            })
            .map_err(|e| e.to_string())
    };
}

pub fn add_sat(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), arb_constraint(), arb_valuation()), |(a, b, v)| {
        if sat(&a, &v) && sat(&b, &v) {
            prop_assert!(sat(&a.add(&b), &v));
        }
    })
}

pub fn mul_sat(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), 1u64..=8, arb_valuation()), |(c, k, v)| {
        if sat(&c, &v) {
            prop_assert!(sat(&c.multiply(&k.into()).unwrap(), &v));
        }
    })
}

pub fn div_sat(cases: u32) -> Outcome {
    property!(cases, (arb_normalized(), 1u64..=8), |(c, k)| {
        let d = c.divide(&k.into()).unwrap();
        for v in all_valuations() {
            if sat(&c, &v) {
                prop_assert!(sat(&d, &v), "{c} / {k} = {d}");
            }
        }
    })
}

pub fn saturate_sat(cases: u32) -> Outcome {
    property!(cases, arb_normalized(), |c| {
        let s = c.saturate();
        for v in all_valuations() {
            if sat(&c, &v) {
                prop_assert!(sat(&s, &v), "saturate({c}) = {s}");
            }
        }
    })
}

pub fn normalize_equivalence(cases: u32) -> Outcome {
    property!(cases, arb_constraint(), |c| {
        let n = c.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        for v in all_valuations() {
            prop_assert_eq!(sat(&c, &v), sat(&n, &v), "{} vs {}", c, n);
        }
    })
}

pub fn negate_exact(cases: u32) -> Outcome {
    property!(cases, arb_attainable(), |c| {
        let n = c.negate();
        for v in all_valuations() {
            prop_assert_eq!(sat(&n, &v), !sat(&c, &v), "{} vs {}", c, n);
        }
    })
}

pub fn contra_unsat(cases: u32) -> Outcome {
    property!(cases, arb_constraint(), |c| {
        if c.is_contradiction() {
            for v in all_valuations() {
                prop_assert!(!sat(&c, &v));
            }
        }
    })
}

pub fn weaken_implication(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), 1..=VARS, arb_valuation()), |(c, x, v)| {
        if sat(&c, &v) {
            prop_assert!(sat(&c.weaken(Var::from_index(x)), &v));
        }
    })
}

pub fn propagation_forces(cases: u32) -> Outcome {
    property!(cases, (arb_normalized(), arb_partial()), |(c, partial)| {
        let mut rho = PartialAssignment::new();
        for (i, value) in partial.iter().enumerate() {
            if let Some(b) = value {
                let x = Var::from_index(i as u32 + 1);
                rho.assign(if *b { x.pos() } else { x.neg() });
            }
        }
        let extends = |v: &Valuation| {
            partial
                .iter()
                .enumerate()
                .all(|(i, p)| p.is_none_or(|b| v.get(Var::from_index(i as u32 + 1)) == b))
        };
        match propagate(&[(1, &c)], rho.clone()) {
            Propagation::Conflict(_) => {
                for v in all_valuations().filter(|v| extends(v)) {
                    prop_assert!(!sat(&c, &v));
                }
            }
            Propagation::Fixpoint(after) => {
                let forced: Vec<_> = after.literals().filter(|l| rho.lit_value(*l).is_none()).collect();
                for v in all_valuations().filter(|v| extends(v) && sat(&c, v)) {
                    for l in &forced {
                        prop_assert_eq!(v.eval_literal(*l), 1, "{} forces {}", c, l);
                    }
                }
            }
        }
    })
}

pub fn subst_rev(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), arb_substitution(), arb_valuation()), |(c, omega, v)| {
        if sat(&omega.apply(&c), &v) {
            prop_assert!(sat(&c, &omega.apply_to_valuation(&v)));
        }
    })
}

pub fn subst_unaffected(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), arb_substitution(), arb_valuation()), |(c, omega, v)| {
        if !omega.touches(&c) && sat(&c, &v) {
            prop_assert!(sat(&c, &omega.apply_to_valuation(&v)));
        }
    })
}

pub fn deterministic(cases: u32) -> Outcome {
    property!(cases, (arb_constraint(), arb_constraint()), |(a, b)| {
        prop_assert_eq!(a.add(&b), a.add(&b));
        prop_assert_eq!(a.normalize().saturate(), a.normalize().saturate());
    })
}

type Lemma = (&'static str, fn(u32) -> Outcome);

/// The eleven lemmas, by name.
pub const LEMMAS: [Lemma; 11] = [
    ("add_sat", add_sat),
    ("mul_sat", mul_sat),
    ("div_sat", div_sat),
    ("saturate_sat", saturate_sat),
    ("normalize_equivalence", normalize_equivalence),
    ("negate_exact", negate_exact),
    ("contra_unsat", contra_unsat),
    ("weaken_implication", weaken_implication),
    ("propagation_forces", propagation_forces),
    ("subst_rev", subst_rev),
    ("subst_unaffected", subst_unaffected),
];

/// Every clause and cardinality constraint over three variables, swept
/// against every valuation, so the lemmas are also checked exhaustively on a
/// small closed family rather than only on samples.
pub fn exhaustive_small_family() {
    let lits: Vec<_> = (1..=3)
        .flat_map(|i| [Var::from_index(i).pos(), Var::from_index(i).neg()])
        .collect();
    let mut family = Vec::new();
    for mask in 0u32..1 << lits.len() {
        let chosen: Vec<_> = (0..lits.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| lits[i])
            .collect();
        for d in 0..=chosen.len() as u64 + 1 {
            family.push(Constraint::cardinality(chosen.clone(), d).normalize());
        }
    }
    let vals: Vec<Valuation> = (0u32..8)
        .map(|b| Valuation::from_bits((0..3).map(|i| b >> i & 1 == 1)))
        .collect();
    for a in &family {
        for v in &vals {
            assert_eq!(a.is_satisfied(v), a.normalize().is_satisfied(v));
            if a.degree <= a.coeff_sum() {
                assert_eq!(a.negate().is_satisfied(v), !a.is_satisfied(v));
            }
            if a.is_contradiction() {
                assert!(!a.is_satisfied(v));
            }
        }
        for b in family.iter().step_by(7) {
            let sum = a.add(b);
            for v in &vals {
                if a.is_satisfied(v) && b.is_satisfied(v) {
                    assert!(sum.is_satisfied(v));
                }
            }
        }
    }
}
