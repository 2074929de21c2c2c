//! Helpers shared by the integration tests: a catalogue of small instances,
//! native witness enumeration, random formulas with valid proofs, and
//! single-token proof mutation.

#![allow(dead_code)]

pub mod lemmas;

use pbforge::checker::{CheckOptions, Checker};
use pbforge::encodings::{paley_graph, verify_witness, Graph, ProblemInstance, Witness};
use pbforge::opb::Formula;
use pbforge::pbcore::{Constraint, Term, Var};
use pbforge::proofast::{
    parse_proof, serialize_proof, step_to_string, ConclusionKind, PolOp, Proof, ProofStep,
};
use pbforge::prover::refute;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

/// Resolves a bundled fixture; works from any crate under `crates/`.
pub fn fixture(name: &str) -> PathBuf {
    let crates = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("..");
    crates.join("core").join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// Every family at sizes the brute-force oracle handles (at most 25
/// variables), mixing possible and impossible instances.
pub fn catalogue() -> Vec<ProblemInstance> {
    use ProblemInstance::*;
    let multipartite = |parts: &[usize], k| EquitableColoring {
        graph: Graph::complete_multipartite(parts),
        k,
    };
    let paley = |p, k| IndependentSet {
        graph: paley_graph(p).unwrap(),
        k,
    };
    vec![
        paley(5, 2),
        paley(5, 3),
        paley(13, 3),
        paley(13, 4),
        paley(17, 3),
        paley(17, 4),
        Langford { n: 2 },
        Langford { n: 3 },
        Schur { n: 4, colors: 2 },
        Schur { n: 5, colors: 2 },
        Schur { n: 8, colors: 3 },
        VdW { n: 8, colors: 2, ap_len: 3 },
        VdW { n: 9, colors: 2, ap_len: 3 },
        VdW { n: 16, colors: 2, ap_len: 4 },
        Ramsey { n: 5, s: 3, t: 3 },
        Ramsey { n: 6, s: 3, t: 3 },
        Ramsey { n: 6, s: 3, t: 4 },
        multipartite(&[2, 2, 1], 3),
        multipartite(&[3, 3], 3),
        multipartite(&[3, 3, 1], 3),
        Php { pigeons: 2, holes: 2 },
        Php { pigeons: 3, holes: 2 },
        Php { pigeons: 4, holes: 3 },
        Php { pigeons: 5, holes: 4 },
        BinPacking { sizes: vec![3, 3, 2, 2], bins: 2, capacity: 5 },
        BinPacking { sizes: vec![4, 4, 4], bins: 2, capacity: 7 },
        BinPacking { sizes: vec![5, 4, 3, 2, 1], bins: 3, capacity: 5 },
    ]
}

/// Calls `f` on every vector of length `len` over `0..base` until it
/// returns true.
fn any_vector(len: usize, base: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut v = vec![0; len];
    loop {
        if f(&v) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == len {
                return false;
            }
            v[i] += 1;
            if v[i] < base {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Decides an instance by enumerating native witnesses, without touching
/// its encoding.
pub fn native_witness_exists(inst: &ProblemInstance) -> bool {
    let ok = |w: Witness| verify_witness(inst, &w).unwrap();
    match inst {
        ProblemInstance::IndependentSet { graph, k } => {
            let n = graph.vertex_count();
            (0u64..1 << n).any(|mask| {
                mask.count_ones() as usize == *k
                    && ok(Witness::VertexSet((0..n).filter(|i| mask >> i & 1 == 1).collect()))
            })
        }
        ProblemInstance::Langford { n } => {
            any_vector(2 * n, *n, |v| ok(Witness::Sequence(v.iter().map(|x| x + 1).collect())))
        }
        ProblemInstance::Schur { n, colors } | ProblemInstance::VdW { n, colors, .. } => {
            any_vector(*n, *colors, |v| ok(Witness::Coloring(v.to_vec())))
        }
        ProblemInstance::Ramsey { n, .. } => {
            any_vector(n * (n - 1) / 2, 2, |v| ok(Witness::Coloring(v.to_vec())))
        }
        ProblemInstance::EquitableColoring { graph, k } => {
            any_vector(graph.vertex_count(), *k, |v| ok(Witness::Coloring(v.to_vec())))
        }
        ProblemInstance::Php { pigeons, holes } => {
            any_vector(*pigeons, *holes, |v| ok(Witness::Assignment(v.to_vec())))
        }
        ProblemInstance::BinPacking { sizes, bins, .. } => {
            any_vector(sizes.len(), *bins, |v| ok(Witness::Assignment(v.to_vec())))
        }
    }
}

/// A random formula over `vars` variables mixing clauses with small
/// general PB constraints.
pub fn random_formula(rng: &mut ChaCha8Rng, vars: u32, len: usize) -> Formula {
    let cs = (0..len)
        .map(|_| {
            let width = rng.gen_range(2..=3);
            let mut terms = Vec::new();
            for _ in 0..width {
                let v = Var::from_index(rng.gen_range(1..=vars));
                let lit = if rng.gen() { v.pos() } else { v.neg() };
                terms.push(Term::new(rng.gen_range(1u64..=3), lit));
            }
            let sum: u64 = terms.iter().map(|t| t.coeff.as_u64().unwrap()).sum();
            Constraint::new(terms, rng.gen_range(1..=(sum / 2).max(1)))
        })
        .collect();
    Formula::new(cs)
}

/// A proof in text form: random `pol` derivations, then (when the formula is
/// unsatisfiable) a hinted `rup` refutation that may use them. For
/// satisfiable formulas the proof claims the last `pol` result is a
/// contradiction, which a sound checker must refuse.
pub fn random_proof(rng: &mut ChaCha8Rng, f: &Formula, pols: usize) -> String {
    let m = f.len() as u64;
    let mut lines = vec!["pseudo-Boolean proof version 3.0".to_string(), format!("f {m}")];
    for i in 0..pols as u64 {
        let avail = m + i;
        let a = rng.gen_range(1..=avail);
        let b = rng.gen_range(1..=avail);
        lines.push(match rng.gen_range(0..5) {
            0 => format!("pol {a} {b} +"),
            1 => format!("pol {a} {} * {b} +", rng.gen_range(2..4)),
            2 => format!("pol {a} {b} + {} d", rng.gen_range(2..4)),
            3 => format!("pol {a} {b} + s"),
            _ => {
                let x = rng.gen_range(1..=f.max_var().max(1)) as u32;
                format!("pol {a} ~x{x} + {b} + 2 d")
            }
        });
    }
    let text = lines.join("\n") + "\n";
    let proof = parse_proof(&(text.clone() + "end pseudo-Boolean proof\n"))
        .expect("generated pol steps parse");
    let mut checker = Checker::new(f, CheckOptions::default());
    for step in &proof.steps {
        assert!(checker.step(step), "generated pol step fails: {}", step_to_string(&step.step));
    }
    let mut extended = f.constraints.clone();
    extended.extend((m + 1..=m + pols as u64).map(|id| checker.db().get(id).unwrap().clone()));
    let mut steps: Vec<ProofStep> = proof.steps.into_iter().map(|l| l.step).collect();
    match refute(&Formula::new(extended)) {
        Ok(refutation) => steps.extend(
            refutation
                .steps
                .into_iter()
                .map(|l| l.step)
                .filter(|s| !matches!(s, ProofStep::LoadFormula(_))),
        ),
        Err(_) => steps.push(ProofStep::Conclusion {
            kind: ConclusionKind::Unsat,
            reference: Some(m + pols as u64),
        }),
    }
    serialize_proof(&Proof::new(prune(steps, m)))
}

/// Drops derivations the conclusion does not depend on (through `pol`
/// operands and `rup` hints) and renumbers the rest, so that no step of the
/// proof is dead weight.
pub fn prune(steps: Vec<ProofStep>, m: u64) -> Vec<ProofStep> {
    let mut id_of = vec![None; steps.len()];
    let mut next = m + 1;
    for (i, s) in steps.iter().enumerate() {
        if matches!(s, ProofStep::Pol(_) | ProofStep::Rup { .. }) {
            id_of[i] = Some(next);
            next += 1;
        }
    }
    let mut used = std::collections::HashSet::new();
    for (i, s) in steps.iter().enumerate().rev() {
        match s {
            ProofStep::Conclusion { reference: Some(r), .. } => {
                used.insert(*r);
            }
            ProofStep::Pol(ops) if used.contains(&id_of[i].unwrap()) => {
                used.extend(ops.iter().filter_map(|op| match op {
                    PolOp::Id(id) => Some(*id),
                    _ => None,
                }));
            }
            ProofStep::Rup { hints, .. } if used.contains(&id_of[i].unwrap()) => {
                used.extend(hints.iter().copied());
            }
            _ => {}
        }
    }
    let mut renumber = std::collections::HashMap::new();
    let mut next = m + 1;
    for id in id_of.iter().flatten() {
        if used.contains(id) {
            renumber.insert(*id, next);
            next += 1;
        }
    }
    let map = |id: &u64| *renumber.get(id).unwrap_or(id);
    steps
        .into_iter()
        .zip(id_of)
        .filter_map(|(s, id)| match s {
            _ if id.is_some_and(|id| !used.contains(&id)) => None,
            ProofStep::Pol(ops) => Some(ProofStep::Pol(
                ops.into_iter()
                    .map(|op| match op {
                        PolOp::Id(id) => PolOp::Id(map(&id)),
                        op => op,
                    })
                    .collect(),
            )),
            ProofStep::Rup { target, hints, hinted } => Some(ProofStep::Rup {
                target,
                hints: hints.iter().map(map).collect(),
                hinted,
            }),
            ProofStep::Del(ids) => {
                let ids: Vec<u64> = ids.iter().filter(|id| renumber.contains_key(id)).map(map).collect();
                (!ids.is_empty()).then_some(ProofStep::Del(ids))
            }
            ProofStep::Conclusion { kind, reference } => Some(ProofStep::Conclusion {
                kind,
                reference: reference.as_ref().map(map),
            }),
            s => Some(s),
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Changes one token of a proof body: a number is bumped or replaced, a
/// literal's sign flipped, an operator swapped, or a token dropped. The
/// header line is left alone.
pub fn mutate(rng: &mut ChaCha8Rng, proof: &str) -> Option<String> {
    let lines: Vec<&str> = proof.lines().collect();
    let spots: Vec<(usize, usize)> = lines
        .iter()
        .enumerate()
        .skip(1)
        .flat_map(|(i, l)| (0..l.split_whitespace().count()).map(move |j| (i, j)))
        .collect();
    if spots.is_empty() {
        return None;
    }
    let (li, ti) = spots[rng.gen_range(0..spots.len())];
    let mut tokens: Vec<String> = lines[li].split_whitespace().map(String::from).collect();
    let tok = tokens[ti].clone();
    let replacement = if rng.gen_range(0..8) == 0 {
        None
    } else if let Ok(n) = tok.parse::<u64>() {
        Some(match rng.gen_range(0..3) {
            0 => (n + 1).to_string(),
            1 => n.saturating_sub(1).to_string(),
            _ => rng.gen_range(1..=n + 3).to_string(),
        })
    } else if let Some(rest) = tok.strip_prefix('~') {
        Some(rest.to_string())
    } else if tok.starts_with('x') {
        Some(format!("~{tok}"))
    } else if let Some(c) = tok.strip_prefix('+').and_then(|c| c.parse::<u64>().ok()) {
        Some(format!("+{}", c + 1))
    } else {
        let ops = ["+", "*", "d", "s", "w", ">=", ";", "rup", "pol", "del"];
        Some(ops[rng.gen_range(0..ops.len())].to_string())
    };
    match replacement {
        Some(r) if r == tok => return None,
        Some(r) => tokens[ti] = r,
        None => {
            tokens.remove(ti);
        }
    }
    let mut out: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
    out[li] = tokens.join(" ");
    Some(out.join("\n") + "\n")
}

#[derive(Debug, Default)]
pub struct Campaign {
    pub proofs: usize,
    pub verified_unsat: usize,
    /// Proofs verified although the oracle found the formula satisfiable.
    pub unsound: Vec<String>,
    pub mutants: usize,
    /// Mutants rejected by the checker or by the parser.
    pub killed: usize,
    /// Surviving mutants whose formula the oracle finds satisfiable.
    pub unsound_mutants: Vec<String>,
}

impl Campaign {
    pub fn kill_rate(&self) -> f64 {
        self.killed as f64 / self.mutants.max(1) as f64
    }
}

fn verified_unsat(f: &Formula, text: &str, opts: &CheckOptions) -> bool {
    use pbforge::checker::{check_reader, Status};
    matches!(
        check_reader(f, text.as_bytes(), opts),
        Ok(v) if v.status == Status::VerifiedUnsat
    )
}

/// Checks every (formula, proof) pair and `mutants_per_proof` single-token
/// mutations of each proof, recording verdicts against the oracle.
pub fn soundness_campaign(
    corpus: &[(Formula, String)],
    mutants_per_proof: usize,
    seed: u64,
    opts: &CheckOptions,
) -> Campaign {
    use pbforge::oracle::{brute_force_sat, DEFAULT_VAR_LIMIT};
    let mut rng = rng(seed);
    let mut c = Campaign::default();
    for (f, proof) in corpus {
        let unsat = brute_force_sat(f, DEFAULT_VAR_LIMIT).is_unsat();
        c.proofs += 1;
        if verified_unsat(f, proof, opts) {
            c.verified_unsat += 1;
            if !unsat {
                c.unsound.push(proof.clone());
            }
        }
        for _ in 0..mutants_per_proof {
            let Some(m) = mutate(&mut rng, proof) else { continue };
            c.mutants += 1;
            if verified_unsat(f, &m, opts) {
                if !unsat {
                    c.unsound_mutants.push(m);
                }
            } else {
                c.killed += 1;
            }
        }
    }
    c
}

/// Random formulas with generated proofs, plus every catalogue instance
/// with a proof from the search-based prover (or, when satisfiable, a proof
/// with a bogus conclusion).
pub fn soundness_corpus(random: usize, seed: u64) -> Vec<(Formula, String)> {
    let mut rng = rng(seed);
    let mut corpus = Vec::new();
    for _ in 0..random {
        let vars = rng.gen_range(4..=8);
        let len = rng.gen_range(2 * vars as usize..=4 * vars as usize);
        let f = random_formula(&mut rng, vars, len);
        let pols = rng.gen_range(1..=6);
        let p = random_proof(&mut rng, &f, pols);
        corpus.push((f, p));
    }
    for inst in catalogue() {
        let f = inst.encode().unwrap().formula;
        let p = match refute(&f) {
            Ok(proof) => pbforge::proofast::serialize_proof(&proof),
            Err(_) => format!(
                "pseudo-Boolean proof version 3.0\nf {}\nrup >= 1\nconclusion UNSAT : {}\nend pseudo-Boolean proof\n",
                f.len(),
                f.len() + 1
            ),
        };
        corpus.push((f, p));
    }
    corpus
}
