//! Encodings against native witness enumeration: an instance's formula is
//! satisfiable exactly when a native witness exists, and models decode to
//! witnesses the native checker accepts.

mod common;

use common::{catalogue, native_witness_exists};
use pbforge::encodings::{decode_model, paley_graph, verify_witness, witness_valuation, Graph, ProblemInstance};
use pbforge::oracle::{brute_force_sat, max_independent_set, SatStatus, DEFAULT_MIS_LIMIT};
use rand::{Rng, SeedableRng};

#[test]
fn oracle_agrees_with_native_witnesses() {
    for inst in catalogue() {
        let enc = inst.encode().unwrap();
        assert!(enc.num_vars() <= 25, "{inst:?}");
        let result = brute_force_sat(&enc.formula, 25);
        let native = native_witness_exists(&inst);
        match &result.status {
            SatStatus::Sat(model) => {
                assert!(native, "{inst:?}: oracle SAT but no native witness");
                let w = decode_model(&inst, model);
                assert!(verify_witness(&inst, &w).unwrap(), "{inst:?}: decoded {w:?}");
                let back = witness_valuation(&inst, &w).unwrap();
                assert!(enc.formula.constraints.iter().all(|c| c.is_satisfied(&back)));
            }
            SatStatus::Unsat => assert!(!native, "{inst:?}: oracle UNSAT but a witness exists"),
            SatStatus::TooLarge => panic!("{inst:?} too large"),
        }
    }
}

#[test]
fn catalogue_has_both_verdicts_per_family() {
    let mut seen = std::collections::BTreeMap::<&str, (bool, bool)>::new();
    for inst in catalogue() {
        let e = seen.entry(inst.family()).or_default();
        if native_witness_exists(&inst) {
            e.0 = true
        } else {
            e.1 = true
        }
    }
    assert_eq!(seen.len(), 8);
    for (family, (sat, unsat)) in seen {
        assert!(sat && unsat, "{family} lacks a SAT or UNSAT instance");
    }
}

fn random_graph(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.35) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

#[test]
fn independence_number_matches_encoding() {
    let mut graphs: Vec<Graph> = [5, 13, 17].iter().map(|&p| paley_graph(p).unwrap()).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let n = rng.gen_range(1..=12);
        graphs.push(random_graph(&mut rng, n));
    }
    for g in graphs {
        let (alpha, set) = max_independent_set(&g, DEFAULT_MIS_LIMIT).unwrap();
        assert!(g.is_independent(&set) && set.len() == alpha);
        for k in 1..=g.vertex_count() {
            let inst = ProblemInstance::IndependentSet { graph: g.clone(), k };
            let sat = brute_force_sat(&inst.encode().unwrap().formula, 25).is_sat();
            assert_eq!(sat, alpha >= k, "n={} k={k} alpha={alpha}", g.vertex_count());
        }
    }
}
