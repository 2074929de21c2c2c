//! Exhaustive ground truth for small instances.
//!
//! Nothing here is clever: these searches exist so that every other part of
//! the crate can be cross-checked against plain enumeration.

use crate::encodings::Graph;
use crate::opb::Formula;
use crate::pbcore::{Coeff, Valuation, Var};
use thiserror::Error;

pub const DEFAULT_VAR_LIMIT: usize = 25;
pub const DEFAULT_MIS_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatStatus {
    /// The first satisfying valuation in enumeration order.
    Sat(Valuation),
    Unsat,
    TooLarge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub status: SatStatus,
    /// Number of variables searched over (the largest index used).
    pub variables: usize,
    /// Complete assignments that were evaluated.
    pub assignments: u64,
}

impl OracleResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SatStatus::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        self.status == SatStatus::Unsat
    }
}

/// Decides satisfiability by enumerating all `2^N` valuations, `N` being the
/// largest variable index in `f`.
///
/// Enumeration order treats `x1` as the fastest-varying bit with `false`
/// before `true`, so a reported model is the first one in that order.
/// Branches are cut as soon as some constraint can no longer be satisfied,
/// which skips only valuations that would have failed anyway.
pub fn brute_force_sat(f: &Formula, var_limit: usize) -> OracleResult {
    let n = f.max_var();
    if n > var_limit {
        return OracleResult {
            status: SatStatus::TooLarge,
            variables: n,
            assignments: 0,
        };
    }
    let mut search = Search::new(f, n);
    let status = if search.infeasible_at_root() {
        SatStatus::Unsat
    } else if search.dfs(n) {
        let v = Valuation::from_bits(search.values.iter().copied());
        assert!(
            f.constraints.iter().all(|c| c.is_satisfied(&v)),
            "oracle model must satisfy every constraint"
        );
        SatStatus::Sat(v)
    } else {
        SatStatus::Unsat
    };
    OracleResult {
        status,
        variables: n,
        assignments: search.leaves,
    }
}

struct Search<'a> {
    f: &'a Formula,
    // occurrences[v - 1] = (constraint index, coefficient, literal is positive)
    occurrences: Vec<Vec<(usize, Coeff, bool)>>,
    available: Vec<Coeff>,
    values: Vec<bool>,
    leaves: u64,
}

impl<'a> Search<'a> {
    fn new(f: &'a Formula, n: usize) -> Search<'a> {
        let mut occurrences = vec![Vec::new(); n];
        for (ci, c) in f.constraints.iter().enumerate() {
            for t in &c.terms {
                occurrences[t.lit.var().index() as usize - 1].push((
                    ci,
                    t.coeff.clone(),
                    t.lit.is_positive(),
                ));
            }
        }
        Search {
            f,
            occurrences,
            available: f.constraints.iter().map(|c| c.coeff_sum()).collect(),
            values: vec![false; n],
            leaves: 0,
        }
    }

    fn infeasible_at_root(&self) -> bool {
        self.f
            .constraints
            .iter()
            .zip(&self.available)
            .any(|(c, a)| *a < c.degree)
    }

    /// Assigns variables `k, k-1, …, 1`.
    fn dfs(&mut self, k: usize) -> bool {
        if k == 0 {
            self.leaves += 1;
            return true;
        }
        for value in [false, true] {
            self.values[k - 1] = value;
            if self.assign(k, value) && self.dfs(k - 1) {
                return true;
            }
            self.unassign(k, value);
        }
        self.values[k - 1] = false;
        false
    }

    /// Returns `false` if some constraint became unsatisfiable. The update is
    /// applied in full either way so `unassign` can revert it.
    fn assign(&mut self, k: usize, value: bool) -> bool {
        let mut ok = true;
        for (ci, coeff, positive) in &self.occurrences[k - 1] {
            if *positive != value {
                self.available[*ci] = self.available[*ci].saturating_sub(coeff);
                if self.available[*ci] < self.f.constraints[*ci].degree {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, k: usize, value: bool) {
        for (ci, coeff, positive) in &self.occurrences[k - 1] {
            if *positive != value {
                self.available[*ci] = self.available[*ci].add(coeff);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {vertices} vertices, limit is {limit}")]
pub struct TooLarge {
    pub vertices: usize,
    pub limit: usize,
}

/// Exact independence number by branch and bound with a greedy clique-cover
/// bound. Returns the size and the first maximum set found, sorted.
pub fn max_independent_set(g: &Graph, limit: usize) -> Result<(usize, Vec<usize>), TooLarge> {
    let n = g.vertex_count();
    if n > limit || n > 128 {
        return Err(TooLarge {
            vertices: n,
            limit: limit.min(128),
        });
    }
    let mut adj = vec![0u128; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut mis = Mis {
        adj,
        best: Vec::new(),
        current: Vec::new(),
    };
    mis.expand(all);
    let mut best = mis.best;
    best.sort_unstable();
    Ok((best.len(), best))
}

struct Mis {
    adj: Vec<u128>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Mis {
    fn expand(&mut self, cand: u128) {
        if cand == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + self.clique_cover(cand) <= self.best.len() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u128 << v;
        self.current.push(v);
        self.expand(cand & !bit & !self.adj[v]);
        self.current.pop();
        self.expand(cand & !bit);
    }

    /// Number of cliques in a greedy cover of `cand`: an upper bound on the
    /// size of any independent subset.
    fn clique_cover(&self, mut cand: u128) -> usize {
        let mut cliques = 0;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= !(1u128 << u);
            let mut common = cand & self.adj[u];
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                cand &= !(1u128 << w);
                common &= !(1u128 << w) & self.adj[w];
            }
            cliques += 1;
        }
        cliques
    }
}

/// Decodes the model of a SAT result, or `None`.
pub fn model(result: &OracleResult) -> Option<&Valuation> {
    match &result.status {
        SatStatus::Sat(v) => Some(v),
        _ => None,
    }
}

/// The true variables of a valuation, for display.
pub fn true_literals(v: &Valuation) -> Vec<Var> {
    v.true_vars().collect()
}
