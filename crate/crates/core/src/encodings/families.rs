use super::{invalid, Encoded, EncodingError, Graph};
use crate::opb::Formula;
use crate::pbcore::{Constraint, Literal, Term, Var};

fn var(i: usize) -> Var {
    Var::from_index(u32::try_from(i).expect("variable index fits in u32"))
}

fn pos(i: usize) -> Literal {
    var(i).pos()
}

fn neg(i: usize) -> Literal {
    var(i).neg()
}

fn clause(lits: impl IntoIterator<Item = Literal>) -> Constraint {
    let mut lits: Vec<Literal> = lits.into_iter().collect();
    let mut seen = std::collections::HashSet::new();
    lits.retain(|l| seen.insert(*l));
    Constraint::clause(lits)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn finish(
    constraints: Vec<Constraint>,
    num_vars: usize,
    family: &'static str,
    parameters: &[(&str, String)],
    index_map: impl Into<String>,
) -> Encoded {
    let mut formula = Formula::new(constraints);
    formula.declared_vars = formula.declared_vars.max(num_vars);
    Encoded {
        formula,
        family,
        parameters: parameters
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        index_map: index_map.into(),
    }
}

/// Independent set of size at least `k`.
///
/// Variable `v + 1` is true iff vertex `v` is in the set. One clause
/// `~x_u + ~x_v >= 1` per edge, then `sum x_i >= k`.
pub fn encode_independent_set(g: &Graph, k: usize) -> Result<Encoded, EncodingError> {
    let n = g.vertex_count();
    if k < 1 || k > n {
        return Err(invalid(format!("k={k} must lie in 1..={n}")));
    }
    let mut cs: Vec<Constraint> = g
        .edges()
        .iter()
        .map(|&(u, v)| clause([neg(u + 1), neg(v + 1)]))
        .collect();
    cs.push(Constraint::cardinality((1..=n).map(pos), k as u64));
    Ok(finish(
        cs,
        n,
        "independent-set",
        &[("n", n.to_string()), ("edges", g.edges().len().to_string()), ("k", k.to_string())],
        "x(v+1) = vertex v in the set, v in 0..n",
    ))
}

pub fn langford_var(n: usize, k: usize, p: usize) -> usize {
    (k - 1) * 2 * n + p
}

/// Langford pairing of `1..n`, each value twice, copies of `k` placed `k + 1`
/// positions apart.
///
/// Variable `(k-1)*2n + p` says value `k` sits at position `p` (both
/// 1-based). Per value exactly two positions (two cardinality constraints),
/// per position pairwise at-most-one value, and per value a clause forbidding
/// every pair of positions at the wrong distance.
pub fn encode_langford(n: usize) -> Result<Encoded, EncodingError> {
    if n < 1 {
        return Err(invalid("Langford needs n >= 1"));
    }
    let len = 2 * n;
    let mut cs = Vec::new();
    for k in 1..=n {
        cs.push(Constraint::cardinality((1..=len).map(|p| pos(langford_var(n, k, p))), 2));
        cs.push(Constraint::cardinality(
            (1..=len).map(|p| neg(langford_var(n, k, p))),
            len as u64 - 2,
        ));
    }
    for p in 1..=len {
        for a in 1..=n {
            for b in a + 1..=n {
                cs.push(clause([neg(langford_var(n, a, p)), neg(langford_var(n, b, p))]));
            }
        }
    }
    for k in 1..=n {
        for p in 1..=len {
            for q in p + 1..=len {
                if q - p != k + 1 {
                    cs.push(clause([neg(langford_var(n, k, p)), neg(langford_var(n, k, q))]));
                }
            }
        }
    }
    Ok(finish(
        cs,
        n * len,
        "langford",
        &[("n", n.to_string())],
        "x((k-1)*2n+p) = value k at position p, k in 1..=n, p in 1..=2n",
    ))
}

pub fn schur_var(colors: usize, a: usize, c: usize) -> usize {
    if colors == 2 {
        a
    } else {
        (a - 1) * colors + c + 1
    }
}

/// Coloring of `1..n` with no monochromatic `a + b = c`.
///
/// With two colors variable `a` is true iff `a` gets color 1, and each triple
/// `a <= b`, `a + b <= n` gets a not-all-true and a not-all-false clause.
/// With more colors variable `(a-1)*colors + c + 1` means `a` has color `c`
/// (0-based); each element needs at least one color and each triple gets one
/// not-all-`c` clause per color. At-most-one is left out: any model still
/// yields a valid coloring by taking the first true color.
pub fn encode_schur(n: usize, colors: usize) -> Result<Encoded, EncodingError> {
    if n < 2 || colors < 2 {
        return Err(invalid("Schur needs n >= 2 and colors >= 2"));
    }
    let mut triples = Vec::new();
    for a in 1..=n {
        for b in a..=n - a {
            triples.push([a, b, a + b]);
        }
    }
    let mut cs = Vec::new();
    let index_map: String = if colors == 2 {
        for t in &triples {
            cs.push(clause(t.iter().map(|&e| neg(e))));
            cs.push(clause(t.iter().map(|&e| pos(e))));
        }
        "x(a) = element a has color 1, a in 1..=n".into()
    } else {
        for a in 1..=n {
            cs.push(clause((0..colors).map(|c| pos(schur_var(colors, a, c)))));
        }
        for c in 0..colors {
            for t in &triples {
                cs.push(clause(t.iter().map(|&e| neg(schur_var(colors, e, c)))));
            }
        }
        "x((a-1)*colors+c+1) = element a has color c, a in 1..=n, c in 0..colors".into()
    };
    let num_vars = if colors == 2 { n } else { n * colors };
    Ok(finish(
        cs,
        num_vars,
        "schur",
        &[("n", n.to_string()), ("colors", colors.to_string())],
        index_map,
    ))
}

/// Two-coloring of `1..n` with no monochromatic arithmetic progression of
/// length `ap_len`. Variable `a` is true iff `a` gets color 1; each
/// progression gets a not-all-true and a not-all-false clause.
pub fn encode_vdw(n: usize, colors: usize, ap_len: usize) -> Result<Encoded, EncodingError> {
    if colors != 2 {
        return Err(invalid("van der Waerden encoding supports exactly 2 colors"));
    }
    if ap_len < 3 || n < ap_len {
        return Err(invalid("van der Waerden needs n >= ap_len >= 3"));
    }
    let mut cs = Vec::new();
    for d in 1..n {
        for a in 1..=n {
            if a + (ap_len - 1) * d > n {
                break;
            }
            let ap: Vec<usize> = (0..ap_len).map(|i| a + i * d).collect();
            cs.push(clause(ap.iter().map(|&e| neg(e))));
            cs.push(clause(ap.iter().map(|&e| pos(e))));
        }
    }
    Ok(finish(
        cs,
        n,
        "vdw",
        &[("n", n.to_string()), ("colors", "2".into()), ("ap_len", ap_len.to_string())],
        "x(a) = element a has color 1, a in 1..=n",
    ))
}

/// Index of edge `{i, j}` (`i < j`, 0-based vertices) in lexicographic order,
/// plus one.
pub fn ramsey_var(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1) + 1
}

/// Two-coloring of the edges of `K_n` with no `K_s` in color 1 and no `K_t`
/// in color 0. Edge variables are numbered lexicographically.
pub fn encode_ramsey(n: usize, s: usize, t: usize) -> Result<Encoded, EncodingError> {
    if s < 2 || t < 2 || s.max(t) < 3 || n < s.max(t) {
        return Err(invalid("Ramsey needs n >= max(s, t) >= 3 and s, t >= 2"));
    }
    let mut cs = Vec::new();
    let edges_of = |set: &[usize]| -> Vec<usize> {
        let mut out = Vec::new();
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                out.push(ramsey_var(n, i, j));
            }
        }
        out
    };
    for_each_subset(n, s, |set| cs.push(clause(edges_of(set).into_iter().map(neg))));
    for_each_subset(n, t, |set| cs.push(clause(edges_of(set).into_iter().map(pos))));
    Ok(finish(
        cs,
        n * (n - 1) / 2,
        "ramsey",
        &[("n", n.to_string()), ("s", s.to_string()), ("t", t.to_string())],
        "x(e) = edge e has color 1, edges {i<j} of 0..n in lexicographic order from 1",
    ))
}

pub fn equitable_var(k: usize, v: usize, c: usize) -> usize {
    v * k + c + 1
}

/// Proper `k`-coloring whose classes all have size `floor(n/k)` or
/// `ceil(n/k)`.
///
/// Variable `v*k + c + 1` means vertex `v` has color `c` (both 0-based). Per
/// vertex at-least-one plus pairwise at-most-one, per edge and color a
/// conflict clause, per color a lower and an upper cardinality bound.
pub fn encode_equitable(g: &Graph, k: usize) -> Result<Encoded, EncodingError> {
    let n = g.vertex_count();
    if k < 1 || k > n {
        return Err(invalid(format!("k={k} must lie in 1..={n}")));
    }
    let mut cs = Vec::new();
    for v in 0..n {
        cs.push(clause((0..k).map(|c| pos(equitable_var(k, v, c)))));
        for a in 0..k {
            for b in a + 1..k {
                cs.push(clause([neg(equitable_var(k, v, a)), neg(equitable_var(k, v, b))]));
            }
        }
    }
    for &(u, v) in g.edges() {
        for c in 0..k {
            cs.push(clause([neg(equitable_var(k, u, c)), neg(equitable_var(k, v, c))]));
        }
    }
    let (lo, hi) = (n / k, n.div_ceil(k));
    for c in 0..k {
        cs.push(Constraint::cardinality((0..n).map(|v| pos(equitable_var(k, v, c))), lo as u64));
        cs.push(Constraint::cardinality(
            (0..n).map(|v| neg(equitable_var(k, v, c))),
            (n - hi) as u64,
        ));
    }
    Ok(finish(
        cs,
        n * k,
        "equitable",
        &[("n", n.to_string()), ("edges", g.edges().len().to_string()), ("k", k.to_string())],
        "x(v*k+c+1) = vertex v has color c, v in 0..n, c in 0..k",
    ))
}

/// Pigeon `i` in hole `j`, both 0-based.
pub fn php_var(holes: usize, i: usize, j: usize) -> usize {
    i * holes + j + 1
}

/// `pigeons` pigeons in `holes` holes, at most one per hole. Per pigeon an
/// at-least-one clause, per hole pairwise at-most-one clauses.
pub fn encode_php(pigeons: usize, holes: usize) -> Result<Encoded, EncodingError> {
    if pigeons < 1 || holes < 1 {
        return Err(invalid("PHP needs at least one pigeon and one hole"));
    }
    let mut cs = Vec::new();
    for i in 0..pigeons {
        cs.push(clause((0..holes).map(|j| pos(php_var(holes, i, j)))));
    }
    for j in 0..holes {
        for a in 0..pigeons {
            for b in a + 1..pigeons {
                cs.push(clause([neg(php_var(holes, a, j)), neg(php_var(holes, b, j))]));
            }
        }
    }
    Ok(finish(
        cs,
        pigeons * holes,
        "php",
        &[("pigeons", pigeons.to_string()), ("holes", holes.to_string())],
        "x(i*holes+j+1) = pigeon i in hole j, i in 0..pigeons, j in 0..holes",
    ))
}

/// Item `i` in bin `j`, both 0-based.
pub fn binpacking_var(bins: usize, i: usize, j: usize) -> usize {
    i * bins + j + 1
}

/// Packing items of the given sizes into `bins` bins of size `capacity`.
///
/// Per item an at-least-one clause; per bin the capacity bound written as
/// `sum s_i ~x_ij >= sum s_i - capacity`. Placing an item in several bins is
/// allowed, which never helps a packing exist.
pub fn encode_binpacking(sizes: &[u64], bins: usize, capacity: u64) -> Result<Encoded, EncodingError> {
    if sizes.is_empty() || bins < 1 || capacity < 1 {
        return Err(invalid("bin packing needs items, bins >= 1 and capacity >= 1"));
    }
    if sizes.contains(&0) {
        return Err(invalid("item sizes must be positive"));
    }
    let total: u64 = sizes.iter().sum();
    let mut cs = Vec::new();
    for i in 0..sizes.len() {
        cs.push(clause((0..bins).map(|j| pos(binpacking_var(bins, i, j)))));
    }
    for j in 0..bins {
        let terms = sizes
            .iter()
            .enumerate()
            .map(|(i, &s)| Term::new(s, neg(binpacking_var(bins, i, j))))
            .collect();
        cs.push(Constraint::new(terms, total.saturating_sub(capacity)));
    }
    let list: Vec<String> = sizes.iter().map(u64::to_string).collect();
    Ok(finish(
        cs,
        sizes.len() * bins,
        "binpacking",
        &[
            ("sizes", list.join(",")),
            ("bins", bins.to_string()),
            ("capacity", capacity.to_string()),
        ],
        "x(i*bins+j+1) = item i in bin j, i in 0..items, j in 0..bins",
    ))
}
