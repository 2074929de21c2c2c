use super::families::{
    binpacking_var, equitable_var, for_each_subset, langford_var, php_var, ramsey_var, schur_var,
};
use super::{EncodingError, ProblemInstance};
use crate::pbcore::{Valuation, Var};

/// A native certificate that an instance is possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Independent set: vertex indices.
    VertexSet(Vec<usize>),
    /// Langford: the `2n` values in position order.
    Sequence(Vec<usize>),
    /// Schur and van der Waerden: color of each element `1..=n`, in order.
    /// Ramsey: color (0 or 1) of each edge in lexicographic order.
    /// Equitable coloring: color of each vertex.
    Coloring(Vec<usize>),
    /// Pigeonhole: hole of each pigeon. Bin packing: bin of each item.
    Assignment(Vec<usize>),
}

fn shape(msg: impl Into<String>) -> EncodingError {
    EncodingError::InvalidWitness(msg.into())
}

fn expect_len(what: &str, got: usize, want: usize) -> Result<(), EncodingError> {
    if got == want {
        Ok(())
    } else {
        Err(shape(format!("{what} has length {got}, expected {want}")))
    }
}

fn bounded(values: &[usize], bound: usize, what: &str) -> Result<(), EncodingError> {
    match values.iter().find(|&&v| v >= bound) {
        Some(v) => Err(shape(format!("{what} {v} out of range 0..{bound}"))),
        None => Ok(()),
    }
}

/// True when all entries are equal.
fn monochromatic(colors: &[usize], elems: impl IntoIterator<Item = usize>) -> bool {
    let mut it = elems.into_iter().map(|e| colors[e]);
    let first = it.next();
    it.all(|c| Some(c) == first)
}

/// Checks the combinatorial property directly, without the encoding.
///
/// Returns `Ok(false)` for a well-shaped witness that fails the property and
/// `Err(InvalidWitness)` when the witness does not fit the instance at all.
pub fn verify_witness(instance: &ProblemInstance, w: &Witness) -> Result<bool, EncodingError> {
    match (instance, w) {
        (ProblemInstance::IndependentSet { graph, k }, Witness::VertexSet(set)) => {
            bounded(set, graph.vertex_count(), "vertex")?;
            Ok(set.len() >= *k && graph.is_independent(set))
        }
        (ProblemInstance::Langford { n }, Witness::Sequence(seq)) => {
            expect_len("sequence", seq.len(), 2 * n)?;
            if seq.iter().any(|&v| v < 1 || v > *n) {
                return Err(shape(format!("sequence values must lie in 1..={n}")));
            }
            Ok((1..=*n).all(|k| {
                let at: Vec<usize> = (0..seq.len()).filter(|&p| seq[p] == k).collect();
                at.len() == 2 && at[1] - at[0] == k + 1
            }))
        }
        (ProblemInstance::Schur { n, colors }, Witness::Coloring(c)) => {
            expect_len("coloring", c.len(), *n)?;
            bounded(c, *colors, "color")?;
            Ok((1..=*n).all(|a| {
                (a..=n.saturating_sub(a)).all(|b| !monochromatic(c, [a - 1, b - 1, a + b - 1]))
            }))
        }
        (ProblemInstance::VdW { n, colors, ap_len }, Witness::Coloring(c)) => {
            expect_len("coloring", c.len(), *n)?;
            bounded(c, *colors, "color")?;
            let l = *ap_len;
            Ok((1..*n).all(|d| {
                (0..*n)
                    .take_while(|a| a + (l - 1) * d < *n)
                    .all(|a| !monochromatic(c, (0..l).map(|i| a + i * d)))
            }))
        }
        (ProblemInstance::Ramsey { n, s, t }, Witness::Coloring(c)) => {
            let n = *n;
            expect_len("edge coloring", c.len(), n * (n - 1) / 2)?;
            bounded(c, 2, "color")?;
            let color = |i: usize, j: usize| c[ramsey_var(n, i.min(j), i.max(j)) - 1];
            let has_clique = |size: usize, want: usize| {
                let mut found = false;
                for_each_subset(n, size, |set| {
                    if !found
                        && set
                            .iter()
                            .enumerate()
                            .all(|(a, &i)| set[a + 1..].iter().all(|&j| color(i, j) == want))
                    {
                        found = true;
                    }
                });
                found
            };
            Ok(!has_clique(*s, 1) && !has_clique(*t, 0))
        }
        (ProblemInstance::EquitableColoring { graph, k }, Witness::Coloring(c)) => {
            let n = graph.vertex_count();
            expect_len("coloring", c.len(), n)?;
            bounded(c, *k, "color")?;
            let proper = graph.edges().iter().all(|&(u, v)| c[u] != c[v]);
            let (lo, hi) = (n / k, n.div_ceil(*k));
            let equitable = (0..*k).all(|col| {
                let size = c.iter().filter(|&&x| x == col).count();
                lo <= size && size <= hi
            });
            Ok(proper && equitable)
        }
        (ProblemInstance::Php { pigeons, holes }, Witness::Assignment(a)) => {
            expect_len("assignment", a.len(), *pigeons)?;
            bounded(a, *holes, "hole")?;
            let mut used = vec![false; *holes];
            Ok(a.iter().all(|&h| !std::mem::replace(&mut used[h], true)))
        }
        (
            ProblemInstance::BinPacking {
                sizes,
                bins,
                capacity,
            },
            Witness::Assignment(a),
        ) => {
            expect_len("assignment", a.len(), sizes.len())?;
            bounded(a, *bins, "bin")?;
            let mut load = vec![0u64; *bins];
            for (i, &b) in a.iter().enumerate() {
                load[b] += sizes[i];
            }
            Ok(load.iter().all(|&l| l <= *capacity))
        }
        (inst, w) => Err(shape(format!(
            "{} instance cannot take a {} witness",
            inst.family(),
            match w {
                Witness::VertexSet(_) => "vertex set",
                Witness::Sequence(_) => "sequence",
                Witness::Coloring(_) => "coloring",
                Witness::Assignment(_) => "assignment",
            }
        ))),
    }
}

/// Translates a native witness into the matching valuation of the encoding's
/// variables. The witness is not checked.
pub fn witness_valuation(instance: &ProblemInstance, w: &Witness) -> Result<Valuation, EncodingError> {
    let mut v = Valuation::new();
    let mut set = |i: usize| v.set(Var::from_index(i as u32), true);
    match (instance, w) {
        (ProblemInstance::IndependentSet { graph, .. }, Witness::VertexSet(s)) => {
            bounded(s, graph.vertex_count(), "vertex")?;
            s.iter().for_each(|&u| set(u + 1));
        }
        (ProblemInstance::Langford { n }, Witness::Sequence(seq)) => {
            expect_len("sequence", seq.len(), 2 * n)?;
            for (p, &k) in seq.iter().enumerate() {
                if k < 1 || k > *n {
                    return Err(shape(format!("sequence values must lie in 1..={n}")));
                }
                set(langford_var(*n, k, p + 1));
            }
        }
        (ProblemInstance::Schur { n, colors }, Witness::Coloring(c)) => {
            expect_len("coloring", c.len(), *n)?;
            bounded(c, *colors, "color")?;
            for (a, &col) in c.iter().enumerate() {
                if *colors > 2 {
                    set(schur_var(*colors, a + 1, col));
                } else if col == 1 {
                    set(a + 1);
                }
            }
        }
        (ProblemInstance::VdW { n, colors, .. }, Witness::Coloring(c)) => {
            expect_len("coloring", c.len(), *n)?;
            bounded(c, *colors, "color")?;
            c.iter().enumerate().filter(|(_, &col)| col == 1).for_each(|(a, _)| set(a + 1));
        }
        (ProblemInstance::Ramsey { n, .. }, Witness::Coloring(c)) => {
            expect_len("edge coloring", c.len(), n * (n - 1) / 2)?;
            bounded(c, 2, "color")?;
            c.iter().enumerate().filter(|(_, &col)| col == 1).for_each(|(e, _)| set(e + 1));
        }
        (ProblemInstance::EquitableColoring { graph, k }, Witness::Coloring(c)) => {
            expect_len("coloring", c.len(), graph.vertex_count())?;
            bounded(c, *k, "color")?;
            c.iter().enumerate().for_each(|(u, &col)| set(equitable_var(*k, u, col)));
        }
        (ProblemInstance::Php { pigeons, holes }, Witness::Assignment(a)) => {
            expect_len("assignment", a.len(), *pigeons)?;
            bounded(a, *holes, "hole")?;
            a.iter().enumerate().for_each(|(i, &h)| set(php_var(*holes, i, h)));
        }
        (ProblemInstance::BinPacking { sizes, bins, .. }, Witness::Assignment(a)) => {
            expect_len("assignment", a.len(), sizes.len())?;
            bounded(a, *bins, "bin")?;
            a.iter().enumerate().for_each(|(i, &b)| set(binpacking_var(*bins, i, b)));
        }
        (inst, _) => {
            return Err(shape(format!("witness kind does not match a {} instance", inst.family())))
        }
    }
    Ok(v)
}

/// Reads a native witness back out of a model of the encoding. Where the
/// encoding allows several true choices the first one is taken.
pub fn decode_model(instance: &ProblemInstance, v: &Valuation) -> Witness {
    let get = |i: usize| v.get(Var::from_index(i as u32));
    let first = |range: std::ops::Range<usize>, var: &dyn Fn(usize) -> usize| {
        range.clone().find(|&c| get(var(c))).unwrap_or(range.end)
    };
    match instance {
        ProblemInstance::IndependentSet { graph, .. } => {
            Witness::VertexSet((0..graph.vertex_count()).filter(|&u| get(u + 1)).collect())
        }
        ProblemInstance::Langford { n } => Witness::Sequence(
            (1..=2 * n)
                .map(|p| first(1..n + 1, &|k| langford_var(*n, k, p)))
                .collect(),
        ),
        ProblemInstance::Schur { n, colors } if *colors > 2 => Witness::Coloring(
            (1..=*n)
                .map(|a| first(0..*colors, &|c| schur_var(*colors, a, c)))
                .collect(),
        ),
        ProblemInstance::Schur { n, .. } | ProblemInstance::VdW { n, .. } => {
            Witness::Coloring((1..=*n).map(|a| get(a) as usize).collect())
        }
        ProblemInstance::Ramsey { n, .. } => {
            Witness::Coloring((1..=n * (n - 1) / 2).map(|e| get(e) as usize).collect())
        }
        ProblemInstance::EquitableColoring { graph, k } => Witness::Coloring(
            (0..graph.vertex_count())
                .map(|u| first(0..*k, &|c| equitable_var(*k, u, c)))
                .collect(),
        ),
        ProblemInstance::Php { pigeons, holes } => Witness::Assignment(
            (0..*pigeons)
                .map(|i| first(0..*holes, &|j| php_var(*holes, i, j)))
                .collect(),
        ),
        ProblemInstance::BinPacking { sizes, bins, .. } => Witness::Assignment(
            (0..sizes.len())
                .map(|i| first(0..*bins, &|j| binpacking_var(*bins, i, j)))
                .collect(),
        ),
    }
}
