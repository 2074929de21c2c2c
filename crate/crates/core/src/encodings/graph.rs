use super::{invalid, EncodingError};
use std::collections::BTreeSet;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, storing each edge once as `(u, v)` with `u < v`.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, EncodingError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(invalid(format!("self-loop on vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) outside 0..{n}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Complete multipartite graph with the given part sizes, vertices
    /// numbered part by part.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let mut part_of = Vec::new();
        for (i, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, size));
        }
        let n = part_of.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// True when the vertices are distinct, in range and pairwise non-adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let distinct: BTreeSet<_> = set.iter().collect();
        distinct.len() == set.len()
            && set.iter().all(|&v| v < self.n)
            && set
                .iter()
                .enumerate()
                .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The Paley graph on `Z_p`: `{i, j}` is an edge iff `j - i` is a nonzero
/// square mod `p`. Requires `p` prime with `p = 1 (mod 4)`, which makes the
/// relation symmetric.
pub fn paley_graph(p: usize) -> Result<Graph, EncodingError> {
    if !is_prime(p) {
        return Err(invalid(format!("Paley order {p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(invalid(format!("Paley order {p} is not 1 mod 4")));
    }
    let mut residue = vec![false; p];
    for i in 1..=(p - 1) / 2 {
        residue[i * i % p] = true;
    }
    let mut edges = Vec::with_capacity(p * (p - 1) / 4);
    for i in 0..p {
        for j in i + 1..p {
            if residue[j - i] {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph { n: p, edges })
}
