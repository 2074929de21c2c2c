//! Pseudo-Boolean encodings of eight combinatorial families, plus native
//! checkers for the witnesses that show an instance is possible.
//!
//! Every encoder numbers its variables densely from 1 and documents the index
//! function in the returned [`Encoded::index_map`] so the mapping can be
//! written next to the formula.

mod families;
mod graph;
mod witness;

pub use families::*;
pub use graph::{paley_graph, Graph};
pub use witness::{decode_model, verify_witness, witness_valuation, Witness};

use crate::opb::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> EncodingError {
    EncodingError::InvalidInstance(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemInstance {
    IndependentSet { graph: Graph, k: usize },
    Langford { n: usize },
    Schur { n: usize, colors: usize },
    VdW { n: usize, colors: usize, ap_len: usize },
    Ramsey { n: usize, s: usize, t: usize },
    EquitableColoring { graph: Graph, k: usize },
    Php { pigeons: usize, holes: usize },
    BinPacking { sizes: Vec<u64>, bins: usize, capacity: u64 },
}

impl ProblemInstance {
    pub fn family(&self) -> &'static str {
        match self {
            ProblemInstance::IndependentSet { .. } => "independent-set",
            ProblemInstance::Langford { .. } => "langford",
            ProblemInstance::Schur { .. } => "schur",
            ProblemInstance::VdW { .. } => "vdw",
            ProblemInstance::Ramsey { .. } => "ramsey",
            ProblemInstance::EquitableColoring { .. } => "equitable",
            ProblemInstance::Php { .. } => "php",
            ProblemInstance::BinPacking { .. } => "binpacking",
        }
    }

    pub fn encode(&self) -> Result<Encoded, EncodingError> {
        match self {
            ProblemInstance::IndependentSet { graph, k } => encode_independent_set(graph, *k),
            ProblemInstance::Langford { n } => encode_langford(*n),
            ProblemInstance::Schur { n, colors } => encode_schur(*n, *colors),
            ProblemInstance::VdW { n, colors, ap_len } => encode_vdw(*n, *colors, *ap_len),
            ProblemInstance::Ramsey { n, s, t } => encode_ramsey(*n, *s, *t),
            ProblemInstance::EquitableColoring { graph, k } => encode_equitable(graph, *k),
            ProblemInstance::Php { pigeons, holes } => encode_php(*pigeons, *holes),
            ProblemInstance::BinPacking {
                sizes,
                bins,
                capacity,
            } => encode_binpacking(sizes, *bins, *capacity),
        }
    }
}

/// An encoded instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub formula: Formula,
    pub family: &'static str,
    /// `name=value` pairs describing the instance.
    pub parameters: Vec<(String, String)>,
    /// How variable indices map back to the problem.
    pub index_map: String,
}

impl Encoded {
    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn num_constraints(&self) -> usize {
        self.formula.len()
    }

    /// Comment lines suitable for an OPB header.
    pub fn comments(&self) -> Vec<String> {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        vec![
            format!("family: {}", self.family),
            format!("parameters: {}", params.join(" ")),
            format!("variables: {}", self.index_map),
        ]
    }
}
