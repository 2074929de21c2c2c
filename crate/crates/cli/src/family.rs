//! Problem-family arguments shared by `encode`, `witness` and `pipeline`.

use clap::Subcommand;
use pbforge::encodings::{paley_graph, EncodingError, Graph, ProblemInstance, Witness};

#[derive(Subcommand, Debug, Clone)]
pub enum Family {
    /// Independent set of size k in the Paley graph of order p.
    PaleyIs {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
    },
    /// Langford pairing of order n.
    Langford {
        #[arg(long)]
        n: usize,
    },
    /// Coloring of 1..n with no monochromatic a + b = c.
    Schur {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
    /// Two-coloring of 1..n with no monochromatic arithmetic progression.
    Vdw {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long = "ap-len", default_value_t = 3)]
        ap_len: usize,
    },
    /// Edge two-coloring of K_n with no K_s in color 1 and no K_t in color 0.
    Ramsey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Equitable k-coloring of the complete multipartite graph with the
    /// given part sizes.
    Equitable {
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Pigeonhole principle.
    Php {
        #[arg(long)]
        pigeons: usize,
        #[arg(long)]
        holes: usize,
    },
    /// Bin packing.
    Binpacking {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u64>,
        #[arg(long)]
        bins: usize,
        #[arg(long)]
        cap: u64,
    },
}

impl Family {
    pub fn instance(&self) -> Result<ProblemInstance, EncodingError> {
        Ok(match self.clone() {
            Family::PaleyIs { p, k } => ProblemInstance::IndependentSet {
                graph: paley_graph(p)?,
                k,
            },
            Family::Langford { n } => ProblemInstance::Langford { n },
            Family::Schur { n, colors } => ProblemInstance::Schur { n, colors },
            Family::Vdw { n, colors, ap_len } => ProblemInstance::VdW { n, colors, ap_len },
            Family::Ramsey { n, s, t } => ProblemInstance::Ramsey { n, s, t },
            Family::Equitable { parts, k } => ProblemInstance::EquitableColoring {
                graph: Graph::complete_multipartite(&parts),
                k,
            },
            Family::Php { pigeons, holes } => ProblemInstance::Php { pigeons, holes },
            Family::Binpacking { sizes, bins, cap } => ProblemInstance::BinPacking {
                sizes,
                bins,
                capacity: cap,
            },
        })
    }
}

/// Parses a witness written either as a string over `R`/`B` (colors 0 and
/// 1) or as integers separated by commas or spaces.
pub fn parse_witness(instance: &ProblemInstance, spec: &str) -> Result<Witness, String> {
    let spec = spec.trim();
    let values: Vec<usize> = if !spec.is_empty() && spec.chars().all(|c| "RBrb".contains(c)) {
        spec.chars().map(|c| usize::from(c == 'B' || c == 'b')).collect()
    } else {
        spec.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| format!("invalid witness entry `{s}`")))
            .collect::<Result<_, _>>()?
    };
    Ok(match instance {
        ProblemInstance::IndependentSet { .. } => Witness::VertexSet(values),
        ProblemInstance::Langford { .. } => Witness::Sequence(values),
        ProblemInstance::Php { .. } | ProblemInstance::BinPacking { .. } => {
            Witness::Assignment(values)
        }
        _ => Witness::Coloring(values),
    })
}

/// Renders a native witness in the syntax accepted by [`parse_witness`].
pub fn format_witness(w: &Witness) -> String {
    let values = match w {
        Witness::VertexSet(v)
        | Witness::Sequence(v)
        | Witness::Coloring(v)
        | Witness::Assignment(v) => v,
    };
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
