//! The finite homogeneous graphs, up to complementation: `C_5`, the line
//! graph of `K_{3,3}` and disjoint unions of equal cliques.

use crate::error::{EppaError, Result};
use crate::search::find_embedding;
use crate::structure::{Graph, Structure};
use crate::MATERIALIZE_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomogeneousFamily {
    C5,
    /// Line graph of `K_{3,3}`, the 3x3 rook's graph.
    LineK33,
    DisjointCliques { copies: usize, size: usize },
    ComplementOfDisjointCliques { copies: usize, size: usize },
}

impl std::fmt::Display for HomogeneousFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomogeneousFamily::C5 => write!(f, "C5"),
            HomogeneousFamily::LineK33 => write!(f, "L(K33)"),
            HomogeneousFamily::DisjointCliques { copies, size } => write!(f, "{copies}K{size}"),
            HomogeneousFamily::ComplementOfDisjointCliques { copies, size } => write!(f, "co-{copies}K{size}"),
        }
    }
}

impl std::str::FromStr for HomogeneousFamily {
    type Err = EppaError;

    /// `c5`, `lk33`, `cliques:SxT` or `co-cliques:SxT`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || EppaError::input(format!("unknown catalog entry {s:?}"));
        let params = |p: &str| -> Result<(usize, usize)> {
            let (a, b) = p.split_once('x').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        match s.to_ascii_lowercase().as_str() {
            "c5" => Ok(HomogeneousFamily::C5),
            "lk33" | "l(k33)" => Ok(HomogeneousFamily::LineK33),
            other => {
                if let Some(p) = other.strip_prefix("cliques:") {
                    let (copies, size) = params(p)?;
                    Ok(HomogeneousFamily::DisjointCliques { copies, size })
                } else if let Some(p) = other.strip_prefix("co-cliques:") {
                    let (copies, size) = params(p)?;
                    Ok(HomogeneousFamily::ComplementOfDisjointCliques { copies, size })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// `C_5`, `L(K_{3,3})`, and `s K_t` with its complement for `s, t` in `1..=3`.
pub fn homogeneous_catalog() -> Vec<HomogeneousFamily> {
    let mut out = vec![HomogeneousFamily::C5, HomogeneousFamily::LineK33];
    for copies in 1..=3 {
        for size in 1..=3 {
            out.push(HomogeneousFamily::DisjointCliques { copies, size });
            out.push(HomogeneousFamily::ComplementOfDisjointCliques { copies, size });
        }
    }
    out
}

pub fn materialize(entry: HomogeneousFamily) -> Result<Graph> {
    match entry {
        HomogeneousFamily::C5 => Ok(Graph::cycle(5)),
        HomogeneousFamily::LineK33 => Ok(Graph::rook_3x3()),
        HomogeneousFamily::DisjointCliques { copies, size } | HomogeneousFamily::ComplementOfDisjointCliques { copies, size } => {
            if copies == 0 || size == 0 {
                return Err(EppaError::input("copies and size must be positive"));
            }
            let n = copies.saturating_mul(size);
            if n > MATERIALIZE_CAP {
                return Err(EppaError::capacity("catalog graph vertices", n, MATERIALIZE_CAP));
            }
            let g = Graph::disjoint_cliques(copies, size);
            Ok(if matches!(entry, HomogeneousFamily::DisjointCliques { .. }) { g } else { g.complement() })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousEmbedding {
    pub entry: HomogeneousFamily,
    pub host: Graph,
    /// `v -> image`.
    pub embedding: Vec<usize>,
}

/// Components that are all cliques: maps them onto `s K_t` with `t` the
/// largest component.
fn into_cliques(g: &Graph) -> Option<(usize, usize, Vec<usize>)> {
    let comps = g.components();
    if !comps.iter().all(|c| g.is_clique(c)) {
        return None;
    }
    let size = comps.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let mut emb = vec![0; g.order()];
    for (i, c) in comps.iter().enumerate() {
        for (j, &v) in c.iter().enumerate() {
            emb[v] = i * size + j;
        }
    }
    Some((comps.len().max(1), size, emb))
}

/// An induced embedding of `g` into a finite homogeneous graph, if any.
pub fn is_subgraph_of_homogeneous(g: &Graph) -> Option<HomogeneousEmbedding> {
    if let Some((copies, size, embedding)) = into_cliques(g) {
        let entry = HomogeneousFamily::DisjointCliques { copies, size };
        return Some(HomogeneousEmbedding { entry, host: materialize(entry).ok()?, embedding });
    }
    if let Some((copies, size, embedding)) = into_cliques(&g.complement()) {
        let entry = HomogeneousFamily::ComplementOfDisjointCliques { copies, size };
        return Some(HomogeneousEmbedding { entry, host: materialize(entry).ok()?, embedding });
    }
    for entry in [HomogeneousFamily::C5, HomogeneousFamily::LineK33] {
        let host = materialize(entry).expect("fixed graph");
        if g.order() <= host.order() {
            if let Some(embedding) = find_embedding(g, &host, &[]) {
                return Some(HomogeneousEmbedding { entry, host, embedding });
            }
        }
    }
    None
}
