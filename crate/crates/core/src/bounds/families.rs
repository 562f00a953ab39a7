use super::homogeneous::is_subgraph_of_homogeneous;
use crate::count::binomial_big;
use crate::error::{EppaError, Result};
use crate::structure::{Graph, Structure};
use crate::Count;

/// Vertex `n - 1` joined to the first `floor((n-1)/2)` of the independent
/// vertices `0..n-1`.
pub fn build_star_pattern_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(EppaError::input("needs at least 2 vertices"));
    }
    let mut g = Graph::empty(n);
    for m in 0..(n - 1) / 2 {
        g.add_edge(m, n - 1)?;
    }
    Ok(g)
}

/// Bipartite graph on `0..2m` with `i < j` adjacent iff `j >= i + m`.
pub fn build_half_graph(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(EppaError::input("half graph needs m >= 1"));
    }
    let mut g = Graph::empty(2 * m);
    for i in 0..2 * m {
        for j in i + m..2 * m {
            g.add_edge(i, j)?;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBounds {
    pub n: usize,
    /// `n(n+2)/8` for even `n`, `(n-1)(n+5)/8` for odd `n`.
    pub lower: Count,
    /// `C(n, 2)`.
    pub upper: Count,
    /// `Some(n)` for `n <= 5`, where the cycle is itself homogeneous.
    pub homogeneous: Option<Count>,
}

impl CycleBounds {
    /// The tightest known interval.
    pub fn effective(&self) -> (Count, Count) {
        match &self.homogeneous {
            Some(h) => (h.clone(), h.clone()),
            None => (self.lower.clone(), self.upper.clone()),
        }
    }
}

impl std::fmt::Display for CycleBounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "lower={} upper={}", self.lower, self.upper)
    }
}

pub fn cycle_bounds(n: usize) -> Result<CycleBounds> {
    if n < 3 {
        return Err(EppaError::input(format!("cycles need n >= 3, got {n}")));
    }
    let m = n as u64;
    let lower = if n.is_multiple_of(2) { m * (m + 2) / 8 } else { (m - 1) * (m + 5) / 8 };
    Ok(CycleBounds {
        n,
        lower: Count::from(lower),
        upper: binomial_big(m, 2),
        homogeneous: (n <= 5).then(|| Count::from(m)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub max_degree: usize,
    /// Largest independent set inside one neighbourhood.
    pub neighbourhood_independence: usize,
    /// `C(ceil(n/(d+1)), k)`; absent for subgraphs of homogeneous graphs.
    pub bound: Option<Count>,
    /// `C(ceil(n/(d+1)), d)` when the graph is triangle-free and regular.
    pub regular_triangle_free_bound: Option<Count>,
    pub homogeneous_subgraph: bool,
}

fn max_independent(g: &Graph, within: &[usize]) -> usize {
    fn rec(g: &Graph, cand: &[usize], size: usize, best: &mut usize) {
        if size + cand.len() <= *best {
            return;
        }
        let Some((&v, rest)) = cand.split_first() else {
            *best = size;
            return;
        };
        let next: Vec<usize> = rest.iter().copied().filter(|&u| !g.has_edge(u, v)).collect();
        rec(g, &next, size + 1, best);
        rec(g, rest, size, best);
    }
    let mut best = 0;
    rec(g, within, 0, &mut best);
    best
}

pub fn degree_bounds(g: &Graph) -> DegreeReport {
    let n = g.order() as u64;
    let d = g.max_degree();
    let k = (0..g.order()).map(|v| max_independent(g, &g.neighbors(v).ones().collect::<Vec<_>>())).max().unwrap_or(0);
    let homogeneous_subgraph = is_subgraph_of_homogeneous(g).is_some();
    let blocks = n.div_ceil(d as u64 + 1);
    let regular = g.order() > 0 && g.min_degree() == d;
    let triangle_free = !crate::search::has_clique(g, 3);
    DegreeReport {
        max_degree: d,
        neighbourhood_independence: k,
        bound: (!homogeneous_subgraph).then(|| binomial_big(blocks, k as u64)),
        regular_triangle_free_bound: (regular && triangle_free && !homogeneous_subgraph)
            .then(|| binomial_big(blocks, d as u64)),
        homogeneous_subgraph,
    }
}
