use super::{check_vertex, induced_index, Structure, StructureKind};
use crate::error::{EppaError, Result};
use crate::perm::Perm;
use fixedbitset::FixedBitSet;
use std::fmt;

/// A simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    edges: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], edges: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds from symmetric, loop-free adjacency rows.
    pub(crate) fn from_rows(adj: Vec<FixedBitSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, row)| !row.contains(v) && row.ones().all(|u| adj[u].contains(v))));
        let edges = adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2;
        Graph { adj, edges }
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        check_vertex(self.order(), u)?;
        check_vertex(self.order(), v)?;
        if u == v {
            return Err(EppaError::input(format!("loop at vertex {u}")));
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges += 1;
        Ok(true)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut adj = Vec::with_capacity(n);
        for (v, row) in self.adj.iter().enumerate() {
            let mut c = row.clone();
            c.toggle_range(..);
            c.set(v, false);
            adj.push(c);
        }
        Graph { adj, edges: n * n.saturating_sub(1) / 2 - self.edges }
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.adj[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n + other.order());
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + n, v + n))) {
            g.add_edge(u, v).expect("in range");
        }
        g
    }

    // Named families.

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("valid star")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    /// `copies` disjoint copies of `K_size`.
    pub fn disjoint_cliques(copies: usize, size: usize) -> Graph {
        let mut g = Graph::empty(copies * size);
        for c in 0..copies {
            for i in 0..size {
                for j in i + 1..size {
                    g.add_edge(c * size + i, c * size + j).expect("valid");
                }
            }
        }
        g
    }

    /// Line graph of `K_{3,3}`: the 3x3 rook's graph, vertex `3r + c`.
    pub fn rook_3x3() -> Graph {
        let mut g = Graph::empty(9);
        for a in 0..9 {
            for b in a + 1..9 {
                if a / 3 == b / 3 || a % 3 == b % 3 {
                    g.add_edge(a, b).expect("valid");
                }
            }
        }
        g
    }
}

impl Structure for Graph {
    fn kind(&self) -> StructureKind {
        StructureKind::Graph
    }

    fn order(&self) -> usize {
        self.adj.len()
    }

    fn arity(&self) -> usize {
        2
    }

    fn tuples(&self) -> Vec<Vec<usize>> {
        self.edges().map(|(u, v)| vec![u, v]).collect()
    }

    fn relation_count(&self) -> usize {
        self.edges
    }

    fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let (vs, index) = induced_index(self.order(), vertices)?;
        let mut g = Graph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for v in self.adj[u].ones() {
                if let Some(j) = index[v] {
                    if j > i {
                        g.add_edge(i, j).expect("valid");
                    }
                }
            }
        }
        Ok(g)
    }

    fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("relabeling is a permutation");
        }
        g
    }

    fn step_consistent(&self, target: &Self, src: &[usize], dst: &[usize], u: usize, w: usize) -> bool {
        src.iter().zip(dst).all(|(&x, &y)| self.has_edge(u, x) == target.has_edge(w, y))
    }

    fn restrict(&self, target: &Self, src: &[usize], dst: &[usize], v: usize, domain: &mut FixedBitSet) {
        let (Some(&u), Some(&w)) = (src.last(), dst.last()) else { return };
        if self.has_edge(u, v) {
            domain.intersect_with(&target.adj[w]);
        } else {
            domain.difference_with(&target.adj[w]);
        }
    }

    fn vertex_invariant(&self, v: usize) -> Vec<usize> {
        let mut inv: Vec<usize> = self.adj[v].ones().map(|u| self.degree(u)).collect();
        inv.sort_unstable();
        inv.insert(0, self.degree(v));
        inv
    }

    fn refine_signature(&self, v: usize, cell_of: &[usize]) -> Vec<usize> {
        let mut sig: Vec<usize> = self.adj[v].ones().map(|u| cell_of[u]).collect();
        sig.sort_unstable();
        sig
    }

    fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.len() == self.order() && self.edges().all(|(u, v)| self.has_edge(perm.apply(u), perm.apply(v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_segment_is_a_path() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced(&[1, 2, 3]).unwrap(), Graph::path(3));
        assert_eq!(c5.induced(&[0, 1, 2, 3, 4]).unwrap(), c5);
        assert!(c5.induced(&[0, 7]).is_err());
    }

    #[test]
    fn complement_small_cases() {
        let two_k2 = Graph::disjoint_cliques(2, 2);
        // 0-1, 2-3 complement: 0-2, 0-3, 1-2, 1-3 which is a 4-cycle 0-2-1-3
        let c4 = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(two_k2.complement(), c4);
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        assert_eq!(c4.complement().complement(), c4);
        assert_eq!(Graph::complete(5).edge_count(), 10);
    }

    #[test]
    fn rejects_loops_and_ranges() {
        let mut g = Graph::empty(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rook_graph_shape() {
        let r = Graph::rook_3x3();
        assert_eq!(r.order(), 9);
        assert!((0..9).all(|v| r.degree(v) == 4));
        assert_eq!(r.edge_count(), 18);
    }
}
