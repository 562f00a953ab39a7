//! Finite relational structures on the dense vertex set `0..n`.
//!
//! [`Structure`] is the one abstraction every search and verifier in the
//! crate is written against. Its methods are shaped around incremental
//! partial maps: a backtracking search hands over the pairs assigned so far
//! and asks whether one more pair keeps every relation tuple consistent.

mod digraph;
mod graph;
mod hypergraph;

pub use digraph::Digraph;
pub use graph::Graph;
pub use hypergraph::Hypergraph;

use crate::error::Result;
use crate::perm::Perm;
use fixedbitset::FixedBitSet;
use std::fmt::Debug;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Graph,
    Digraph,
    Hypergraph,
}

pub trait Structure: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    fn kind(&self) -> StructureKind;

    /// Number of vertices.
    fn order(&self) -> usize;

    /// Number of vertices in one relation tuple.
    fn arity(&self) -> usize;

    /// Relation tuples in normal form (edges `u < v`, arcs `(tail, head)`,
    /// hyperedges sorted), in increasing lexicographic order.
    fn tuples(&self) -> Vec<Vec<usize>>;

    fn relation_count(&self) -> usize;

    /// The substructure induced on `vertices`, relabeled by their sorted order.
    fn induced(&self, vertices: &[usize]) -> Result<Self>;

    /// The isomorphic copy obtained by renaming `v` to `perm[v]`.
    fn relabel(&self, perm: &[usize]) -> Self;

    /// Whether the partial map `src[i] -> dst[i]`, extended by `u -> w`,
    /// agrees on every tuple that contains `u` and otherwise lies in `src`.
    fn step_consistent(&self, target: &Self, src: &[usize], dst: &[usize], u: usize, w: usize)
        -> bool;

    /// Forward check. `src.last() -> dst.last()` was just assigned; remove from
    /// `domain` every image of the unassigned vertex `v` that breaks a tuple
    /// containing `v`, the new pair, and otherwise only earlier pairs.
    fn restrict(&self, target: &Self, src: &[usize], dst: &[usize], v: usize, domain: &mut FixedBitSet);

    /// Isomorphism invariant of a vertex; automorphisms preserve it exactly.
    fn vertex_invariant(&self, v: usize) -> Vec<usize>;

    /// Label-free description of how `v` sits relative to a vertex colouring.
    fn refine_signature(&self, v: usize, cell_of: &[usize]) -> Vec<usize>;

    fn is_automorphism(&self, perm: &Perm) -> bool;

    /// Whether `pairs` (as `(source, image)`) is injective and preserves all
    /// relations among its domain, in both directions.
    fn preserves(&self, target: &Self, pairs: &[(usize, usize)]) -> bool {
        let mut src = Vec::with_capacity(pairs.len());
        let mut dst = Vec::with_capacity(pairs.len());
        for &(u, w) in pairs {
            if u >= self.order() || w >= target.order() || src.contains(&u) || dst.contains(&w) {
                return false;
            }
            if !self.step_consistent(target, &src, &dst, u, w) {
                return false;
            }
            src.push(u);
            dst.push(w);
        }
        true
    }
}

pub(crate) fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        Err(crate::error::EppaError::input(format!("vertex {v} out of range for order {n}")))
    } else {
        Ok(())
    }
}

/// Validates a vertex subset and returns it sorted, deduplicated, plus the
/// old -> new index table.
pub(crate) fn induced_index(n: usize, vertices: &[usize]) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    for &v in &vs {
        check_vertex(n, v)?;
    }
    let mut index = vec![None; n];
    for (i, &v) in vs.iter().enumerate() {
        index[v] = Some(i);
    }
    Ok((vs, index))
}
