use super::{check_vertex, induced_index, Structure, StructureKind};
use crate::error::{EppaError, Result};
use crate::perm::Perm;
use fixedbitset::FixedBitSet;
use std::fmt;

/// A loopless directed graph; a pair may carry zero, one or two arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<FixedBitSet>,
    inc: Vec<FixedBitSet>,
    arcs: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out: vec![FixedBitSet::with_capacity(n); n],
            inc: vec![FixedBitSet::with_capacity(n); n],
            arcs: 0,
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Builds from loop-free out-neighbour rows.
    pub(crate) fn from_out_rows(out: Vec<FixedBitSet>) -> Self {
        let n = out.len();
        let mut inc = vec![FixedBitSet::with_capacity(n); n];
        let mut arcs = 0;
        for (u, row) in out.iter().enumerate() {
            debug_assert!(!row.contains(u));
            for v in row.ones() {
                inc[v].insert(u);
                arcs += 1;
            }
        }
        Digraph { out, inc, arcs }
    }

    /// Adds the arc `u -> v`; returns `false` if it was already present.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        check_vertex(self.order(), u)?;
        check_vertex(self.order(), v)?;
        if u == v {
            return Err(EppaError::input(format!("loop at vertex {u}")));
        }
        if self.out[u].contains(v) {
            return Ok(false);
        }
        self.out[u].insert(v);
        self.inc[v].insert(u);
        self.arcs += 1;
        Ok(true)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    /// Arc pattern of the pair: bit 0 is `u -> v`, bit 1 is `v -> u`.
    #[inline]
    pub fn code(&self, u: usize, v: usize) -> u8 {
        self.out[u].contains(v) as u8 | (self.inc[u].contains(v) as u8) << 1
    }

    pub fn out_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].count_ones(..)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    /// Number of unordered pairs joined in both directions.
    pub fn bidirectional_pairs(&self) -> usize {
        self.arcs().filter(|&(u, v)| u < v && self.has_arc(v, u)).count()
    }

    /// Exactly one arc between every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| (u + 1..n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    pub fn oriented_cycle(n: usize) -> Digraph {
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::from_arcs(n, &arcs).expect("valid cycle")
    }

    /// Transitive tournament `i -> j` for `i < j`.
    pub fn transitive_tournament(n: usize) -> Digraph {
        let mut d = Digraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                d.add_arc(i, j).expect("valid");
            }
        }
        d
    }
}

impl Structure for Digraph {
    fn kind(&self) -> StructureKind {
        StructureKind::Digraph
    }

    fn order(&self) -> usize {
        self.out.len()
    }

    fn arity(&self) -> usize {
        2
    }

    fn tuples(&self) -> Vec<Vec<usize>> {
        self.arcs().map(|(u, v)| vec![u, v]).collect()
    }

    fn relation_count(&self) -> usize {
        self.arcs
    }

    fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let (vs, index) = induced_index(self.order(), vertices)?;
        let mut d = Digraph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for v in self.out[u].ones() {
                if let Some(j) = index[v] {
                    d.add_arc(i, j).expect("valid");
                }
            }
        }
        Ok(d)
    }

    fn relabel(&self, perm: &[usize]) -> Self {
        let mut d = Digraph::empty(self.order());
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]).expect("relabeling is a permutation");
        }
        d
    }

    fn step_consistent(&self, target: &Self, src: &[usize], dst: &[usize], u: usize, w: usize) -> bool {
        src.iter().zip(dst).all(|(&x, &y)| self.code(u, x) == target.code(w, y))
    }

    fn restrict(&self, target: &Self, src: &[usize], dst: &[usize], v: usize, domain: &mut FixedBitSet) {
        let (Some(&u), Some(&w)) = (src.last(), dst.last()) else { return };
        if self.has_arc(u, v) {
            domain.intersect_with(&target.out[w]);
        } else {
            domain.difference_with(&target.out[w]);
        }
        if self.has_arc(v, u) {
            domain.intersect_with(&target.inc[w]);
        } else {
            domain.difference_with(&target.inc[w]);
        }
    }

    fn vertex_invariant(&self, v: usize) -> Vec<usize> {
        let both = self.out[v].intersection(&self.inc[v]).count();
        let mut nb: Vec<usize> = self.out[v]
            .union(&self.inc[v])
            .map(|u| self.code(v, u) as usize * 1_000_000 + self.out_degree(u) * 1000 + self.in_degree(u))
            .collect();
        nb.sort_unstable();
        let mut inv = vec![self.out_degree(v), self.in_degree(v), both];
        inv.extend(nb);
        inv
    }

    fn refine_signature(&self, v: usize, cell_of: &[usize]) -> Vec<usize> {
        let mut sig: Vec<usize> = self.out[v]
            .union(&self.inc[v])
            .map(|u| cell_of[u] * 4 + self.code(v, u) as usize)
            .collect();
        sig.sort_unstable();
        sig
    }

    fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.len() == self.order() && self.arcs().all(|(u, v)| self.has_arc(perm.apply(u), perm.apply(v)))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.order(), self.arcs().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_antisymmetric() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(d.code(0, 1), 1);
        assert_eq!(d.code(1, 0), 2);
        assert_eq!(d.code(1, 2), 3);
        assert_eq!(d.code(0, 2), 0);
        assert_eq!(d.bidirectional_pairs(), 1);
        assert!(!d.is_tournament());
        assert!(Digraph::transitive_tournament(4).is_tournament());
    }

    #[test]
    fn induced_keeps_direction() {
        let d = Digraph::oriented_cycle(4);
        let sub = d.induced(&[1, 2, 3]).unwrap();
        assert_eq!(sub, Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap());
    }
}
