use super::{check_vertex, induced_index, Structure, StructureKind};
use crate::error::{EppaError, Result};
use crate::perm::Perm;
use fixedbitset::FixedBitSet;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

/// An `r`-uniform hypergraph. Hyperedges are kept sorted.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: BTreeSet<Vec<usize>>,
    incidence: Vec<Vec<Vec<usize>>>,
    // (r-1)-set -> vertices completing it to a hyperedge
    links: HashMap<Vec<usize>, FixedBitSet>,
}

impl Hypergraph {
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(EppaError::input(format!("uniformity must be at least 2, got {r}")));
        }
        Ok(Hypergraph { n, r, edges: BTreeSet::new(), incidence: vec![Vec::new(); n], links: HashMap::new() })
    }

    pub fn from_edges(n: usize, r: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut h = Hypergraph::empty(n, r)?;
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    /// Adds a hyperedge; returns `false` if it was already present.
    pub fn add_edge(&mut self, edge: &[usize]) -> Result<bool> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        e.dedup();
        if edge.len() != self.r || e.len() != self.r {
            return Err(EppaError::input(format!("{edge:?} is not a set of {} distinct vertices", self.r)));
        }
        for &v in &e {
            check_vertex(self.n, v)?;
        }
        if self.edges.contains(&e) {
            return Ok(false);
        }
        for (i, &x) in e.iter().enumerate() {
            self.incidence[x].push(e.clone());
            let mut rest = e.clone();
            rest.remove(i);
            let n = self.n;
            self.links.entry(rest).or_insert_with(|| FixedBitSet::with_capacity(n)).insert(x);
        }
        self.edges.insert(e);
        Ok(true)
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    /// `edge` must be sorted.
    pub fn has_edge(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn has_edge_unsorted(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.contains(&e)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.edges.iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    fn link(&self, sorted: &[usize]) -> Option<&FixedBitSet> {
        self.links.get(sorted)
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hash for Hypergraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.r.hash(state);
        self.edges.hash(state);
    }
}

fn sorted_with(mut set: Vec<usize>, x: usize) -> Vec<usize> {
    let pos = set.binary_search(&x).unwrap_or_else(|p| p);
    set.insert(pos, x);
    set
}

/// Calls `f` on every `k`-subset of `items` (as index-ordered picks).
fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

impl Structure for Hypergraph {
    fn kind(&self) -> StructureKind {
        StructureKind::Hypergraph
    }

    fn order(&self) -> usize {
        self.n
    }

    fn arity(&self) -> usize {
        self.r
    }

    fn tuples(&self) -> Vec<Vec<usize>> {
        self.edges.iter().cloned().collect()
    }

    fn relation_count(&self) -> usize {
        self.edges.len()
    }

    fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let (vs, index) = induced_index(self.n, vertices)?;
        let mut h = Hypergraph::empty(vs.len(), self.r)?;
        for e in &self.edges {
            let mapped: Option<Vec<usize>> = e.iter().map(|&x| index[x]).collect();
            if let Some(m) = mapped {
                h.add_edge(&m).expect("valid");
            }
        }
        Ok(h)
    }

    fn relabel(&self, perm: &[usize]) -> Self {
        let mut h = Hypergraph::empty(self.n, self.r).expect("valid uniformity");
        for e in &self.edges {
            let m: Vec<usize> = e.iter().map(|&x| perm[x]).collect();
            h.add_edge(&m).expect("relabeling is a permutation");
        }
        h
    }

    fn step_consistent(&self, target: &Self, src: &[usize], dst: &[usize], u: usize, w: usize) -> bool {
        let image = |x: usize| src.iter().position(|&s| s == x).map(|i| dst[i]);
        let mut forward = 0;
        for e in &self.incidence[u] {
            let mut img = Vec::with_capacity(self.r);
            for &x in e {
                if x == u {
                    img.push(w);
                } else if let Some(y) = image(x) {
                    img.push(y);
                } else {
                    break;
                }
            }
            if img.len() < self.r {
                continue;
            }
            if !target.has_edge_unsorted(&img) {
                return false;
            }
            forward += 1;
        }
        let backward = target.incidence[w]
            .iter()
            .filter(|e| e.iter().all(|&y| y == w || dst.contains(&y)))
            .count();
        forward == backward
    }

    fn restrict(&self, target: &Self, src: &[usize], dst: &[usize], v: usize, domain: &mut FixedBitSet) {
        let k = src.len();
        if k == 0 || k + 1 < self.r {
            return;
        }
        let (u, w) = (src[k - 1], dst[k - 1]);
        let earlier = &src[..k - 1];
        let empty = FixedBitSet::with_capacity(target.n);
        for_each_subset(earlier, self.r - 2, &mut |picks| {
            let s: Vec<usize> = picks.iter().map(|&i| src[i]).chain([u]).collect();
            let t: Vec<usize> = picks.iter().map(|&i| dst[i]).chain([w]).collect();
            let mut s_sorted = s.clone();
            s_sorted.sort_unstable();
            let mut t_sorted = t;
            t_sorted.sort_unstable();
            let present = self.has_edge(&sorted_with(s_sorted, v));
            let link = target.link(&t_sorted).unwrap_or(&empty);
            if present {
                domain.intersect_with(link);
            } else {
                domain.difference_with(link);
            }
        });
    }

    fn vertex_invariant(&self, v: usize) -> Vec<usize> {
        let mut co: Vec<usize> =
            self.incidence[v].iter().flat_map(|e| e.iter().copied()).filter(|&x| x != v).map(|x| self.degree(x)).collect();
        co.sort_unstable();
        co.insert(0, self.degree(v));
        co
    }

    fn refine_signature(&self, v: usize, cell_of: &[usize]) -> Vec<usize> {
        // per edge, the sorted cells of the other members packed base n
        let base = self.n.max(2);
        let fits = (base as u128).checked_pow(self.r as u32 - 1).is_some_and(|p| p <= usize::MAX as u128);
        if fits && self.r <= 9 {
            let mut codes: Vec<usize> = self.incidence[v]
                .iter()
                .map(|e| {
                    let mut c = [0usize; 8];
                    for (slot, &x) in c.iter_mut().zip(e.iter().filter(|&&x| x != v)) {
                        *slot = cell_of[x];
                    }
                    let c = &mut c[..self.r - 1];
                    c.sort_unstable();
                    c.iter().fold(0, |acc, &x| acc * base + x)
                })
                .collect();
            codes.sort_unstable();
            return codes;
        }
        let mut rows: Vec<Vec<usize>> = self.incidence[v]
            .iter()
            .map(|e| {
                let mut c: Vec<usize> = e.iter().filter(|&&x| x != v).map(|&x| cell_of[x]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        rows.sort_unstable();
        rows.concat()
    }

    fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.len() == self.n
            && self.edges.iter().all(|e| {
                let img: Vec<usize> = e.iter().map(|&x| perm.apply(x)).collect();
                self.has_edge_unsorted(&img)
            })
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, r={}, edges={:?})", self.n, self.r, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_normalized() {
        let mut h = Hypergraph::empty(4, 3).unwrap();
        assert!(h.add_edge(&[2, 0, 1]).unwrap());
        assert!(!h.add_edge(&[1, 2, 0]).unwrap());
        assert!(h.add_edge(&[0, 0, 1]).is_err());
        assert!(h.add_edge(&[0, 1]).is_err());
        assert!(h.add_edge(&[0, 1, 4]).is_err());
        assert_eq!(h.tuples(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn step_consistency_counts_both_directions() {
        let h = Hypergraph::from_edges(4, 3, &[vec![0, 1, 2]]).unwrap();
        // 0->0, 1->1, then 2->3 would lose the hyperedge
        assert!(!h.step_consistent(&h, &[0, 1], &[0, 1], 2, 3));
        assert!(h.step_consistent(&h, &[0, 1], &[1, 0], 2, 2));
        assert!(!h.step_consistent(&h, &[0, 1], &[0, 1], 3, 2));
        assert!(h.preserves(&h, &[(0, 2), (1, 0), (2, 1)]));
    }

    #[test]
    fn restrict_uses_links() {
        let h = Hypergraph::from_edges(5, 3, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let mut dom = FixedBitSet::with_capacity(5);
        dom.insert_range(..);
        // 0->0, 1->1 assigned; vertex 4 is in no edge with {0,1}
        h.restrict(&h, &[0, 1], &[0, 1], 4, &mut dom);
        assert_eq!(dom.ones().collect::<Vec<_>>(), vec![0, 1, 4]);
        let mut dom = FixedBitSet::with_capacity(5);
        dom.insert_range(..);
        h.restrict(&h, &[0, 1], &[0, 1], 2, &mut dom);
        assert_eq!(dom.ones().collect::<Vec<_>>(), vec![2, 3]);
    }
}
