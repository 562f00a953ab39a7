//! Exact canonical forms by individualization and refinement.
//!
//! The ordered partition is refined to an equitable one using only
//! label-free signatures, then the first smallest non-singleton cell is
//! individualized vertex by vertex. Every discrete leaf gives a relabeling;
//! the lexicographically least relabeled tuple list is the canonical form.
//! Leaves with equal codes yield automorphisms, which prune sibling branches
//! that lie in one orbit of the prefix stabilizer.

use crate::error::{EppaError, Result};
use crate::perm::Perm;
use crate::structure::{Structure, StructureKind};

pub const DEFAULT_CANON_CAP: usize = 12;

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `v -> canonical label of v`.
    pub relabeling: Perm,
    pub kind: StructureKind,
    pub order: usize,
    pub arity: usize,
    /// Vertex colours listed by canonical label (empty when uncoloured).
    pub colors: Vec<usize>,
    /// Relation tuples after relabeling, sorted.
    pub tuples: Vec<Vec<usize>>,
}

impl CanonicalForm {
    fn key(&self) -> (StructureKind, usize, usize, &[usize], &[Vec<usize>]) {
        (self.kind, self.order, self.arity, &self.colors, &self.tuples)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

pub fn canonical_form<S: Structure>(s: &S) -> Result<CanonicalForm> {
    canonical_form_capped(s, None, DEFAULT_CANON_CAP)
}

/// Canonical form under colour-preserving isomorphisms.
pub fn canonical_form_colored<S: Structure>(s: &S, colors: &[usize]) -> Result<CanonicalForm> {
    canonical_form_capped(s, Some(colors), DEFAULT_CANON_CAP)
}

pub fn canonical_form_capped<S: Structure>(s: &S, colors: Option<&[usize]>, cap: usize) -> Result<CanonicalForm> {
    let n = s.order();
    if n > cap {
        return Err(EppaError::capacity("canonical form vertices", n, cap));
    }
    if let Some(c) = colors {
        if c.len() != n {
            return Err(EppaError::input(format!("{} colours for {n} vertices", c.len())));
        }
    }
    let mut initial: Vec<Vec<usize>> = Vec::new();
    match colors {
        None => {
            if n > 0 {
                initial.push((0..n).collect());
            }
        }
        Some(c) => {
            let mut values: Vec<usize> = c.to_vec();
            values.sort_unstable();
            values.dedup();
            for val in values {
                initial.push((0..n).filter(|&v| c[v] == val).collect());
            }
        }
    }
    let mut search = Search { s, colors, best: None, autos: Vec::new() };
    search.node(initial, &mut Vec::new());
    let (_, lab) = search.best.expect("search visits at least one leaf");
    let tuples = s.relabel(lab.images()).tuples();
    let colors_out = match colors {
        None => Vec::new(),
        Some(c) => {
            let inv = lab.inverse();
            (0..n).map(|i| c[inv.apply(i)]).collect()
        }
    };
    Ok(CanonicalForm { relabeling: lab, kind: s.kind(), order: n, arity: s.arity(), colors: colors_out, tuples })
}

struct Search<'a, S: Structure> {
    s: &'a S,
    colors: Option<&'a [usize]>,
    best: Option<(Vec<usize>, Perm)>,
    autos: Vec<Perm>,
}

impl<S: Structure> Search<'_, S> {
    fn node(&mut self, partition: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let partition = refine(self.s, partition);
        let Some(target) = pick_cell(&partition) else {
            self.leaf(&partition);
            return;
        };
        let cell = partition[target].clone();
        let mut done: Vec<usize> = Vec::new();
        for &w in &cell {
            if done.iter().any(|&x| self.same_orbit(prefix, x, w)) {
                continue;
            }
            done.push(w);
            let mut child = partition.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&x| x != w).collect();
            child.splice(target..=target, [vec![w], rest]);
            prefix.push(w);
            self.node(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, partition: &[Vec<usize>]) {
        let n = self.s.order();
        let mut lab = vec![0; n];
        for (i, cell) in partition.iter().enumerate() {
            lab[cell[0]] = i;
        }
        let lab = Perm::from_images_unchecked(lab);
        let code = leaf_code(self.s, self.colors, &lab);
        match &self.best {
            None => self.best = Some((code, lab)),
            Some((best, best_lab)) => match code.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((code, lab)),
                std::cmp::Ordering::Equal => {
                    // both relabel s to the same thing, so best^-1 ∘ lab is an automorphism
                    let gamma = best_lab.inverse().after(&lab);
                    if !gamma.is_identity() {
                        debug_assert!(self.s.is_automorphism(&gamma));
                        self.autos.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `a` and `b` share an orbit of the found automorphisms that fix
    /// `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let gens: Vec<&Perm> = self.autos.iter().filter(|g| prefix.iter().all(|&p| g.apply(p) == p)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.s.order()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            for g in &gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

fn leaf_code<S: Structure>(s: &S, colors: Option<&[usize]>, lab: &Perm) -> Vec<usize> {
    let n = s.order();
    let mut code = Vec::new();
    if let Some(c) = colors {
        let inv = lab.inverse();
        code.extend((0..n).map(|i| c[inv.apply(i)]));
    }
    for t in s.relabel(lab.images()).tuples() {
        code.extend(t);
    }
    code
}

fn pick_cell(partition: &[Vec<usize>]) -> Option<usize> {
    partition
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

/// Refines to an equitable ordered partition. Cells are split by the sorted
/// signature of their members, with all signatures of a round taken against
/// the same snapshot, so the result is independent of vertex labels.
pub(crate) fn refine<S: Structure>(s: &S, mut partition: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = s.order();
    let mut cell_of = vec![0; n];
    loop {
        for (i, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(partition.len());
        for cell in &partition {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> =
                cell.iter().map(|&v| (s.refine_signature(v, &cell_of), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|x| x.1).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        let changed = next.len() > partition.len();
        partition = next;
        if !changed {
            return partition;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{Digraph, Graph, Hypergraph};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::collections::HashSet;

    #[test]
    fn relabeled_cycles_agree() {
        let c5 = Graph::cycle(5);
        let moved = c5.relabel(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5).unwrap(), canonical_form(&moved).unwrap());
        assert_ne!(canonical_form(&Graph::path(4)).unwrap(), canonical_form(&Graph::star(3)).unwrap());
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut forms = HashSet::new();
        for mask in 0u32..64 {
            let es: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            forms.insert(canonical_form(&Graph::from_edges(4, &es).unwrap()).unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn highly_symmetric_inputs_finish() {
        for g in [Graph::empty(12), Graph::complete(12), Graph::disjoint_cliques(4, 3), Graph::rook_3x3()] {
            let f = canonical_form(&g).unwrap();
            assert_eq!(g.relabel(f.relabeling.images()).tuples(), f.tuples);
        }
        assert!(canonical_form(&Graph::empty(13)).unwrap_err().is_capacity());
    }

    #[test]
    fn colours_distinguish_marked_copies() {
        let p3 = Graph::path(3);
        let end = canonical_form_colored(&p3, &[1, 0, 0]).unwrap();
        let other_end = canonical_form_colored(&p3, &[0, 0, 1]).unwrap();
        let middle = canonical_form_colored(&p3, &[0, 1, 0]).unwrap();
        assert_eq!(end, other_end);
        assert_ne!(end, middle);
    }

    #[test]
    fn other_kinds() {
        let t = Digraph::oriented_cycle(3);
        let tt = Digraph::transitive_tournament(3);
        assert_ne!(canonical_form(&t).unwrap(), canonical_form(&tt).unwrap());
        assert_eq!(canonical_form(&tt).unwrap(), canonical_form(&tt.relabel(&[2, 0, 1])).unwrap());
        let h = Hypergraph::from_edges(4, 3, &[vec![0, 1, 2]]).unwrap();
        let h2 = Hypergraph::from_edges(4, 3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&h2).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn invariant_under_relabeling(n in 1usize..=8, bits in proptest::collection::vec(any::<bool>(), 28), seed in any::<u64>()) {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = canonical_form(&g).unwrap();
            let b = canonical_form(&g.relabel(&perm)).unwrap();
            prop_assert_eq!(a.tuples, b.tuples);
        }
    }
}
