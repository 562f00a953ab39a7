//! Backtracking search for extensions, embeddings and automorphisms.
//!
//! One engine serves all three: it looks for an injective map from every
//! vertex of a source structure into a target that extends a given set of
//! pairs and preserves relations in both directions. With source = target the
//! result is an automorphism. Domains are bitsets, forward-checked after
//! every assignment; the vertex with the smallest domain is assigned next and
//! singleton domains are assigned without branching.

use crate::error::{EppaError, Result};
use crate::partial::PartialIso;
use crate::perm::Perm;
use crate::structure::{Graph, Structure};
use fixedbitset::FixedBitSet;
use std::collections::HashMap;

/// Reusable automorphism-extension searcher for one host structure.
///
/// Vertex invariants are computed once, so repeated calls on the same host
/// only pay for the search itself.
pub struct AutSearcher<'a, S: Structure> {
    host: &'a S,
    classes: Vec<FixedBitSet>,
    class_of: Vec<usize>,
}

impl<'a, S: Structure> AutSearcher<'a, S> {
    pub fn new(host: &'a S) -> Self {
        let n = host.order();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        for v in 0..n {
            let next = ids.len();
            class_of.push(*ids.entry(host.vertex_invariant(v)).or_insert(next));
        }
        let mut classes = vec![FixedBitSet::with_capacity(n); ids.len()];
        for (v, &c) in class_of.iter().enumerate() {
            classes[c].insert(v);
        }
        AutSearcher { host, classes, class_of }
    }

    pub fn host(&self) -> &S {
        self.host
    }

    /// An automorphism agreeing with `pairs`, or `None` if none exists.
    /// `pairs` must be a partial automorphism of the host.
    pub fn extend(&self, pairs: &[(usize, usize)]) -> Result<Option<Perm>> {
        let n = self.host.order();
        check_pairs(self.host, self.host, pairs)?;
        if pairs.iter().any(|&(u, w)| self.class_of[u] != self.class_of[w]) {
            return Ok(None);
        }
        if self.host.arity() >= 3 {
            return Ok(refine_extend(self.host, pairs).map(Perm::from_images_unchecked));
        }
        let domains: Vec<FixedBitSet> = (0..n).map(|v| self.classes[self.class_of[v]].clone()).collect();
        Ok(run(self.host, self.host, pairs, domains).map(Perm::from_images_unchecked))
    }

    pub fn extend_partial(&self, p: &PartialIso) -> Result<Option<Perm>> {
        self.extend(&p.pairs())
    }
}

fn check_pairs<S: Structure>(source: &S, target: &S, pairs: &[(usize, usize)]) -> Result<()> {
    if !source.preserves(target, pairs) {
        return Err(EppaError::input(format!("{pairs:?} is not a partial isomorphism")));
    }
    Ok(())
}

/// Extends a partial automorphism of `h` to a full automorphism, if possible.
pub fn extend_to_automorphism<S: Structure>(h: &S, pairs: &[(usize, usize)]) -> Result<Option<Perm>> {
    AutSearcher::new(h).extend(pairs)
}

/// An induced embedding of `g` into `h` extending `fixed`, as the image
/// table `v -> phi(v)`.
pub fn find_embedding<S: Structure>(g: &S, h: &S, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if g.order() > h.order() || !g.preserves(h, fixed) {
        return None;
    }
    let mut all = FixedBitSet::with_capacity(h.order());
    all.insert_range(..);
    run(g, h, fixed, vec![all; g.order()])
}

pub fn are_isomorphic<S: Structure>(a: &S, b: &S) -> bool {
    a.order() == b.order() && a.relation_count() == b.relation_count() && find_embedding(a, b, &[]).is_some()
}

/// Vertex orbits of the automorphism group, each sorted, ordered by least
/// element.
pub fn orbits<S: Structure>(s: &S) -> Vec<Vec<usize>> {
    let searcher = AutSearcher::new(s);
    let n = s.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![v];
        orbit_of[v] = id;
        for w in v + 1..n {
            if orbit_of[w] == usize::MAX && searcher.extend(&[(v, w)]).expect("single pair").is_some() {
                orbit_of[w] = id;
                orbit.push(w);
            }
        }
        out.push(orbit);
    }
    out
}

/// Orbit of vertex 0 is everything.
pub fn is_vertex_transitive<S: Structure>(s: &S) -> bool {
    let searcher = AutSearcher::new(s);
    (1..s.order()).all(|w| searcher.extend(&[(0, w)]).expect("single pair").is_some())
}

/// Extension search by individualization and refinement, used where forward
/// checking is weak (relations of arity 3 and more). Source and target
/// partitions are refined in lockstep and must produce the same signatures
/// cell by cell; each discrete leaf is still checked directly.
fn refine_extend<S: Structure>(h: &S, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = h.order();
    let split = |fixed: Vec<usize>| {
        let rest: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
        let mut part: Vec<Vec<usize>> = fixed.into_iter().map(|v| vec![v]).collect();
        if !rest.is_empty() {
            part.push(rest);
        }
        part
    };
    let (src, dst) = refine_pair(h, split(pairs.iter().map(|p| p.0).collect()), split(pairs.iter().map(|p| p.1).collect()))?;
    refine_step(h, src, dst)
}

type Partition = Vec<Vec<usize>>;

/// Refines two partitions of the same shape together; `None` as soon as a
/// cell's signature multiset differs between them.
fn refine_pair<S: Structure>(h: &S, mut src: Partition, mut dst: Partition) -> Option<(Partition, Partition)> {
    let n = h.order();
    let (mut cs, mut cd) = (vec![0; n], vec![0; n]);
    loop {
        for (i, (a, b)) in src.iter().zip(&dst).enumerate() {
            a.iter().for_each(|&v| cs[v] = i);
            b.iter().for_each(|&v| cd[v] = i);
        }
        let (mut ns, mut nd) = (Vec::with_capacity(src.len()), Vec::with_capacity(dst.len()));
        for (a, b) in src.iter().zip(&dst) {
            if a.len() == 1 {
                if h.refine_signature(a[0], &cs) != h.refine_signature(b[0], &cd) {
                    return None;
                }
                ns.push(a.clone());
                nd.push(b.clone());
                continue;
            }
            let mut ka: Vec<(Vec<usize>, usize)> = a.iter().map(|&v| (h.refine_signature(v, &cs), v)).collect();
            let mut kb: Vec<(Vec<usize>, usize)> = b.iter().map(|&v| (h.refine_signature(v, &cd), v)).collect();
            ka.sort();
            kb.sort();
            if ka.iter().zip(&kb).any(|(x, y)| x.0 != y.0) {
                return None;
            }
            let mut start = 0;
            for i in 1..=ka.len() {
                if i == ka.len() || ka[i].0 != ka[start].0 {
                    ns.push(ka[start..i].iter().map(|x| x.1).collect());
                    nd.push(kb[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let changed = ns.len() > src.len();
        src = ns;
        dst = nd;
        if !changed {
            return Some((src, dst));
        }
    }
}

fn refine_step<S: Structure>(h: &S, src: Partition, dst: Partition) -> Option<Vec<usize>> {
    let target = src.iter().position(|c| c.len() > 1);
    let Some(c) = target else {
        let mut map = vec![0; h.order()];
        for (a, b) in src.iter().zip(&dst) {
            map[a[0]] = b[0];
        }
        return h.is_automorphism(&Perm::from_images_unchecked(map.clone())).then_some(map);
    };
    let v = src[c][0];
    let individualize = |part: &[Vec<usize>], x: usize| {
        let mut next = part[..c].to_vec();
        next.push(vec![x]);
        next.push(part[c].iter().copied().filter(|&y| y != x).collect());
        next.extend_from_slice(&part[c + 1..]);
        next
    };
    let src_next = individualize(&src, v);
    dst[c].iter().find_map(|&w| {
        let (a, b) = refine_pair(h, src_next.clone(), individualize(&dst, w))?;
        refine_step(h, a, b)
    })
}

fn run<S: Structure>(
    source: &S,
    target: &S,
    pairs: &[(usize, usize)],
    mut domains: Vec<FixedBitSet>,
) -> Option<Vec<usize>> {
    let n = source.order();
    let mut st = State {
        map: vec![usize::MAX; n],
        src: Vec::with_capacity(n),
        dst: Vec::with_capacity(n),
    };
    for &(u, w) in pairs {
        if !domains[u].contains(w) {
            return None;
        }
        if !st.assign(source, target, &mut domains, u, w) {
            return None;
        }
    }
    if solve(source, target, &mut st, &mut domains) {
        Some(st.map)
    } else {
        None
    }
}

struct State {
    map: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
}

impl State {
    /// Records `u -> w` and forward-checks every unassigned domain; `false`
    /// if some domain became empty.
    fn assign<S: Structure>(&mut self, source: &S, target: &S, domains: &mut [FixedBitSet], u: usize, w: usize) -> bool {
        debug_assert!(source.step_consistent(target, &self.src, &self.dst, u, w));
        self.map[u] = w;
        self.src.push(u);
        self.dst.push(w);
        domains[u].clear();
        domains[u].insert(w);
        for v in 0..source.order() {
            if self.map[v] != usize::MAX {
                continue;
            }
            let d = &mut domains[v];
            d.set(w, false);
            source.restrict(target, &self.src, &self.dst, v, d);
            if d.is_clear() {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, depth: usize) {
        while self.src.len() > depth {
            let u = self.src.pop().unwrap();
            self.dst.pop();
            self.map[u] = usize::MAX;
        }
    }
}

fn solve<S: Structure>(source: &S, target: &S, st: &mut State, domains: &mut Vec<FixedBitSet>) -> bool {
    loop {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..source.order() {
            if st.map[v] != usize::MAX {
                continue;
            }
            let c = domains[v].count_ones(..);
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((v, c));
                if c <= 1 {
                    break;
                }
            }
        }
        let Some((v, c)) = best else { return true };
        if c == 0 {
            return false;
        }
        if c == 1 {
            let w = domains[v].ones().next().unwrap();
            if !st.assign(source, target, domains, v, w) {
                return false;
            }
            continue;
        }
        let depth = st.src.len();
        let candidates: Vec<usize> = domains[v].ones().collect();
        for w in candidates {
            let mut trial = domains.clone();
            if st.assign(source, target, &mut trial, v, w) && solve(source, target, st, &mut trial) {
                *domains = trial;
                return true;
            }
            st.undo_to(depth);
        }
        return false;
    }
}

/// All `k`-cliques of `g`, each sorted, in lexicographic order.
pub fn cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut cand = FixedBitSet::with_capacity(g.order());
    cand.insert_range(..);
    clique_rec(g, k, &mut cur, &cand, &mut out, usize::MAX);
    out
}

/// Whether `g` contains a `k`-clique.
pub fn has_clique(g: &Graph, k: usize) -> bool {
    let mut out = Vec::new();
    let mut cand = FixedBitSet::with_capacity(g.order());
    cand.insert_range(..);
    clique_rec(g, k, &mut Vec::with_capacity(k), &cand, &mut out, 1);
    !out.is_empty()
}

fn clique_rec(g: &Graph, k: usize, cur: &mut Vec<usize>, cand: &FixedBitSet, out: &mut Vec<Vec<usize>>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    if cand.count_ones(..) < k - cur.len() {
        return;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        next.set_range(..v + 1, false);
        cur.push(v);
        clique_rec(g, k, cur, &next, out, limit);
        cur.pop();
        if out.len() >= limit {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{Digraph, Hypergraph};
    use proptest::prelude::*;

    #[test]
    fn cycle_single_pairs_extend() {
        let c5 = Graph::cycle(5);
        for v in 0..5 {
            for w in 0..5 {
                let p = extend_to_automorphism(&c5, &[(v, w)]).unwrap().unwrap();
                assert!(c5.is_automorphism(&p));
                assert_eq!(p.apply(v), w);
            }
        }
    }

    #[test]
    fn degree_obstructions() {
        let p3 = Graph::path(3);
        assert_eq!(extend_to_automorphism(&p3, &[(0, 1)]).unwrap(), None);
        let p4 = Graph::path(4);
        // end edge {0,1} onto middle edge {1,2}
        assert_eq!(extend_to_automorphism(&p4, &[(0, 1), (1, 2)]).unwrap(), None);
        assert!(extend_to_automorphism(&p4, &[(0, 0), (1, 2)]).is_err());
    }

    #[test]
    fn embeddings() {
        let c6 = Graph::cycle(6);
        let rook = Graph::rook_3x3();
        let phi = find_embedding(&c6, &rook, &[]).unwrap();
        let mut seen = phi.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        for u in 0..6 {
            for v in u + 1..6 {
                assert_eq!(c6.has_edge(u, v), rook.has_edge(phi[u], phi[v]));
            }
        }
        assert!(find_embedding(&Graph::cycle(7), &rook, &[]).is_none());
        assert!(are_isomorphic(&Graph::cycle(4), &Graph::complete_bipartite(2, 2)));
    }

    #[test]
    fn orbit_structure() {
        assert_eq!(orbits(&Graph::path(4)), vec![vec![0, 3], vec![1, 2]]);
        assert!(is_vertex_transitive(&Graph::rook_3x3()));
        assert!(!is_vertex_transitive(&Graph::star(3)));
        assert!(is_vertex_transitive(&Digraph::oriented_cycle(5)));
        assert!(!is_vertex_transitive(&Digraph::transitive_tournament(3)));
        let fano_like = Hypergraph::from_edges(4, 3, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(orbits(&fano_like), vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn clique_listing() {
        assert_eq!(cliques(&Graph::complete(4), 3).len(), 4);
        assert!(!has_clique(&Graph::cycle(5), 3));
        assert!(has_clique(&Graph::rook_3x3(), 3));
        assert_eq!(cliques(&Graph::rook_3x3(), 3).len(), 6);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    // Oracle: try every permutation.
    fn brute_extends(g: &Graph, pairs: &[(usize, usize)]) -> bool {
        fn rec(g: &Graph, pairs: &[(usize, usize)], img: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = img.len();
            if k == g.order() {
                return pairs.iter().all(|&(u, w)| img[u] == w) && g.is_automorphism(&Perm::from_images(img.clone()).unwrap());
            }
            for w in 0..g.order() {
                if !used[w] {
                    used[w] = true;
                    img.push(w);
                    if rec(g, pairs, img, used) {
                        return true;
                    }
                    img.pop();
                    used[w] = false;
                }
            }
            false
        }
        rec(g, pairs, &mut Vec::new(), &mut vec![false; g.order()])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn extension_agrees_with_brute_force(g in arb_graph(), seed in any::<u64>()) {
            let autos: Vec<_> = crate::partial::enumerate_partial_autos(&g, Some(2)).collect();
            let p = &autos[(seed as usize) % autos.len()];
            let found = extend_to_automorphism(&g, &p.pairs()).unwrap();
            prop_assert_eq!(found.is_some(), brute_extends(&g, &p.pairs()));
            if let Some(perm) = found {
                prop_assert!(Perm::from_images(perm.images().to_vec()).is_ok());
                prop_assert!(g.is_automorphism(&perm));
                prop_assert!(p.pairs().iter().all(|&(u, w)| perm.apply(u) == w));
            }
        }
    }
}
