//! The valuation graph `H_n` and its constructive extender.
//!
//! A vertex is a pair `(i, f)` with projection `i` and a 0/1 valuation `f` on
//! the other `n - 1` points; `(i, f) ~ (i', f')` iff `i != i'` and
//! `f(i') != f'(i)`. The valuation is an `(n-1)`-bit word whose bit `j` (for
//! `j < i`) or `j - 1` (for `j > i`) holds `f(j)`. Vertex `(i, f)` has index
//! `i * 2^(n-1) + f`. Projections are 0-based here and 1-based in labels.

use crate::error::{EppaError, Result};
use crate::partial::PartialIso;
use crate::perm::Perm;
use crate::structure::{Graph, Structure};
use crate::verify::{Extender, Witness};
use crate::{Count, MATERIALIZE_CAP};
use rayon::prelude::*;
use std::sync::Arc;

/// Largest `n` accepted by [`ValuationGraph::new`].
pub const DEFAULT_VALUATION_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValuationVertex {
    pub projection: usize,
    pub valuation: u64,
}

#[inline]
pub(crate) fn pos(i: usize, j: usize) -> usize {
    debug_assert_ne!(i, j);
    if j < i {
        j
    } else {
        j - 1
    }
}

/// The implicit valuation graph `H_n`; adjacency is computed on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationGraph {
    n: usize,
}

impl ValuationGraph {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_VALUATION_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(EppaError::input("valuation graphs need n >= 1"));
        }
        if n > cap {
            return Err(EppaError::capacity("valuation graph n", n, cap));
        }
        Ok(ValuationGraph { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n * 2^(n-1)`.
    pub fn order(&self) -> usize {
        self.n << (self.n - 1)
    }

    pub fn vertex_count(n: u64) -> Count {
        Count::from(n) << (n.saturating_sub(1) as usize)
    }

    #[inline]
    pub fn index(&self, v: ValuationVertex) -> usize {
        v.projection << (self.n - 1) | v.valuation as usize
    }

    #[inline]
    pub fn vertex(&self, idx: usize) -> ValuationVertex {
        ValuationVertex { projection: idx >> (self.n - 1), valuation: (idx & ((1 << (self.n - 1)) - 1)) as u64 }
    }

    /// `f(j)` for the vertex `(i, f)`.
    #[inline]
    pub fn value(&self, v: ValuationVertex, j: usize) -> bool {
        v.valuation >> pos(v.projection, j) & 1 == 1
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.vertex(a), self.vertex(b));
        x.projection != y.projection && self.value(x, y.projection) != self.value(y, x.projection)
    }

    /// `(i, 0b...)` with 1-based `i`; the word lists `f(n)` first when `n != i`.
    pub fn label(&self, idx: usize) -> String {
        let v = self.vertex(idx);
        if self.n == 1 {
            return format!("({}, -)", v.projection + 1);
        }
        format!("({}, 0b{:0width$b})", v.projection + 1, v.valuation, width = self.n - 1)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.order()).map(|i| self.label(i)).collect()
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let order = self.order();
        if order > MATERIALIZE_CAP {
            return Err(EppaError::capacity("materialized valuation graph vertices", order, MATERIALIZE_CAP));
        }
        let rows: Vec<Vec<usize>> =
            (0..order).into_par_iter().map(|a| (a + 1..order).filter(|&b| self.adjacent(a, b)).collect()).collect();
        let mut g = Graph::empty(order);
        for (a, row) in rows.into_iter().enumerate() {
            for b in row {
                g.add_edge(a, b).expect("in range");
            }
        }
        Ok(g)
    }
}

/// The graph `H_n` itself.
pub fn build_valuation_graph(n: usize) -> Result<Graph> {
    ValuationGraph::new(n)?.to_graph()
}

/// `psi(i) = (i, f_i)` with `f_i(j) = 1` iff `j < i` and `ij` is an edge.
pub fn embed_into_valuation(g: &Graph, h: &ValuationGraph) -> Result<Vec<usize>> {
    if g.order() > h.n() {
        return Err(EppaError::input(format!("{} vertices do not fit into H_{}", g.order(), h.n())));
    }
    Ok((0..g.order()).map(|i| h.index(ValuationVertex { projection: i, valuation: base_valuation(g, i) })).collect())
}

fn base_valuation(g: &Graph, i: usize) -> u64 {
    let mut f = 0u64;
    if i < g.order() {
        for j in g.neighbors(i).ones().filter(|&j| j < i) {
            f |= 1 << pos(i, j);
        }
    }
    f
}

/// The map `sigma_S ∘ theta_pi`: `(i, f) -> (pi(i), f')` with
/// `f'(k) = f(pi^-1 k) xor [{pi(i), k} in S]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SwitchAutomorphism {
    pi: Perm,
    /// Symmetric switch rows: bit `b` of `rows[a]` marks the pair `{a, b}`.
    rows: Vec<u64>,
}

impl std::fmt::Debug for SwitchAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SwitchAutomorphism(pi={:?}, S={:?})", self.pi, self.switches())
    }
}

impl SwitchAutomorphism {
    pub fn identity(n: usize) -> Self {
        SwitchAutomorphism { pi: Perm::identity(n), rows: vec![0; n] }
    }

    pub fn new(pi: Perm, switches: &[(usize, usize)]) -> Result<Self> {
        let n = pi.len();
        if n > 64 {
            return Err(EppaError::capacity("switch automorphism points", n, 64));
        }
        let mut rows = vec![0u64; n];
        for &(a, b) in switches {
            if a == b || a >= n || b >= n {
                return Err(EppaError::input(format!("invalid switch pair {{{a}, {b}}}")));
            }
            rows[a] ^= 1 << b;
            rows[b] ^= 1 << a;
        }
        Ok(SwitchAutomorphism { pi, rows })
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn permutation(&self) -> &Perm {
        &self.pi
    }

    /// Switch pairs `(a, b)` with `a < b`, sorted.
    pub fn switches(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).filter(move |&b| self.rows[a] >> b & 1 == 1).map(move |b| (a, b))).collect()
    }

    fn switched(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn apply(&self, h: &ValuationGraph, idx: usize) -> usize {
        let n = h.n();
        let v = h.vertex(idx);
        let a = self.pi.apply(v.projection);
        let mut out = 0u64;
        for j in (0..n).filter(|&j| j != v.projection) {
            let k = self.pi.apply(j);
            let bit = h.value(v, j) ^ self.switched(a, k);
            out |= (bit as u64) << pos(a, k);
        }
        h.index(ValuationVertex { projection: a, valuation: out })
    }

    /// The induced permutation of the vertices of `H_n`.
    pub fn to_perm(&self, h: &ValuationGraph) -> Perm {
        Perm::from_images_unchecked((0..h.order()).map(|x| self.apply(h, x)).collect())
    }

    /// `self ∘ other`, using `sigma_S theta_pi sigma_T theta_rho = sigma_(S Δ pi(T)) theta_(pi rho)`.
    pub fn after(&self, other: &SwitchAutomorphism) -> SwitchAutomorphism {
        let n = self.n();
        let mut rows = self.rows.clone();
        for a in 0..n {
            for b in 0..n {
                if other.switched(a, b) {
                    rows[self.pi.apply(a)] ^= 1 << self.pi.apply(b);
                }
            }
        }
        SwitchAutomorphism { pi: self.pi.after(&other.pi), rows }
    }
}

/// `theta_pi`.
pub fn theta_pi(n: usize, pi: &[usize]) -> Result<SwitchAutomorphism> {
    let p = Perm::from_images(pi.to_vec())?;
    if p.len() != n {
        return Err(EppaError::input(format!("permutation of {} points for n = {n}", p.len())));
    }
    SwitchAutomorphism::new(p, &[])
}

/// The switch `theta_{a,b}`.
pub fn theta_switch(n: usize, a: usize, b: usize) -> Result<SwitchAutomorphism> {
    if a == b {
        return Err(EppaError::input("switch needs two distinct points"));
    }
    SwitchAutomorphism::new(Perm::identity(n), &[(a, b)])
}

/// Completes `p` to a permutation of `0..n`: identity outside the domain
/// when `dom(p) = rng(p)`, otherwise the sorted matching of the complements.
pub fn canonical_completion(p: &PartialIso, n: usize) -> Perm {
    let mut img = vec![usize::MAX; n];
    for (x, y) in p.pairs() {
        img[x] = y;
    }
    if p.is_domain_automorphism() {
        for (x, slot) in img.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = x;
            }
        }
    } else {
        let mut hit = vec![false; n];
        for &y in p.images() {
            hit[y] = true;
        }
        let free_targets = (0..n).filter(|&y| !hit[y]);
        let free_sources: Vec<usize> = (0..n).filter(|&x| img[x] == usize::MAX).collect();
        for (x, y) in free_sources.into_iter().zip(free_targets) {
            img[x] = y;
        }
    }
    Perm::from_images_unchecked(img)
}

/// The constructive extender: `theta_pi` for the canonical completion, then
/// exactly the switches forced by the images of `psi`.
pub struct ValuationExtender {
    base: Graph,
    h: ValuationGraph,
}

impl ValuationExtender {
    pub fn new(base: Graph, h: ValuationGraph) -> Result<Self> {
        if base.order() > h.n() {
            return Err(EppaError::input("base graph larger than n"));
        }
        Ok(ValuationExtender { base, h })
    }

    /// `f_x(y)` of the embedding, zero for points outside the base graph.
    fn e(&self, x: usize, y: usize) -> bool {
        x < self.base.order() && y < x && self.base.has_edge(x, y)
    }

    pub fn switch_automorphism(&self, p: &PartialIso) -> Result<SwitchAutomorphism> {
        let n = self.h.n();
        let pi = canonical_completion(p, n);
        let inv = pi.inverse();
        let mut rows = vec![0u64; n];
        let mut forced = vec![false; n];
        for &a in p.images() {
            forced[a] = true;
        }
        for a in (0..n).filter(|&a| forced[a]) {
            let i = inv.apply(a);
            for b in (0..n).filter(|&b| b != a) {
                let flip = self.e(i, inv.apply(b)) != self.e(a, b);
                if forced[b] && b < a {
                    let other = rows[b] >> a & 1 == 1;
                    if other != flip {
                        return Err(EppaError::Internal(format!(
                            "switch on {{{a}, {b}}} is forced both ways for {p:?}"
                        )));
                    }
                    continue;
                }
                if flip {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
        }
        Ok(SwitchAutomorphism { pi, rows })
    }
}

impl Extender<Graph> for ValuationExtender {
    fn extend(&self, p: &PartialIso) -> Result<Perm> {
        Ok(self.switch_automorphism(p)?.to_perm(&self.h))
    }

    fn name(&self) -> String {
        format!("valuation canonical extender (n = {})", self.h.n())
    }
}

/// `G` inside `H_n` (`n` defaults to `|G|`), with labels and the canonical
/// extender attached.
pub fn build_valuation_witness(g: &Graph, n: Option<usize>) -> Result<Witness<Graph>> {
    let h = ValuationGraph::new(n.unwrap_or(g.order()).max(1))?;
    let host = h.to_graph()?;
    let psi = embed_into_valuation(g, &h)?;
    let ext = ValuationExtender::new(g.clone(), h)?;
    Ok(Witness::new(g.clone(), host, psi, format!("valuation H_{}", h.n()))?
        .with_labels(h.labels())
        .with_extender(Arc::new(ext)))
}

/// The orbit of `start` under the group generated by all `theta_pi` and all
/// switches, by closure under adjacent transpositions and single switches.
pub fn generated_orbit(h: &ValuationGraph, start: usize) -> Vec<usize> {
    let n = h.n();
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(i, i + 1);
        gens.push(SwitchAutomorphism::new(Perm::from_images_unchecked(img), &[]).expect("valid"));
    }
    for a in 0..n {
        for b in a + 1..n {
            gens.push(SwitchAutomorphism::new(Perm::identity(n), &[(a, b)]).expect("valid"));
        }
    }
    let mut seen = vec![false; h.order()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = g.apply(h, x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..h.order()).filter(|&x| seen[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::enumerate_partial_autos;
    use crate::small;

    #[test]
    fn small_valuation_graphs() {
        let h1 = build_valuation_graph(1).unwrap();
        assert_eq!((h1.order(), h1.edge_count()), (1, 0));
        let h2 = build_valuation_graph(2).unwrap();
        assert!(crate::search::are_isomorphic(&h2, &Graph::disjoint_cliques(2, 2)));
        assert_eq!(build_valuation_graph(3).unwrap().order(), 12);
        assert!(build_valuation_graph(17).unwrap_err().is_capacity());
        assert!(ValuationGraph::new(16).unwrap().to_graph().unwrap_err().is_capacity());
    }

    #[test]
    fn embedding_rule() {
        let h = ValuationGraph::new(2).unwrap();
        let psi = embed_into_valuation(&Graph::complete(2), &h).unwrap();
        // f_2(1) = 1 and f_1(2) = 0
        assert!(h.value(h.vertex(psi[1]), 0));
        assert!(!h.value(h.vertex(psi[0]), 1));
        assert!(h.adjacent(psi[0], psi[1]));
        let h3 = ValuationGraph::new(3).unwrap();
        let empty = embed_into_valuation(&Graph::empty(3), &h3).unwrap();
        assert!(empty.iter().all(|&x| h3.vertex(x).valuation == 0));
        let p3 = Graph::path(3);
        let psi = embed_into_valuation(&p3, &h3).unwrap();
        for u in 0..3 {
            for v in u + 1..3 {
                assert_eq!(p3.has_edge(u, v), h3.adjacent(psi[u], psi[v]));
            }
        }
        assert!(embed_into_valuation(&Graph::empty(4), &h3).is_err());
    }

    #[test]
    fn labels_are_one_based() {
        let h = ValuationGraph::new(4).unwrap();
        assert_eq!(h.label(h.index(ValuationVertex { projection: 1, valuation: 0b101 })), "(2, 0b101)");
    }

    #[test]
    fn thetas_are_automorphisms_and_compose() {
        let h = ValuationGraph::new(4).unwrap();
        let g = h.to_graph().unwrap();
        let sigma = theta_pi(4, &[1, 2, 3, 0]).unwrap();
        let tau = theta_pi(4, &[0, 3, 1, 2]).unwrap();
        assert!(g.is_automorphism(&sigma.to_perm(&h)));
        let composed = theta_pi(4, sigma.permutation().after(tau.permutation()).images()).unwrap();
        assert_eq!(composed.to_perm(&h), sigma.to_perm(&h).after(&tau.to_perm(&h)));
        assert!(theta_pi(4, &[0, 1, 2, 3]).unwrap().to_perm(&h).is_identity());
        assert!(theta_pi(4, &[0, 0, 1, 2]).is_err());

        let s = theta_switch(4, 0, 2).unwrap();
        let t = theta_switch(4, 1, 3).unwrap();
        assert!(g.is_automorphism(&s.to_perm(&h)));
        assert!(s.to_perm(&h).after(&s.to_perm(&h)).is_identity());
        assert_eq!(s.to_perm(&h).after(&t.to_perm(&h)), t.to_perm(&h).after(&s.to_perm(&h)));
        assert!(theta_switch(4, 2, 2).is_err());
    }

    #[test]
    fn composition_formula_matches_pointwise() {
        let h = ValuationGraph::new(4).unwrap();
        let a = SwitchAutomorphism::new(Perm::from_images(vec![2, 0, 3, 1]).unwrap(), &[(0, 1), (2, 3)]).unwrap();
        let b = SwitchAutomorphism::new(Perm::from_images(vec![1, 3, 0, 2]).unwrap(), &[(0, 3)]).unwrap();
        assert_eq!(a.after(&b).to_perm(&h), a.to_perm(&h).after(&b.to_perm(&h)));
    }

    #[test]
    fn vertex_transitive_small() {
        for n in 1..=4 {
            let h = ValuationGraph::new(n).unwrap();
            assert_eq!(generated_orbit(&h, 0).len(), h.order());
        }
    }

    #[test]
    fn empty_map_gives_identity() {
        let w = build_valuation_witness(&Graph::cycle(5), None).unwrap();
        let e = w.extender.as_ref().unwrap();
        assert!(e.extend(&PartialIso::empty()).unwrap().is_identity());
    }

    #[test]
    fn extender_sound_on_all_graphs_up_to_five() {
        for g in small::graphs_up_to(5) {
            let h = ValuationGraph::new(g.order()).unwrap();
            let ext = ValuationExtender::new(g.clone(), h).unwrap();
            let host = h.to_graph().unwrap();
            let psi = embed_into_valuation(&g, &h).unwrap();
            for p in enumerate_partial_autos(&g, None) {
                let s = ext.switch_automorphism(&p).unwrap();
                let perm = s.to_perm(&h);
                assert!(host.is_automorphism(&perm), "{g:?} {p:?}");
                for (x, y) in p.pairs() {
                    assert_eq!(perm.apply(psi[x]), psi[y]);
                }
            }
        }
    }

    #[test]
    fn canonical_extender_is_multiplicative_on_substructure_automorphisms() {
        for g in small::graphs_up_to(4) {
            let h = ValuationGraph::new(g.order()).unwrap();
            let ext = ValuationExtender::new(g.clone(), h).unwrap();
            let autos: Vec<PartialIso> =
                enumerate_partial_autos(&g, None).filter(|p| p.is_domain_automorphism()).collect();
            for f in &autos {
                for gg in autos.iter().filter(|x| x.domain() == f.domain()) {
                    let lhs = ext.switch_automorphism(&gg.after(f)).unwrap();
                    let rhs = ext.switch_automorphism(gg).unwrap().after(&ext.switch_automorphism(f).unwrap());
                    assert_eq!(lhs.to_perm(&h), rhs.to_perm(&h), "{g:?}: f={f:?} g={gg:?}");
                }
            }
        }
    }
}
