//! Intersection-graph witnesses over a degree-regularized edge universe.
//!
//! Every vertex of `G` gets half-edge tokens until it meets exactly `d`
//! elements of `E' = E(G) ∪ half-edges`. The witness has the `d`-subsets of
//! `E'` as vertices, joined when they intersect, and `psi(v)` is the set of
//! elements at `v`. A partial automorphism of `G` extends to a permutation of
//! `E'` whose action on subsets is the required automorphism.
//!
//! The directed variant uses arcs plus out- and in-half tokens; a vertex is
//! an ordered pair `(A1, A2)` of disjoint `d`-subsets, with an arc
//! `(A1, A2) -> (B1, B2)` iff `A1 ∩ B2 != ∅`.

use crate::combin::{colex_rank, k_subsets_colex};
use crate::count::{binom_usize, binomial_big};
use crate::error::{EppaError, Result};
use crate::partial::PartialIso;
use crate::perm::Perm;
use crate::structure::{Digraph, Graph, Structure};
use crate::verify::{Extender, Witness};
use crate::{Count, MATERIALIZE_CAP};
use fixedbitset::FixedBitSet;
use std::sync::Arc;

/// Witnesses with more vertices than this are refused.
pub const DEFAULT_KNESER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Edge `{u, v}` with `u < v`, or arc `u -> v`.
    Edge(usize, usize),
    /// Half-edge `t` at `v`.
    Half(usize, usize),
    /// Directed half tokens: `Out(v, t)` leaves `v`, `In(v, t)` enters `v`.
    Out(usize, usize),
    In(usize, usize),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Element::Edge(u, v) => write!(f, "{u}-{v}"),
            Element::Half(v, t) => write!(f, "h{v}.{t}"),
            Element::Out(v, t) => write!(f, "o{v}.{t}"),
            Element::In(v, t) => write!(f, "i{v}.{t}"),
        }
    }
}

/// The element universe `E'` in its fixed global order.
#[derive(Debug, Clone)]
pub struct EdgeUniverse {
    pub d: usize,
    pub elements: Vec<Element>,
    /// Sorted element indices incident to each vertex.
    pub incident: Vec<Vec<usize>>,
}

impl EdgeUniverse {
    /// Edges in lexicographic order, then half-edges by vertex and token.
    pub fn new(g: &Graph, d: usize) -> Result<Self> {
        check_degree(g.max_degree(), d)?;
        let n = g.order();
        let mut elements: Vec<Element> = g.edges().map(|(u, v)| Element::Edge(u, v)).collect();
        for v in 0..n {
            elements.extend((0..d - g.degree(v)).map(|t| Element::Half(v, t)));
        }
        let mut incident = vec![Vec::new(); n];
        for (i, e) in elements.iter().enumerate() {
            match *e {
                Element::Edge(u, v) => {
                    incident[u].push(i);
                    incident[v].push(i);
                }
                Element::Half(v, _) => incident[v].push(i),
                _ => unreachable!(),
            }
        }
        Ok(EdgeUniverse { d, elements, incident })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_degree(max_degree: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(EppaError::input(format!("degree parameter must be at least 2, got {d}")));
    }
    if d < max_degree {
        return Err(EppaError::input(format!("degree parameter {d} is below the maximum degree {max_degree}")));
    }
    Ok(())
}

fn check_size(count: &Count, cap: usize) -> Result<usize> {
    let c = crate::count::to_u64(count).unwrap_or(u64::MAX);
    let limit = cap.min(MATERIALIZE_CAP) as u64;
    if c > limit {
        return Err(EppaError::capacity("Kneser witness vertices", count, limit));
    }
    Ok(c as usize)
}

/// `C(dn - m, d)`; `None` when `dn < m + d`.
pub fn kneser_size_bound(n: u64, m: u64, d: u64) -> Option<Count> {
    let universe = (d * n).checked_sub(m)?;
    (universe >= d).then(|| binomial_big(universe, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserBound {
    pub direct: Count,
    /// Same bound for the complement graph, which gives a witness for `G`
    /// after complementing.
    pub complement: Option<Count>,
    pub best: Count,
}

/// The bound for `g` and for its complement, each with `d = max(2, Δ)`.
pub fn kneser_bound_for(g: &Graph) -> KneserBound {
    let of = |h: &Graph| {
        let d = h.max_degree().max(2) as u64;
        kneser_size_bound(h.order() as u64, h.edge_count() as u64, d)
    };
    let direct = of(g).unwrap_or_else(|| Count::from(g.order().max(1)));
    let complement = of(&g.complement());
    let best = complement.clone().map_or(direct.clone(), |c| c.min(direct.clone()));
    KneserBound { direct, complement, best }
}

/// Vertices are `d`-subsets of `universe` in colex order; returns the
/// subsets and the intersection graph on them.
fn intersection_graph(universe: usize, d: usize) -> (Vec<Vec<usize>>, Graph) {
    let subsets = k_subsets_colex(universe, d);
    let count = subsets.len();
    let mut members = vec![FixedBitSet::with_capacity(count); universe];
    for (i, s) in subsets.iter().enumerate() {
        for &e in s {
            members[e].insert(i);
        }
    }
    let rows = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = FixedBitSet::with_capacity(count);
            for &e in s {
                row.union_with(&members[e]);
            }
            row.set(i, false);
            row
        })
        .collect();
    (subsets, Graph::from_rows(rows))
}

/// The intersection witness for `g`; `d` defaults to `max(2, Δ(g))`.
pub fn build_kneser_witness(g: &Graph, d: Option<usize>) -> Result<Witness<Graph>> {
    build_kneser_witness_capped(g, d, DEFAULT_KNESER_CAP)
}

pub fn build_kneser_witness_capped(g: &Graph, d: Option<usize>, cap: usize) -> Result<Witness<Graph>> {
    let d = d.unwrap_or(g.max_degree().max(2));
    let universe = EdgeUniverse::new(g, d)?;
    check_size(&binomial_big(universe.len() as u64, d as u64), cap)?;
    let (subsets, host) = intersection_graph(universe.len(), d);
    let psi: Vec<usize> = universe.incident.iter().map(|s| colex_rank(s)).collect();
    let labels = subsets
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|&e| universe.elements[e].to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let ext = KneserExtender { universe: universe.clone(), subsets, base: g.clone() };
    Ok(Witness::new(g.clone(), host, psi, format!("kneser d={d}"))?.with_labels(labels).with_extender(Arc::new(ext)))
}

/// Sorted matching of `from` onto `to` (equal lengths).
fn match_sorted(sigma: &mut [usize], from: &[usize], to: &[usize]) {
    debug_assert_eq!(from.len(), to.len());
    for (&a, &b) in from.iter().zip(to) {
        sigma[a] = b;
    }
}

/// Step (c): identity on untouched elements that are also unused targets,
/// the sorted matching on the rest.
fn complete(sigma: &mut [usize]) {
    let n = sigma.len();
    let mut hit = vec![false; n];
    for &y in sigma.iter().filter(|&&y| y != usize::MAX) {
        hit[y] = true;
    }
    let mut sources = Vec::new();
    for x in 0..n {
        if sigma[x] == usize::MAX {
            if !hit[x] {
                sigma[x] = x;
                hit[x] = true;
            } else {
                sources.push(x);
            }
        }
    }
    let targets: Vec<usize> = (0..n).filter(|&y| !hit[y]).collect();
    match_sorted(sigma, &sources, &targets);
}

pub struct KneserExtender {
    universe: EdgeUniverse,
    subsets: Vec<Vec<usize>>,
    base: Graph,
}

impl KneserExtender {
    /// The permutation of `E'` built in steps (a)-(c).
    pub fn element_permutation(&self, p: &PartialIso) -> Result<Perm> {
        let u = &self.universe;
        let mut sigma = vec![usize::MAX; u.len()];
        let mut taken = vec![false; u.len()];
        let index_of = |e: Element| u.elements.iter().position(|&x| x == e).expect("element exists");
        // (a) edges inside the domain
        for (i, &e) in u.elements.iter().enumerate() {
            if let Element::Edge(a, b) = e {
                if let (Some(x), Some(y)) = (p.get(a), p.get(b)) {
                    let j = index_of(Element::Edge(x.min(y), x.max(y)));
                    sigma[i] = j;
                    taken[j] = true;
                }
            }
        }
        // (b) the remaining elements at each domain vertex
        for (v, w) in p.pairs() {
            let from: Vec<usize> = u.incident[v].iter().copied().filter(|&e| sigma[e] == usize::MAX).collect();
            let to: Vec<usize> = u.incident[w].iter().copied().filter(|&e| !taken[e]).collect();
            if from.len() != to.len() {
                return Err(EppaError::Internal(format!(
                    "{} free elements at {v} but {} at {w}",
                    from.len(),
                    to.len()
                )));
            }
            match_sorted(&mut sigma, &from, &to);
            for &t in &to {
                taken[t] = true;
            }
        }
        complete(&mut sigma);
        Ok(Perm::from_images_unchecked(sigma))
    }
}

impl Extender<Graph> for KneserExtender {
    fn extend(&self, p: &PartialIso) -> Result<Perm> {
        if !crate::partial::is_partial_automorphism(&self.base, p) {
            return Err(EppaError::input(format!("{p:?} is not a partial automorphism")));
        }
        let sigma = self.element_permutation(p)?;
        Ok(action_on_subsets(&sigma, &self.subsets))
    }

    fn name(&self) -> String {
        format!("kneser permutation extender (d = {})", self.universe.d)
    }
}

fn image_rank(sigma: &Perm, s: &[usize]) -> usize {
    let mut img: Vec<usize> = s.iter().map(|&e| sigma.apply(e)).collect();
    img.sort_unstable();
    colex_rank(&img)
}

/// The action of an element permutation on colex-ranked subsets.
pub fn action_on_subsets(sigma: &Perm, subsets: &[Vec<usize>]) -> Perm {
    Perm::from_images_unchecked(subsets.iter().map(|s| image_rank(sigma, s)).collect())
}

/// Universe for the directed variant: arcs (lexicographic), then out-half
/// and in-half tokens by vertex.
#[derive(Debug, Clone)]
pub struct ArcUniverse {
    pub d: usize,
    pub elements: Vec<Element>,
    pub out: Vec<Vec<usize>>,
    pub inc: Vec<Vec<usize>>,
}

impl ArcUniverse {
    pub fn new(dg: &Digraph, d: usize) -> Result<Self> {
        let n = dg.order();
        let max_deg = (0..n).map(|v| dg.out_degree(v).max(dg.in_degree(v))).max().unwrap_or(0);
        check_degree(max_deg, d)?;
        let mut elements: Vec<Element> = dg.arcs().map(|(u, v)| Element::Edge(u, v)).collect();
        for v in 0..n {
            elements.extend((0..d - dg.out_degree(v)).map(|t| Element::Out(v, t)));
        }
        for v in 0..n {
            elements.extend((0..d - dg.in_degree(v)).map(|t| Element::In(v, t)));
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, e) in elements.iter().enumerate() {
            match *e {
                Element::Edge(u, v) => {
                    out[u].push(i);
                    inc[v].push(i);
                }
                Element::Out(v, _) => out[v].push(i),
                Element::In(v, _) => inc[v].push(i),
                Element::Half(..) => unreachable!(),
            }
        }
        Ok(ArcUniverse { d, elements, out, inc })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Number of ordered pairs of disjoint `d`-subsets of an `x`-set.
pub fn relational_kneser_size(x: u64, d: u64) -> Count {
    if x < 2 * d {
        return Count::default();
    }
    binomial_big(x, d) * binomial_big(x - d, d)
}

struct PairSpace {
    subsets: Vec<Vec<usize>>,
    /// `(rank A1, rank A2)` per witness vertex, sorted.
    pairs: Vec<(usize, usize)>,
}

impl PairSpace {
    fn index(&self, a: usize, b: usize) -> usize {
        self.pairs.binary_search(&(a, b)).expect("pair of disjoint subsets")
    }
}

/// The directed intersection witness for `dg` (`d` defaults to the largest
/// in- or out-degree, at least 2).
pub fn build_relational_kneser_witness(dg: &Digraph, d: Option<usize>) -> Result<Witness<Digraph>> {
    build_relational_kneser_witness_capped(dg, d, DEFAULT_KNESER_CAP)
}

pub fn build_relational_kneser_witness_capped(dg: &Digraph, d: Option<usize>, cap: usize) -> Result<Witness<Digraph>> {
    let n = dg.order();
    let d = d.unwrap_or((0..n).map(|v| dg.out_degree(v).max(dg.in_degree(v))).max().unwrap_or(0).max(2));
    let universe = ArcUniverse::new(dg, d)?;
    let x = universe.len();
    check_size(&relational_kneser_size(x as u64, d as u64), cap)?;
    let subsets = k_subsets_colex(x, d);
    let masks: Vec<u128> = subsets.iter().map(|s| s.iter().fold(0u128, |m, &e| m | 1 << e)).collect();
    if x > 128 {
        return Err(EppaError::capacity("directed universe elements", x, 128));
    }
    let mut pairs = Vec::new();
    for a in 0..subsets.len() {
        for b in 0..subsets.len() {
            if masks[a] & masks[b] == 0 {
                pairs.push((a, b));
            }
        }
    }
    let count = pairs.len();
    // vertices whose second part contains each element
    let mut heads = vec![FixedBitSet::with_capacity(count); x];
    for (i, &(_, b)) in pairs.iter().enumerate() {
        for &e in &subsets[b] {
            heads[e].insert(i);
        }
    }
    let rows = pairs
        .iter()
        .map(|&(a, _)| {
            let mut row = FixedBitSet::with_capacity(count);
            for &e in &subsets[a] {
                row.union_with(&heads[e]);
            }
            row
        })
        .collect();
    let host = Digraph::from_out_rows(rows);
    let space = PairSpace { subsets, pairs };
    let psi: Vec<usize> =
        (0..n).map(|v| space.index(colex_rank(&universe.out[v]), colex_rank(&universe.inc[v]))).collect();
    let show = |s: &[usize]| s.iter().map(|&e| universe.elements[e].to_string()).collect::<Vec<_>>().join(",");
    let labels =
        space.pairs.iter().map(|&(a, b)| format!("({{{}}}, {{{}}})", show(&space.subsets[a]), show(&space.subsets[b]))).collect();
    let ext = RelationalKneserExtender { universe, space, base: dg.clone() };
    Ok(Witness::new(dg.clone(), host, psi, format!("relational kneser d={d}"))?
        .with_labels(labels)
        .with_extender(Arc::new(ext)))
}

pub struct RelationalKneserExtender {
    universe: ArcUniverse,
    space: PairSpace,
    base: Digraph,
}

impl RelationalKneserExtender {
    pub fn element_permutation(&self, p: &PartialIso) -> Result<Perm> {
        let u = &self.universe;
        let mut sigma = vec![usize::MAX; u.len()];
        let mut taken = vec![false; u.len()];
        for (i, &e) in u.elements.iter().enumerate() {
            if let Element::Edge(a, b) = e {
                if let (Some(x), Some(y)) = (p.get(a), p.get(b)) {
                    let j = u.elements.iter().position(|&z| z == Element::Edge(x, y)).expect("arc is preserved");
                    sigma[i] = j;
                    taken[j] = true;
                }
            }
        }
        for (v, w) in p.pairs() {
            for (src, dst) in [(&u.out[v], &u.out[w]), (&u.inc[v], &u.inc[w])] {
                let from: Vec<usize> = src.iter().copied().filter(|&e| sigma[e] == usize::MAX).collect();
                let to: Vec<usize> = dst.iter().copied().filter(|&e| !taken[e]).collect();
                if from.len() != to.len() {
                    return Err(EppaError::Internal(format!("free token counts differ at {v} -> {w}")));
                }
                match_sorted(&mut sigma, &from, &to);
                for &t in &to {
                    taken[t] = true;
                }
            }
        }
        complete(&mut sigma);
        Ok(Perm::from_images_unchecked(sigma))
    }
}

impl Extender<Digraph> for RelationalKneserExtender {
    fn extend(&self, p: &PartialIso) -> Result<Perm> {
        if !crate::partial::is_partial_automorphism(&self.base, p) {
            return Err(EppaError::input(format!("{p:?} is not a partial automorphism")));
        }
        let sigma = self.element_permutation(p)?;
        let s = &self.space;
        let images = s
            .pairs
            .iter()
            .map(|&(a, b)| s.index(image_rank(&sigma, &s.subsets[a]), image_rank(&sigma, &s.subsets[b])))
            .collect();
        Ok(Perm::from_images_unchecked(images))
    }

    fn name(&self) -> String {
        format!("relational kneser permutation extender (d = {})", self.universe.d)
    }
}

/// Witness size `C(dn - m, d)` computed without building anything.
pub fn kneser_witness_order(g: &Graph, d: usize) -> Result<usize> {
    let u = EdgeUniverse::new(g, d)?;
    Ok(binom_usize(u.len(), d))
}
