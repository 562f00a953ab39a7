//! Partial automorphisms and their deterministic enumeration.

use crate::error::{EppaError, Result};
use crate::structure::Structure;
use crate::Count;
use std::fmt;

/// A finite injective partial map, stored sorted by domain point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialIso {
    dom: Vec<usize>,
    img: Vec<usize>,
}

impl PartialIso {
    pub fn empty() -> Self {
        PartialIso { dom: Vec::new(), img: Vec::new() }
    }

    /// Builds a map from `(source, image)` pairs, rejecting non-injective input.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let mut ps = pairs.to_vec();
        ps.sort_unstable();
        for w in ps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(EppaError::input(format!("vertex {} mapped twice", w[0].0)));
            }
        }
        let mut imgs: Vec<usize> = ps.iter().map(|p| p.1).collect();
        imgs.sort_unstable();
        if imgs.windows(2).any(|w| w[0] == w[1]) {
            return Err(EppaError::input("map is not injective"));
        }
        Ok(PartialIso { dom: ps.iter().map(|p| p.0).collect(), img: ps.iter().map(|p| p.1).collect() })
    }

    /// Like [`from_pairs`](Self::from_pairs) but also checks it is a partial
    /// automorphism of `s`.
    pub fn on<S: Structure>(s: &S, pairs: &[(usize, usize)]) -> Result<Self> {
        let p = PartialIso::from_pairs(pairs)?;
        if !is_partial_automorphism(s, &p) {
            return Err(EppaError::input(format!("{p:?} is not a partial automorphism")));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.dom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dom.is_empty()
    }

    /// Domain, increasing.
    pub fn domain(&self) -> &[usize] {
        &self.dom
    }

    /// Images, aligned with [`domain`](Self::domain).
    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// Range, increasing.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.img.clone();
        r.sort_unstable();
        r
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.dom.binary_search(&x).ok().map(|i| self.img[i])
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.dom.iter().copied().zip(self.img.iter().copied()).collect()
    }

    pub fn inverse(&self) -> PartialIso {
        let mut ps: Vec<(usize, usize)> = self.img.iter().copied().zip(self.dom.iter().copied()).collect();
        ps.sort_unstable();
        PartialIso { dom: ps.iter().map(|p| p.0).collect(), img: ps.iter().map(|p| p.1).collect() }
    }

    /// `self ∘ first` on the points where both are defined in sequence.
    pub fn after(&self, first: &PartialIso) -> PartialIso {
        let ps: Vec<(usize, usize)> =
            first.pairs().into_iter().filter_map(|(x, y)| self.get(y).map(|z| (x, z))).collect();
        PartialIso { dom: ps.iter().map(|p| p.0).collect(), img: ps.iter().map(|p| p.1).collect() }
    }

    /// Whether the map is a permutation of its own domain.
    pub fn is_domain_automorphism(&self) -> bool {
        self.range() == self.dom
    }

    /// Conjugate by a vertex map: `(phi(x), phi(p x))`.
    pub fn transport(&self, phi: &[usize]) -> PartialIso {
        let ps: Vec<(usize, usize)> = self.pairs().into_iter().map(|(x, y)| (phi[x], phi[y])).collect();
        PartialIso::from_pairs(&ps).expect("transport along an injective map stays injective")
    }
}

impl fmt::Debug for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "}}")
    }
}

pub fn is_partial_automorphism<S: Structure>(s: &S, p: &PartialIso) -> bool {
    s.preserves(s, &p.pairs())
}

/// Vertex subsets of `0..n` with at most `max_size` elements, in colex order
/// (increasing as bitmasks).
pub fn subsets_colex(n: usize, max_size: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 64, "subset enumeration is limited to 63 points");
    let end: u64 = 1u64 << n;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let m = next?;
        let mut following = m + 1;
        while following < end && following.count_ones() as usize > max_size {
            following += following & following.wrapping_neg();
        }
        next = (following < end).then_some(following);
        Some((0..n).filter(|&i| m >> i & 1 == 1).collect())
    })
}

/// All partial automorphisms with domain exactly `dom` (sorted), images in
/// lexicographic order.
pub fn maps_on_domain<S: Structure>(s: &S, dom: &[usize]) -> Vec<PartialIso> {
    let mut out = Vec::new();
    let mut img = Vec::with_capacity(dom.len());
    let mut used = vec![false; s.order()];
    fn rec<S: Structure>(
        s: &S,
        dom: &[usize],
        img: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<PartialIso>,
    ) {
        let k = img.len();
        if k == dom.len() {
            out.push(PartialIso { dom: dom.to_vec(), img: img.clone() });
            return;
        }
        for w in 0..s.order() {
            if used[w] || !s.step_consistent(s, &dom[..k], img, dom[k], w) {
                continue;
            }
            used[w] = true;
            img.push(w);
            rec(s, dom, img, used, out);
            img.pop();
            used[w] = false;
        }
    }
    rec(s, dom, &mut img, &mut used, &mut out);
    out
}

/// Every partial automorphism of `s` with domain size at most `max_size`
/// (unbounded when `None`), including the empty map; domains in colex order,
/// images lexicographic within a domain.
pub fn enumerate_partial_autos<S: Structure>(
    s: &S,
    max_size: Option<usize>,
) -> impl Iterator<Item = PartialIso> + '_ {
    let n = s.order();
    subsets_colex(n, max_size.unwrap_or(n)).flat_map(move |dom| maps_on_domain(s, &dom))
}

/// Exact number of partial automorphisms, including the empty map.
pub fn count_partial_autos<S: Structure>(s: &S) -> Count {
    let mut total = Count::default();
    for dom in subsets_colex(s.order(), s.order()) {
        total += maps_on_domain(s, &dom).len();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Graph;
    use proptest::prelude::*;

    #[test]
    fn colex_order_and_size_cap() {
        let all: Vec<_> = subsets_colex(3, 3).collect();
        assert_eq!(
            all,
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        let small: Vec<_> = subsets_colex(4, 1).collect();
        assert_eq!(small, vec![vec![], vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn tiny_counts() {
        assert_eq!(count_partial_autos(&Graph::complete(1)), Count::from(2u32));
        assert_eq!(count_partial_autos(&Graph::complete(2)), Count::from(7u32));
        assert_eq!(enumerate_partial_autos(&Graph::complete(2), Some(1)).count(), 5);
    }

    // Oracle: all pairs of subsets of equal size, all bijections between them.
    fn brute_count(g: &Graph) -> usize {
        let n = g.order();
        let mut count = 0;
        for a in 0u32..1 << n {
            for b in 0u32..1 << n {
                if a.count_ones() != b.count_ones() {
                    continue;
                }
                let av: Vec<usize> = (0..n).filter(|&i| a >> i & 1 == 1).collect();
                let bv: Vec<usize> = (0..n).filter(|&i| b >> i & 1 == 1).collect();
                for perm in permutations(bv.len()) {
                    let ok = (0..av.len()).all(|x| {
                        (0..av.len()).all(|y| {
                            x == y || g.has_edge(av[x], av[y]) == g.has_edge(bv[perm[x]], bv[perm[y]])
                        })
                    });
                    count += ok as usize;
                }
            }
        }
        count
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn path_count_matches_double_loop() {
        let p3 = Graph::path(3);
        assert_eq!(count_partial_autos(&p3), Count::from(brute_count(&p3)));
    }

    #[test]
    fn empty_graph_closed_form() {
        for n in 0..=5u64 {
            let expected: u64 = (0..=n)
                .map(|k| {
                    let c = crate::count::binomial::<u64>(n, k).unwrap();
                    c * c * crate::count::factorial::<u64>(k).unwrap()
                })
                .sum();
            assert_eq!(count_partial_autos(&Graph::empty(n as usize)), Count::from(expected));
        }
    }

    #[test]
    fn composition_and_inverse() {
        let f = PartialIso::from_pairs(&[(0, 1), (2, 0)]).unwrap();
        let g = PartialIso::from_pairs(&[(1, 2), (0, 3)]).unwrap();
        assert_eq!(g.after(&f), PartialIso::from_pairs(&[(0, 2), (2, 3)]).unwrap());
        assert_eq!(f.inverse().after(&f), PartialIso::from_pairs(&[(0, 0), (2, 2)]).unwrap());
        assert!(PartialIso::from_pairs(&[(0, 1), (2, 1)]).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
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

    proptest! {
        #[test]
        fn enumerated_maps_are_partial_automorphisms(g in arb_graph(5)) {
            let all: Vec<_> = enumerate_partial_autos(&g, None).collect();
            for p in &all {
                prop_assert!(is_partial_automorphism(&g, p));
            }
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), all.len());
            prop_assert_eq!(all.len(), brute_count(&g));
        }
    }
}
