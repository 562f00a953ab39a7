//! Lower bounds from an independent set `A` and the distinct numbers of
//! neighbours that outside vertices have in `A`:
//! `eppa(G) >= |A| + sum_i C(|A|, k_i)`.

use crate::count::binomial_big;
use crate::error::{EppaError, Result};
use crate::structure::{Graph, Structure};
use crate::Count;
use fixedbitset::FixedBitSet;

/// Exact mode refuses graphs with more vertices.
pub const DEFAULT_EXACT_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Exact,
    Greedy,
}

impl std::str::FromStr for BoundMode {
    type Err = EppaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(BoundMode::Exact),
            "greedy" => Ok(BoundMode::Greedy),
            _ => Err(EppaError::input(format!("unknown bound mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub value: Count,
    /// Sorted independent set of the graph the bound was computed on.
    pub independent_set: Vec<usize>,
    /// `(v, k)`: `v` outside `A` with exactly `k` neighbours in `A`; `k`
    /// strictly increasing.
    pub witnesses: Vec<(usize, usize)>,
    /// Computed on the complement.
    pub complemented: bool,
}

impl BoundCertificate {
    /// Rechecks everything against `g` from scratch.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |m: String| Err(EppaError::Internal(format!("certificate invalid: {m}")));
        let x = if self.complemented { g.complement() } else { g.clone() };
        let a = &self.independent_set;
        if a.iter().any(|&v| v >= x.order()) || a.windows(2).any(|w| w[0] >= w[1]) {
            return fail("set is not a sorted vertex list".into());
        }
        if !x.is_independent(a) {
            return fail(format!("{a:?} is not independent"));
        }
        let mut value = Count::from(a.len());
        for (i, &(v, k)) in self.witnesses.iter().enumerate() {
            if a.contains(&v) || v >= x.order() {
                return fail(format!("witness {v} lies in the set"));
            }
            let actual = a.iter().filter(|&&u| x.has_edge(u, v)).count();
            if actual != k || k == 0 {
                return fail(format!("witness {v} has {actual} neighbours in the set, claimed {k}"));
            }
            if i > 0 && self.witnesses[i - 1].1 >= k {
                return fail("neighbour counts are not increasing".into());
            }
            value += binomial_big(a.len() as u64, k as u64);
        }
        if value != self.value {
            return fail(format!("value {} recomputes to {value}", self.value));
        }
        Ok(())
    }

    /// The `k_i` with the largest binomial, if any.
    pub fn best_k(&self) -> Option<usize> {
        let m = self.independent_set.len() as u64;
        self.witnesses.iter().map(|w| w.1).max_by_key(|&k| (binomial_big(m, k as u64), std::cmp::Reverse(k)))
    }
}

/// The certificate for a fixed independent set `a` of `x`.
pub fn certificate_for(x: &Graph, a: &[usize], complemented: bool) -> BoundCertificate {
    let mut set = FixedBitSet::with_capacity(x.order());
    a.iter().for_each(|&v| set.insert(v));
    let mut first: Vec<Option<usize>> = vec![None; a.len() + 1];
    for v in (0..x.order()).filter(|&v| !set.contains(v)) {
        let k = x.neighbors(v).intersection(&set).count();
        if k > 0 && first[k].is_none() {
            first[k] = Some(v);
        }
    }
    let witnesses: Vec<(usize, usize)> = first.iter().enumerate().filter_map(|(k, v)| v.map(|v| (v, k))).collect();
    let m = a.len() as u64;
    let value = witnesses.iter().fold(Count::from(m), |acc, &(_, k)| acc + binomial_big(m, k as u64));
    let mut independent_set = a.to_vec();
    independent_set.sort_unstable();
    BoundCertificate { value, independent_set, witnesses, complemented }
}

/// Best certificate over `g` and its complement; ties keep `g`.
pub fn lower_bound_hrus(g: &Graph, mode: BoundMode) -> Result<BoundCertificate> {
    lower_bound_hrus_capped(g, mode, DEFAULT_EXACT_CAP)
}

pub fn lower_bound_hrus_capped(g: &Graph, mode: BoundMode, cap: usize) -> Result<BoundCertificate> {
    if mode == BoundMode::Exact && g.order() > cap {
        return Err(EppaError::capacity("vertices for exact bound (use greedy mode)", g.order(), cap));
    }
    let run = |x: &Graph, complemented: bool| match mode {
        BoundMode::Exact => exact(x, complemented),
        BoundMode::Greedy => greedy(x, complemented),
    };
    let direct = run(g, false);
    let co = run(&g.complement(), true);
    Ok(if co.value > direct.value { co } else { direct })
}

/// Largest value any set of size `s` could reach in a graph on `n` vertices.
fn potential(n: usize, s: usize) -> Count {
    let mut bins: Vec<Count> = (1..=s).map(|k| binomial_big(s as u64, k as u64)).collect();
    bins.sort_unstable_by(|a, b| b.cmp(a));
    bins.into_iter().take(n - s).fold(Count::from(s), |acc, b| acc + b)
}

fn keep(best: &mut Option<BoundCertificate>, c: BoundCertificate) {
    if best.as_ref().is_none_or(|b| c.value > b.value) {
        *best = Some(c);
    }
}

/// Maximum over all maximal independent sets, by Bron-Kerbosch with a
/// clique-cover bound on how far the current set can still grow.
fn exact(x: &Graph, complemented: bool) -> BoundCertificate {
    let n = x.order();
    if n == 0 {
        return certificate_for(x, &[], complemented);
    }
    let potentials: Vec<Count> = (0..=n).map(|s| potential(n, s)).collect();
    // best potential for any final size in r..=s
    let bound = |r: usize, s: usize| potentials[r..=s].iter().max().cloned().unwrap_or_default();
    let mut best = None;
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x0 = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(x, &mut r, p, x0, &mut best, &bound, complemented);
    best.expect("some maximal independent set exists")
}

fn clique_cover(x: &Graph, p: &FixedBitSet) -> usize {
    let mut cliques: Vec<FixedBitSet> = Vec::new();
    for v in p.ones() {
        match cliques.iter_mut().find(|c| c.is_subset(x.neighbors(v))) {
            Some(c) => c.insert(v),
            None => {
                let mut c = FixedBitSet::with_capacity(x.order());
                c.insert(v);
                cliques.push(c);
            }
        }
    }
    cliques.len()
}

fn bron_kerbosch(
    x: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut excl: FixedBitSet,
    best: &mut Option<BoundCertificate>,
    bound: &impl Fn(usize, usize) -> Count,
    complemented: bool,
) {
    if p.is_clear() {
        if excl.is_clear() {
            keep(best, certificate_for(x, r, complemented));
        }
        return;
    }
    if let Some(b) = best.as_ref() {
        if bound(r.len(), r.len() + clique_cover(x, &p)) <= b.value {
            return;
        }
    }
    // every maximal set avoids the pivot or contains a vertex in conflict
    // with it; pick the pivot with the fewest conflicts in p
    let conflicts = |u: usize| {
        let mut c = p.intersection(x.neighbors(u)).collect::<FixedBitSet>();
        c.grow(x.order());
        if p.contains(u) {
            c.insert(u);
        }
        c
    };
    let pivot = p
        .ones()
        .chain(excl.ones())
        .min_by_key(|&u| (conflicts(u).count_ones(..), u))
        .expect("p is nonempty");
    let branch = conflicts(pivot);
    for v in branch.ones().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.difference_with(x.neighbors(v));
        np.set(v, false);
        let mut nx = excl.clone();
        nx.difference_with(x.neighbors(v));
        nx.set(v, false);
        r.push(v);
        bron_kerbosch(x, r, np, nx, best, bound, complemented);
        r.pop();
        p.set(v, false);
        excl.insert(v);
    }
}

/// One maximal independent set per start vertex, grown by repeatedly taking
/// the candidate with fewest candidate neighbours.
fn greedy(x: &Graph, complemented: bool) -> BoundCertificate {
    let n = x.order();
    let mut best = None;
    for start in 0..n {
        let mut a = vec![start];
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(..);
        cand.difference_with(x.neighbors(start));
        cand.set(start, false);
        while let Some(v) = cand.ones().min_by_key(|&v| (x.neighbors(v).intersection(&cand).count(), v)) {
            a.push(v);
            cand.difference_with(x.neighbors(v));
            cand.set(v, false);
        }
        keep(&mut best, certificate_for(x, &a, complemented));
    }
    best.unwrap_or_else(|| certificate_for(x, &[], complemented))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: every independent set by bitmask.
    fn brute(g: &Graph) -> Count {
        let mut best = Count::default();
        for x in [g.clone(), g.complement()] {
            let n = x.order();
            for mask in 0u32..1 << n {
                let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if !x.is_independent(&a) {
                    continue;
                }
                let maximal = (0..n).all(|v| a.contains(&v) || a.iter().any(|&u| x.has_edge(u, v)));
                if maximal {
                    best = best.max(certificate_for(&x, &a, false).value);
                }
            }
        }
        best
    }

    fn random_graph(n: usize, bits: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (i % 64) & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
                i += 1;
            }
        }
        g
    }

    #[test]
    fn cliques_use_the_complement() {
        let c = lower_bound_hrus(&Graph::complete(5), BoundMode::Exact).unwrap();
        assert!(c.complemented);
        assert_eq!(c.value, Count::from(5u32));
        assert!(c.witnesses.is_empty());
    }

    #[test]
    fn certificate_value_formula() {
        let g = Graph::star(4);
        let c = certificate_for(&g, &[1, 2, 3, 4], false);
        assert_eq!(c.witnesses, vec![(0, 4)]);
        assert_eq!(c.value, Count::from(5u32));
        c.validate(&g).unwrap();
        let mut bad = c.clone();
        bad.witnesses[0].1 = 3;
        assert!(bad.validate(&g).is_err());
    }

    #[test]
    fn exact_cap() {
        assert!(lower_bound_hrus(&Graph::empty(26), BoundMode::Exact).unwrap_err().is_capacity());
        assert!(lower_bound_hrus(&Graph::empty(26), BoundMode::Greedy).is_ok());
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(n in 1usize..9, bits in any::<u64>()) {
            let g = random_graph(n, bits);
            let c = lower_bound_hrus(&g, BoundMode::Exact).unwrap();
            c.validate(&g).unwrap();
            prop_assert_eq!(c.value.clone(), brute(&g));
            let gr = lower_bound_hrus(&g, BoundMode::Greedy).unwrap();
            gr.validate(&g).unwrap();
            prop_assert!(gr.value <= c.value);
        }
    }
}
