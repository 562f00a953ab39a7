//! Valuation witnesses for `r`-uniform hypergraphs, and the hypergraph whose
//! witnesses must be large.
//!
//! A vertex is `(i, f)` with `f` a bit on every `(r-1)`-subset of
//! `[n] \ {i}`. An `r`-set of vertices with distinct projections `P` is a
//! hyperedge iff `sum_t f_t(P \ {i_t})` is odd.

use crate::combin::{colex_rank, k_subsets_colex};
use crate::count::{binom_usize, binomial_big, factorial_big, power_big};
use crate::error::{EppaError, Result};
use crate::structure::{Hypergraph, Structure};
use crate::valuation::pos;
use crate::verify::Witness;
use crate::{Count, MATERIALIZE_CAP};

/// Hyperedges a valuation host may have.
pub const HYPEREDGE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperValuation {
    n: usize,
    r: usize,
    /// `C(n-1, r-1)`, the number of bits per valuation.
    width: usize,
}

impl HyperValuation {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r < 2 || r > n {
            return Err(EppaError::input(format!("need 2 <= r <= n, got n = {n}, r = {r}")));
        }
        let count = Self::vertex_count(n as u64, r as u64);
        if count > Count::from(MATERIALIZE_CAP) {
            return Err(EppaError::capacity("hypergraph valuation vertices", count, MATERIALIZE_CAP));
        }
        Ok(HyperValuation { n, r, width: binom_usize(n - 1, r - 1) })
    }

    /// `n 2^C(n-1, r-1)`.
    pub fn vertex_count(n: u64, r: u64) -> Count {
        if r == 0 || r > n {
            return Count::default();
        }
        Count::from(n) * power_big(2, crate::count::to_u64(&binomial_big(n - 1, r - 1)).unwrap_or(u64::MAX))
    }

    pub fn order(&self) -> usize {
        self.n << self.width
    }

    /// Bit position of the `(r-1)`-set `s` (sorted, avoiding `i`) in `f_i`.
    pub fn slot(&self, i: usize, s: &[usize]) -> usize {
        let local: Vec<usize> = s.iter().map(|&x| pos(i, x)).collect();
        colex_rank(&local)
    }

    pub fn index(&self, i: usize, f: u64) -> usize {
        i << self.width | f as usize
    }

    pub fn vertex(&self, idx: usize) -> (usize, u64) {
        (idx >> self.width, (idx & ((1 << self.width) - 1)) as u64)
    }

    pub fn label(&self, idx: usize) -> String {
        let (i, f) = self.vertex(idx);
        format!("({}, 0b{:0w$b})", i + 1, f, w = self.width)
    }

    /// All hyperedges, each sorted.
    pub fn edges(&self) -> Result<Vec<Vec<usize>>> {
        let per_set = (1usize << (self.width * self.r)) / 2;
        let total = binom_usize(self.n, self.r).saturating_mul(per_set);
        if total > HYPEREDGE_CAP {
            return Err(EppaError::capacity("hypergraph valuation hyperedges", total, HYPEREDGE_CAP));
        }
        let mut out = Vec::with_capacity(total);
        let block = 1usize << self.width;
        for p in k_subsets_colex(self.n, self.r) {
            // slot read by each projection
            let slots: Vec<usize> = p
                .iter()
                .map(|&i| {
                    let rest: Vec<usize> = p.iter().copied().filter(|&x| x != i).collect();
                    self.slot(i, &rest)
                })
                .collect();
            let mut choice = vec![0usize; self.r];
            loop {
                let parity = choice.iter().zip(&slots).map(|(&f, &s)| f >> s & 1).sum::<usize>() & 1;
                if parity == 1 {
                    out.push(p.iter().zip(&choice).map(|(&i, &f)| self.index(i, f as u64)).collect());
                }
                let mut t = 0;
                while t < self.r {
                    choice[t] += 1;
                    if choice[t] < block {
                        break;
                    }
                    choice[t] = 0;
                    t += 1;
                }
                if t == self.r {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::from_edges(self.order(), self.r, &self.edges()?)
    }

    /// `f_i(S) = 1` iff `S + i` is a hyperedge with `i` its largest vertex.
    pub fn embed(&self, g: &Hypergraph) -> Result<Vec<usize>> {
        if g.uniformity() != self.r || g.order() > self.n {
            return Err(EppaError::input(format!(
                "{}-uniform hypergraph on {} vertices does not fit (n = {}, r = {})",
                g.uniformity(),
                g.order(),
                self.n,
                self.r
            )));
        }
        let mut f = vec![0u64; g.order()];
        for e in g.edges() {
            let i = *e.last().expect("nonempty");
            f[i] |= 1 << self.slot(i, &e[..e.len() - 1]);
        }
        Ok(f.iter().enumerate().map(|(i, &fi)| self.index(i, fi)).collect())
    }
}

/// `g` inside the valuation hypergraph; `n` defaults to `|g|`.
pub fn build_hypergraph_valuation_witness(g: &Hypergraph, n: Option<usize>) -> Result<Witness<Hypergraph>> {
    let v = HyperValuation::new(n.unwrap_or(g.order()).max(g.uniformity()), g.uniformity())?;
    let psi = v.embed(g)?;
    let labels = (0..v.order()).map(|x| v.label(x)).collect();
    Ok(Witness::new(g.clone(), v.to_hypergraph()?, psi, format!("hypergraph valuation r={}", v.r))?
        .with_labels(labels))
}

/// Vertices `a = 0`, `b_i = 1 + i`, `c = 1 + k + c` for `c < 2^k`;
/// `{a, b_i, c}` is a hyperedge iff bit `i` of `c` is set.
pub fn build_obs_hypergraph(k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(EppaError::input("k must be at least 1"));
    }
    if k > 12 {
        return Err(EppaError::capacity("observation hypergraph k", k, 12));
    }
    let m = 1usize << k;
    let edges: Vec<Vec<usize>> =
        (0..k).flat_map(|i| (0..m).filter(move |c| c >> i & 1 == 1).map(move |c| vec![0, 1 + i, 1 + k + c])).collect();
    Hypergraph::from_edges(m + k + 1, 3, &edges)
}

/// `(2^k)!`.
pub fn obs_lower_bound(k: u32) -> Count {
    factorial_big(1u64 << k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::small::hypergraphs;
    use crate::verify::{verify_witness, Strategy};

    #[test]
    fn sizes() {
        let v = HyperValuation::new(4, 3).unwrap();
        assert_eq!(v.order(), 32);
        assert_eq!(HyperValuation::vertex_count(4, 3), Count::from(32u32));
        assert_eq!(HyperValuation::vertex_count(5, 3), Count::from(320u32));
        assert!(HyperValuation::new(3, 4).is_err());
        assert!(HyperValuation::new(3, 1).is_err());
    }

    #[test]
    fn rule_is_symmetric_and_parity_based() {
        let v = HyperValuation::new(4, 3).unwrap();
        let h = v.to_hypergraph().unwrap();
        for e in h.edges() {
            let mut rev = e.clone();
            rev.reverse();
            assert!(h.has_edge_unsorted(&rev));
            let (ps, fs): (Vec<usize>, Vec<u64>) = e.iter().map(|&x| v.vertex(x)).unzip();
            let sum: u64 = (0..3)
                .map(|t| {
                    let rest: Vec<usize> = ps.iter().copied().filter(|&x| x != ps[t]).collect();
                    fs[t] >> v.slot(ps[t], &rest) & 1
                })
                .sum();
            assert_eq!(sum % 2, 1);
        }
        assert_eq!(h.edge_count(), 4 * 8 * 8 * 8 / 2);
    }

    #[test]
    fn two_uniform_is_the_graph_rule() {
        let v = HyperValuation::new(3, 2).unwrap();
        let h = crate::valuation::ValuationGraph::new(3).unwrap();
        let hv = v.to_hypergraph().unwrap();
        for a in 0..v.order() {
            for b in 0..v.order() {
                if a < b {
                    assert_eq!(hv.has_edge(&[a, b]), h.adjacent(a, b));
                }
            }
        }
    }

    #[test]
    fn small_three_uniform() {
        for n in 3..=4 {
            for g in hypergraphs(n, 3) {
                let w = build_hypergraph_valuation_witness(&g, Some(4)).unwrap();
                assert!(verify_witness(&w, Strategy::Search).unwrap().passed(), "{g:?}");
            }
        }
    }

    #[test]
    fn observation_hypergraph() {
        let h = build_obs_hypergraph(1).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.edges().cloned().collect::<Vec<_>>(), vec![vec![0, 1, 3]]);
        let h = build_obs_hypergraph(2).unwrap();
        assert_eq!((h.order(), h.edge_count()), (7, 4));
        assert_eq!(obs_lower_bound(1), Count::from(2u32));
        assert_eq!(obs_lower_bound(2), Count::from(24u32));
        assert_eq!(obs_lower_bound(3), Count::from(40320u32));
    }
}
