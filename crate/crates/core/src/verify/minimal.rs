use super::{first_failure, Witness};
use crate::canon::canonical_form_colored;
use crate::error::{EppaError, Result};
use crate::search::is_vertex_transitive;
use crate::structure::{Graph, Structure};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct MinSearchOptions {
    /// Largest host order tried.
    pub max_m: usize,
    /// Only test vertex-transitive hosts. Results then assume that some
    /// smallest witness is vertex-transitive.
    pub prune_transitive: bool,
    /// Cap on distinct marked hosts held at one level.
    pub max_hosts: usize,
}

impl MinSearchOptions {
    pub fn new(max_m: usize) -> Self {
        MinSearchOptions { max_m, prune_transitive: false, max_hosts: 2_000_000 }
    }
}

#[derive(Debug, Clone)]
pub enum MinSearchOutcome {
    Found {
        value: usize,
        witness: Witness<Graph>,
        /// `(m, marked hosts tested)` for every level tried, all failing
        /// except the last.
        levels: Vec<(usize, usize)>,
        conditional_on_transitivity: bool,
    },
    Exhausted {
        max_m: usize,
        levels: Vec<(usize, usize)>,
        conditional_on_transitivity: bool,
    },
}

impl MinSearchOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            MinSearchOutcome::Found { value, .. } => Some(*value),
            MinSearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Smallest EPPA-witness for `g` among graphs on at most `max_m` vertices.
///
/// Hosts are grown one vertex at a time with `g` fixed on the first
/// vertices. Two hosts are merged only when an isomorphism also maps the
/// marked copy of `g` onto itself, which keeps the search exact.
pub fn min_witness_search(g: &Graph, opts: &MinSearchOptions) -> Result<MinSearchOutcome> {
    let k = g.order();
    if k > 6 {
        return Err(EppaError::capacity("base vertices for minimal search", k, 6));
    }
    let m_cap = if opts.prune_transitive { 12 } else { 10 };
    if opts.max_m > m_cap {
        return Err(EppaError::capacity("host order for minimal search", opts.max_m, m_cap));
    }
    let mut level: Vec<Graph> = vec![g.clone()];
    let mut levels = Vec::new();
    for m in k..=opts.max_m.max(k) {
        if m > k {
            level = grow(&level, k, opts.max_hosts)?;
        }
        let candidates: Vec<&Graph> =
            if opts.prune_transitive { level.par_iter().filter(|h| is_vertex_transitive(*h)).collect() } else { level.iter().collect() };
        levels.push((m, candidates.len()));
        let hit = candidates.par_iter().position_first(|h| {
            let w = Witness::new(g.clone(), (*h).clone(), (0..k).collect(), "").expect("g sits on the first vertices");
            first_failure(&w).is_none()
        });
        if let Some(i) = hit {
            let host = candidates[i].clone();
            let witness = Witness::new(g.clone(), host, (0..k).collect(), "minimal search")?;
            return Ok(MinSearchOutcome::Found {
                value: m,
                witness,
                levels,
                conditional_on_transitivity: opts.prune_transitive,
            });
        }
        if m == opts.max_m {
            break;
        }
    }
    Ok(MinSearchOutcome::Exhausted { max_m: opts.max_m, levels, conditional_on_transitivity: opts.prune_transitive })
}

/// All marked hosts with one more vertex, deduplicated, in canonical order.
fn grow(level: &[Graph], k: usize, max_hosts: usize) -> Result<Vec<Graph>> {
    let m = level[0].order();
    let children: Vec<Vec<(Vec<Vec<usize>>, Graph)>> = level
        .par_iter()
        .map(|h| {
            (0u64..1 << m)
                .map(|mask| {
                    let mut next = Graph::empty(m + 1);
                    for (u, v) in h.edges() {
                        next.add_edge(u, v).expect("valid");
                    }
                    for u in (0..m).filter(|&u| mask >> u & 1 == 1) {
                        next.add_edge(u, m).expect("valid");
                    }
                    let colors: Vec<usize> = (0..=m).map(|v| (v < k) as usize).collect();
                    let form = canonical_form_colored(&next, &colors).expect("host within cap");
                    (form.tuples, next)
                })
                .collect()
        })
        .collect();
    let mut seen: BTreeMap<Vec<Vec<usize>>, Graph> = BTreeMap::new();
    for (code, host) in children.into_iter().flatten() {
        seen.entry(code).or_insert(host);
        if seen.len() > max_hosts {
            return Err(EppaError::capacity("marked hosts per level", seen.len(), max_hosts));
        }
    }
    Ok(seen.into_values().collect())
}
