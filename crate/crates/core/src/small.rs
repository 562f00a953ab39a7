//! Small structures up to isomorphism, for exhaustive test suites.
//!
//! Each list holds one representative per class: the first labeled
//! structure met while counting through relation subsets as bitmasks.

use crate::canon::canonical_form;
use crate::structure::{Digraph, Graph, Hypergraph};
use std::collections::HashSet;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// One graph per isomorphism class on exactly `n` vertices (`n <= 6`).
pub fn graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "graph enumeration is limited to 6 vertices");
    let ps = pairs(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << ps.len() {
        let es: Vec<_> = ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &es).expect("valid");
        if seen.insert(canonical_form(&g).expect("small").tuples) {
            out.push(g);
        }
    }
    out
}

/// One graph per class on `1..=max_n` vertices.
pub fn graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(graphs).collect()
}

/// Digraphs on `n` vertices up to isomorphism. Each pair carries no arc,
/// one of the two arcs, or (when allowed) both.
pub fn digraphs(n: usize, allow_bidirectional: bool) -> Vec<Digraph> {
    assert!(n <= 4, "digraph enumeration is limited to 4 vertices");
    let ps = pairs(n);
    let states: u64 = if allow_bidirectional { 4 } else { 3 };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut code in 0..states.pow(ps.len() as u32) {
        let mut d = Digraph::empty(n);
        for &(u, v) in &ps {
            match code % states {
                1 => {
                    d.add_arc(u, v).expect("valid");
                }
                2 => {
                    d.add_arc(v, u).expect("valid");
                }
                3 => {
                    d.add_arc(u, v).expect("valid");
                    d.add_arc(v, u).expect("valid");
                }
                _ => {}
            }
            code /= states;
        }
        if seen.insert(canonical_form(&d).expect("small").tuples) {
            out.push(d);
        }
    }
    out
}

/// Tournaments on `n` vertices up to isomorphism.
pub fn tournaments(n: usize) -> Vec<Digraph> {
    digraphs(n, false).into_iter().filter(Digraph::is_tournament).collect()
}

/// `r`-uniform hypergraphs on `n` vertices up to isomorphism.
pub fn hypergraphs(n: usize, r: usize) -> Vec<Hypergraph> {
    let sets: Vec<Vec<usize>> = crate::partial::subsets_colex(n, r).filter(|s| s.len() == r).collect();
    assert!(sets.len() <= 20, "hypergraph enumeration is limited to 20 candidate edges");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << sets.len() {
        let es: Vec<Vec<usize>> =
            sets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
        let h = Hypergraph::from_edges(n, r, &es).expect("valid");
        if seen.insert(canonical_form(&h).expect("small").tuples) {
            out.push(h);
        }
    }
    out
}
