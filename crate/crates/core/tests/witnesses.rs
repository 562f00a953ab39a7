//! Exhaustive checks over small structures.

use eppa_core::bounds::{lower_bound_hrus, BoundMode};
use eppa_core::kkfree::build_kkfree_witness;
use eppa_core::kneser::{build_kneser_witness, build_relational_kneser_witness};
use eppa_core::search::has_clique;
use eppa_core::small::{digraphs, graphs, graphs_up_to};
use eppa_core::valuation::build_valuation_witness;
use eppa_core::verify::*;
use eppa_core::{Count, Structure};

fn passed<S: Structure>(w: &Witness<S>, s: Strategy) -> bool {
    verify_witness(w, s).unwrap().passed()
}

#[test]
fn graph_counts() {
    let counts: Vec<usize> = (0..=5).map(|n| graphs(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 4, 11, 34]);
}

#[test]
fn valuation_hosts_for_every_graph_up_to_five() {
    for g in graphs_up_to(5) {
        let w = build_valuation_witness(&g, None).unwrap();
        assert!(passed(&w, Strategy::Extender), "{g:?}");
    }
}

#[test]
fn valuation_search_agrees_with_extender() {
    for g in graphs_up_to(4) {
        let w = build_valuation_witness(&g, None).unwrap();
        assert!(passed(&w, Strategy::Both), "{g:?}");
    }
}

#[test]
fn kneser_hosts_for_every_graph_up_to_five() {
    for g in graphs_up_to(5).into_iter().filter(|g| g.order() >= 2) {
        let w = build_kneser_witness(&g, None).unwrap();
        assert!(passed(&w, Strategy::Extender), "{g:?}");
    }
}

#[test]
fn kneser_search_agrees_with_extender() {
    for g in graphs_up_to(4).into_iter().filter(|g| g.order() >= 2) {
        let w = build_kneser_witness(&g, None).unwrap();
        assert!(passed(&w, Strategy::Both), "{g:?}");
    }
}

#[test]
fn relational_kneser_for_oriented_graphs_on_two_vertices() {
    for dg in digraphs(2, true) {
        let w = build_relational_kneser_witness(&dg, None).unwrap();
        assert!(passed(&w, Strategy::Extender), "{dg:?}");
    }
}

#[test]
fn triangle_free_hosts() {
    for g in graphs_up_to(3).into_iter().filter(|g| !has_clique(g, 3)) {
        let w = build_kkfree_witness(&g, 3).unwrap();
        assert!(!has_clique(&w.host, 3));
        assert!(passed(&w, Strategy::Search), "{g:?}");
    }
}

#[test]
fn certificates_never_exceed_witnesses() {
    for g in graphs_up_to(5) {
        let c = lower_bound_hrus(&g, BoundMode::Exact).unwrap();
        c.validate(&g).unwrap();
        let w = build_valuation_witness(&g, None).unwrap();
        assert!(c.value <= Count::from(w.host.order()), "{g:?}");
    }
}

#[test]
fn minimal_witnesses_are_complement_invariant() {
    let opts = MinSearchOptions::new(7);
    for g in graphs_up_to(4) {
        let a = min_witness_search(&g, &opts).unwrap().value();
        let b = min_witness_search(&g.complement(), &opts).unwrap().value();
        assert_eq!(a, b, "{g:?}");
    }
}

#[test]
fn z4_hosts_take_every_digraph_on_three_vertices() {
    for dg in (1..=3).flat_map(|n| digraphs(n, true)) {
        let w = eppa_core::directed::build_directed_valuation_witness(&dg, Some(3), true).unwrap();
        assert!(passed(&w, Strategy::Search), "{dg:?}");
    }
}
