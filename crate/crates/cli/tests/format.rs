use eppa_cli::format::{parse_structure, write_structure, AnyStructure};
use eppa_core::canon::canonical_form;
use eppa_core::{Digraph, Graph, Hypergraph};
use proptest::prelude::*;

fn arb_structure() -> impl Strategy<Value = AnyStructure> {
    let graph = (1usize..8).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..12).prop_map(move |ps| {
            let edges: Vec<_> = ps.into_iter().filter(|(a, b)| a != b).collect();
            let mut g = Graph::empty(n);
            for (a, b) in edges {
                g.add_edge(a, b).unwrap();
            }
            AnyStructure::Graph(g)
        })
    });
    let digraph = (1usize..7).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..12).prop_map(move |ps| {
            let arcs: Vec<_> = ps.into_iter().filter(|(a, b)| a != b).collect();
            AnyStructure::Digraph(Digraph::from_arcs(n, &arcs).unwrap())
        })
    });
    let hyper = (3usize..7).prop_flat_map(|n| {
        proptest::collection::btree_set(proptest::collection::btree_set(0..n, 3), 0..8).prop_map(move |es| {
            let edges: Vec<Vec<usize>> = es.into_iter().map(|e| e.into_iter().collect()).collect();
            AnyStructure::Hypergraph(Hypergraph::from_edges(n, 3, &edges).unwrap())
        })
    });
    prop_oneof![graph, digraph, hyper]
}

fn canon(s: &AnyStructure) -> eppa_core::canon::CanonicalForm {
    match s {
        AnyStructure::Graph(g) => canonical_form(g).unwrap(),
        AnyStructure::Digraph(g) => canonical_form(g).unwrap(),
        AnyStructure::Hypergraph(g) => canonical_form(g).unwrap(),
    }
}

proptest! {
    #[test]
    fn write_then_read_is_identity(s in arb_structure()) {
        let back = parse_structure(&write_structure(&s)).unwrap();
        prop_assert_eq!(canon(&back), canon(&s));
        prop_assert_eq!(back, s);
    }

    #[test]
    fn parser_never_panics(text in "[a-z0-9 #\n]{0,60}") {
        let _ = parse_structure(&text);
    }
}
