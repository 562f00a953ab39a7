//! Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use eppa_core::bounds::*;
use eppa_core::coherent::make_coherent_extender;
use eppa_core::count::binomial_big;
use eppa_core::directed::{build_directed_valuation_witness, build_paley_tournament, DirectedValuation};
use eppa_core::hyper::{build_hypergraph_valuation_witness, obs_lower_bound, HyperValuation};
use eppa_core::kkfree::build_kkfree_witness;
use eppa_core::kneser::build_kneser_witness;
use eppa_core::search::{are_isomorphic, find_embedding};
use eppa_core::small::{graphs, graphs_up_to, hypergraphs};
use eppa_core::valuation::{build_valuation_witness, ValuationExtender, ValuationGraph};
use eppa_core::verify::*;
use eppa_core::{Count, Digraph, Graph, Structure};
use itertools::Itertools;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Wall-clock budget per criterion.
const TIME_BUDGET: Duration = Duration::from_secs(120);
/// Pilot baselines for seed 1, 50 samples, p = 1/2.
const SEED: u64 = 1;
const SAMPLES: usize = 50;
const MEDIAN_N32: u32 = 127;
const MEDIAN_N64: u32 = 263;
/// p = 4/n at n = 200 must reach n^2 in some sample.
const SPARSE_N: usize = 200;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes<S: Structure>(w: &Witness<S>, strategy: Strategy) -> Result<u64, String> {
    let r = verify_witness(w, strategy).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{}: {} failures, first {:?}", w.construction, r.failure_count, r.failures.first()))?;
    Ok(r.checked)
}

fn c1_valuation_soundness() -> Outcome {
    let four = graphs(4);
    ensure(four.len() == 11, || format!("{} classes on 4 vertices", four.len()))?;
    let mut checked = 0;
    for g in &four {
        let w = build_valuation_witness(g, Some(4)).map_err(|e| e.to_string())?;
        ensure(w.host.order() == 32, || "H_4 is not 32 vertices".into())?;
        checked += passes(&w, Strategy::Extender)?;
    }
    for g in [Graph::cycle(5), build_half_graph(2).map_err(|e| e.to_string())?] {
        let w = build_valuation_witness(&g, Some(5)).map_err(|e| e.to_string())?;
        ensure(w.host.order() == 80, || "H_5 is not 80 vertices".into())?;
        checked += passes(&w, Strategy::Extender)?;
    }
    Ok(format!("{checked} partial automorphisms extended, 0 failures"))
}

fn c2_valuation_sizes() -> Outcome {
    for n in 1..=10u32 {
        let expected = n as usize * (1usize << (n - 1));
        let h = ValuationGraph::new(n as usize).map_err(|e| e.to_string())?;
        let g = h.to_graph().map_err(|e| e.to_string())?;
        ensure(h.order() == expected && g.order() == expected, || format!("n={n}: {} vs {expected}", g.order()))?;
        ensure(ValuationGraph::vertex_count(n as u64) == Count::from(expected), || format!("count at n={n}"))?;
    }
    Ok("n*2^(n-1) for n = 1..10".into())
}

fn c3_kneser() -> Outcome {
    let mut out = Vec::new();
    for (n, expected) in [(5, 10), (7, 21)] {
        let w = build_kneser_witness(&Graph::cycle(n), Some(2)).map_err(|e| e.to_string())?;
        ensure(w.host.order() == expected, || format!("C_{n}: {} vertices", w.host.order()))?;
        let checked = passes(&w, Strategy::Both)?;
        out.push(format!("C_{n} -> {expected} ({checked} maps)"));
    }
    Ok(out.join(", "))
}

/// Oracle: whether some host on `m` vertices is a witness, by trying every
/// graph on `m` vertices and every induced embedding of `g`.
fn some_host_of_order(g: &Graph, m: usize) -> bool {
    graphs(m).into_iter().any(|h| {
        (0..m).permutations(g.order()).any(|emb| match Witness::new(g.clone(), h.clone(), emb, "oracle") {
            Ok(w) => first_failure(&w).is_none(),
            Err(_) => false,
        })
    })
}

fn c4_min_search() -> Outcome {
    let k2k1 = Graph::from_edges(3, &[(0, 1)]).map_err(|e| e.to_string())?;
    let cases = [
        ("P3", Graph::path(3), 4, Graph::cycle(4)),
        ("P4", Graph::path(4), 5, Graph::cycle(5)),
        ("K2+K1", k2k1, 4, Graph::disjoint_cliques(2, 2)),
    ];
    let mut out = Vec::new();
    for (name, g, expected, cert) in cases {
        let outcome = min_witness_search(&g, &MinSearchOptions::new(expected + 1)).map_err(|e| e.to_string())?;
        let MinSearchOutcome::Found { value, witness, levels, conditional_on_transitivity } = outcome else {
            return Err(format!("{name}: exhausted"));
        };
        ensure(!conditional_on_transitivity, || "pruning was on".into())?;
        ensure(value == expected, || format!("{name}: value {value}"))?;
        ensure(are_isomorphic(&witness.host, &cert), || format!("{name}: unexpected certificate"))?;
        passes(&witness, Strategy::Search)?;
        ensure(levels.last().map(|l| l.0) == Some(value), || "levels do not end at the value".into())?;
        for m in g.order()..value {
            ensure(!some_host_of_order(&g, m), || format!("{name}: oracle found a host on {m} vertices"))?;
        }
        out.push(format!("{name}={value}"));
    }
    Ok(out.join(" "))
}

fn c5_catalog() -> Outcome {
    let mut count = 0;
    for entry in homogeneous_catalog() {
        let g = materialize(entry).map_err(|e| e.to_string())?;
        for h in [g.clone(), g.complement()] {
            ensure(is_homogeneous(&h).map_err(|e| e.to_string())?, || format!("{entry} (or complement) not homogeneous"))?;
            count += 1;
        }
    }
    for (name, g) in [("P3", Graph::path(3)), ("P4", Graph::path(4)), ("C6", Graph::cycle(6)), ("C7", Graph::cycle(7))] {
        ensure(!is_homogeneous(&g).map_err(|e| e.to_string())?, || format!("{name} passed self-verification"))?;
    }
    let emb = is_subgraph_of_homogeneous(&Graph::cycle(6)).ok_or("C6 not found in the catalog")?;
    ensure(emb.entry == HomogeneousFamily::LineK33, || format!("C6 landed in {}", emb.entry))?;
    Witness::new(Graph::cycle(6), emb.host, emb.embedding, "C6 in L(K33)").map_err(|e| e.to_string())?;
    Ok(format!("{count} catalog graphs homogeneous; P3 P4 C6 C7 rejected; C6 in L(K33)"))
}

fn c6_lower_bounds() -> Outcome {
    let bound = |g: &Graph| -> Result<BoundCertificate, String> {
        let c = lower_bound_hrus(g, BoundMode::Exact).map_err(|e| e.to_string())?;
        c.validate(g).map_err(|e| e.to_string())?;
        Ok(c)
    };
    let mut out = Vec::new();
    for m in 1..=4u32 {
        let c = bound(&build_half_graph(m as usize).map_err(|e| e.to_string())?)?;
        ensure(c.value >= Count::from(1u32 << m), || format!("half graph m={m}: {}", c.value))?;
        out.push(format!("half{m}={}", c.value));
    }
    for n in [5usize, 9, 13] {
        let c = bound(&build_star_pattern_graph(n).map_err(|e| e.to_string())?)?;
        let target = binomial_big(n as u64 - 1, (n as u64 - 1) / 2);
        ensure(c.value >= target, || format!("n={n}: {} < {target}", c.value))?;
        out.push(format!("star{n}={}", c.value));
    }
    // certificates never exceed verified witness sizes
    let mut pairs = 0;
    for g in graphs_up_to(5) {
        let c = bound(&g)?;
        let mut sizes = Vec::new();
        let w = build_valuation_witness(&g, None).map_err(|e| e.to_string())?;
        passes(&w, Strategy::Extender)?;
        sizes.push(w.host.order());
        if g.order() >= 2 {
            let w = build_kneser_witness(&g, None).map_err(|e| e.to_string())?;
            passes(&w, Strategy::Extender)?;
            sizes.push(w.host.order());
        }
        for s in sizes {
            ensure(c.value <= Count::from(s), || format!("{g:?}: certificate {} > witness {s}", c.value))?;
            pairs += 1;
        }
    }
    Ok(format!("{}; {pairs} certificate/witness pairs consistent", out.join(" ")))
}

fn c7_cycle_table() -> Outcome {
    for n in 4..=12u64 {
        let lower = if n % 2 == 0 { n * (n + 2) / 8 } else { (n - 1) * (n + 5) / 8 };
        let upper = n * (n - 1) / 2;
        let printed = cycle_bounds(n as usize).map_err(|e| e.to_string())?.to_string();
        let expected = format!("lower={lower} upper={upper}");
        ensure(printed == expected, || format!("n={n}: {printed:?} vs {expected:?}"))?;
    }
    Ok("n = 4..12 exact".into())
}

fn triangles(g: &Graph) -> usize {
    let n = g.order();
    (0..n).tuple_combinations().filter(|&(a, b, c)| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)).count()
}

fn c8_triangle_free() -> Outcome {
    let h3 = build_valuation_witness(&Graph::path(3), None).map_err(|e| e.to_string())?.host;
    let t = triangles(&h3);
    ensure(h3.order() == 12 && t == 8, || format!("H_3: {} vertices, {t} triangles", h3.order()))?;
    // one layer vertex per 2-colouring of the triangles through each base vertex
    let expected: usize = (0..12)
        .map(|u| {
            let through = (0..12)
                .tuple_combinations()
                .filter(|&(a, b)| a != u && b != u && h3.has_edge(u, a) && h3.has_edge(u, b) && h3.has_edge(a, b))
                .count();
            1usize << through
        })
        .sum();
    let w = build_kkfree_witness(&Graph::path(3), 3).map_err(|e| e.to_string())?;
    ensure(w.host.order() == expected && expected == 48, || format!("{} vertices, expected {expected}", w.host.order()))?;
    ensure(triangles(&w.host) == 0, || "triangle found".into())?;
    let checked = passes(&w, Strategy::Search)?;
    Ok(format!("48 vertices, triangle-free, {checked} maps extended"))
}

fn c9_directed() -> Outcome {
    let p7 = build_paley_tournament(7).map_err(|e| e.to_string())?;
    let tt = Digraph::transitive_tournament(3);
    let psi = find_embedding(&tt, &p7, &[]).ok_or("no transitive triangle in Paley(7)")?;
    passes(&Witness::new(tt, p7, psi, "Paley(7)").map_err(|e| e.to_string())?, Strategy::Search)?;
    let p3 = build_paley_tournament(3).map_err(|e| e.to_string())?;
    ensure(are_isomorphic(&p3, &Digraph::oriented_cycle(3)), || "Paley(3) is not the oriented triangle".into())?;
    ensure(is_homogeneous(&p3).map_err(|e| e.to_string())?, || "Paley(3) not homogeneous".into())?;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut tournaments = 0;
    for mask in 0..8u32 {
        let arcs: Vec<(usize, usize)> =
            pairs.iter().enumerate().map(|(i, &(a, b))| if mask >> i & 1 == 1 { (a, b) } else { (b, a) }).collect();
        let t = Digraph::from_arcs(3, &arcs).map_err(|e| e.to_string())?;
        let w = build_directed_valuation_witness(&t, Some(3), false).map_err(|e| e.to_string())?;
        passes(&w, Strategy::Search)?;
        tournaments += 1;
    }
    for n in 2..=4 {
        let h = DirectedValuation::new(n, false).map_err(|e| e.to_string())?.to_digraph();
        let both = (0..h.order()).flat_map(|a| (a + 1..h.order()).map(move |b| (a, b))).filter(|&(a, b)| h.has_arc(a, b) && h.has_arc(b, a)).count();
        ensure(both == 0, || format!("{both} bidirectional pairs at n={n}"))?;
    }
    Ok(format!("Paley(7) witness, Paley(3) homogeneous, {tournaments} labelled tournaments in Z_3 host, no bidirectional arcs"))
}

fn c10_hypergraph() -> Outcome {
    let v = HyperValuation::new(4, 3).map_err(|e| e.to_string())?;
    ensure(v.order() == 32, || format!("{} vertices", v.order()))?;
    let mut count = 0;
    for n in 1..=4 {
        let gs = if n < 3 {
            vec![eppa_core::Hypergraph::empty(n, 3).map_err(|e| e.to_string())?]
        } else {
            hypergraphs(n, 3)
        };
        for g in gs {
            let w = build_hypergraph_valuation_witness(&g, Some(4)).map_err(|e| e.to_string())?;
            passes(&w, Strategy::Search)?;
            count += 1;
        }
    }
    ensure(obs_lower_bound(2) == Count::from(24u32), || "obs_lower_bound(2) != 24".into())?;
    Ok(format!("32 vertices, {count} hypergraphs verified, obs bound 24"))
}

fn c11_coherence() -> Outcome {
    let mut pairs = 0;
    for g in graphs_up_to(4) {
        let n = g.order();
        let base = ValuationExtender::new(g.clone(), ValuationGraph::new(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let psi = make_coherent_extender(&g, Arc::new(base)).map_err(|e| e.to_string())?;
        let w = build_valuation_witness(&g, None).map_err(|e| e.to_string())?.with_extender(Arc::new(psi));
        passes(&w, Strategy::Extender)?;
        let r = verify_coherence(&w, CoherenceScope::AllComposable).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{g:?}: {} violations, first {:?}", r.violation_count, r.first_violation))?;
        pairs += r.pairs_checked;
    }
    Ok(format!("{pairs} composable pairs, 0 violations"))
}

fn c12_random() -> Outcome {
    let half = EdgeProbability::Fixed(0.5);
    let a = random_experiment(32, half, SAMPLES, SEED).map_err(|e| e.to_string())?;
    let again = random_experiment(32, half, SAMPLES, SEED).map_err(|e| e.to_string())?;
    ensure(a.summary() == again.summary() && a == again, || "rerun differs".into())?;
    let b = random_experiment(64, half, SAMPLES, SEED).map_err(|e| e.to_string())?;
    ensure(a.median == Count::from(MEDIAN_N32), || format!("n=32 median {} (pinned {MEDIAN_N32})", a.median))?;
    ensure(b.median == Count::from(MEDIAN_N64), || format!("n=64 median {} (pinned {MEDIAN_N64})", b.median))?;
    ensure(b.median > a.median, || "median did not grow".into())?;
    let sparse = random_experiment(SPARSE_N, EdgeProbability::OverN(4.0), SAMPLES, SEED).map_err(|e| e.to_string())?;
    let target = Count::from(SPARSE_N * SPARSE_N);
    ensure(sparse.max >= target, || format!("max {} < n^2", sparse.max))?;
    let hits = sparse.samples.iter().filter(|s| s.value >= target).count();
    Ok(format!("reproducible; medians {} < {}; {hits}/{SAMPLES} sparse samples reach n^2", a.median, b.median))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("valuation witness soundness", c1_valuation_soundness),
        ("valuation witness sizes", c2_valuation_sizes),
        ("kneser witnesses", c3_kneser),
        ("minimal witness search", c4_min_search),
        ("homogeneous catalog", c5_catalog),
        ("lower-bound engine", c6_lower_bounds),
        ("cycle table", c7_cycle_table),
        ("triangle-free construction", c8_triangle_free),
        ("directed witnesses", c9_directed),
        ("hypergraph witnesses", c10_hypergraph),
        ("coherence", c11_coherence),
        ("random experiments", c12_random),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|d| {
            if elapsed > TIME_BUDGET {
                Err(format!("{d}; took {elapsed:.1?}, budget {TIME_BUDGET:?}"))
            } else {
                Ok(d)
            }
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
