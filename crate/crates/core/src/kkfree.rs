//! Clique-free witnesses layered over a valuation witness `H_0`.
//!
//! A vertex is `(u, chi)` with `u` in `H_0` and `chi` assigning a colour in
//! `1..k` to every `k`-clique of `H_0` through `u`. Two vertices are adjacent
//! iff their bases are and the colourings differ on every shared clique, so
//! any `k`-clique would need `k` distinct colours from `k - 1`.
//!
//! No extender is attached; witnesshood is checked by search.

use crate::count::{binomial_big, power_big};
use crate::error::{EppaError, Result};
use crate::search::{cliques, has_clique};
use crate::structure::{Graph, Structure};
use crate::valuation::build_valuation_witness;
use crate::verify::Witness;
use crate::{Count, MATERIALIZE_CAP};
use fixedbitset::FixedBitSet;
use rayon::prelude::*;

/// `m (k-1)^C(m-1, k-1)`.
pub fn kkfree_size_bound(m: u64, k: u64) -> Count {
    if m == 0 {
        return Count::default();
    }
    Count::from(m) * power_big(k.saturating_sub(1), binomial_big(m - 1, k.saturating_sub(1)).try_into().unwrap_or(u64::MAX))
}

struct Layer {
    /// Clique indices through `u`, ascending.
    cliques: Vec<usize>,
    offset: usize,
    count: usize,
}

/// The layered witness for a `K_k`-free `g`.
pub fn build_kkfree_witness(g: &Graph, k: usize) -> Result<Witness<Graph>> {
    build_kkfree_witness_capped(g, k, MATERIALIZE_CAP)
}

pub fn build_kkfree_witness_capped(g: &Graph, k: usize, cap: usize) -> Result<Witness<Graph>> {
    if k < 3 {
        return Err(EppaError::input(format!("clique size must be at least 3, got {k}")));
    }
    if has_clique(g, k) {
        return Err(EppaError::input(format!("the graph contains K_{k}")));
    }
    let h0 = build_valuation_witness(g, None)?;
    let base = &h0.host;
    let all = cliques(base, k);
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); base.order()];
    for (c, a) in all.iter().enumerate() {
        for &u in a {
            through[u].push(c);
        }
    }
    let colours = (k - 1) as u64;
    let mut layers = Vec::with_capacity(base.order());
    let mut total = Count::default();
    for list in through {
        let count = power_big(colours, list.len() as u64);
        let offset = crate::count::to_u64(&total).unwrap_or(u64::MAX) as usize;
        total += &count;
        if total > Count::from(cap.min(MATERIALIZE_CAP)) {
            return Err(EppaError::capacity("clique-free witness vertices", &total, cap.min(MATERIALIZE_CAP)));
        }
        layers.push(Layer { cliques: list, offset, count: crate::count::to_u64(&count).expect("below cap") as usize });
    }
    let order = crate::count::to_u64(&total).expect("below cap") as usize;

    // colour of clique at position `t` of U(u) in the `x`-th colouring,
    // first clique most significant
    let colour = |layer: &Layer, x: usize, t: usize| -> usize {
        let shift = layer.cliques.len() - 1 - t;
        1 + (x / (k - 1).pow(shift as u32)) % (k - 1)
    };
    let owner: Vec<usize> = layers.iter().enumerate().flat_map(|(u, l)| std::iter::repeat_n(u, l.count)).collect();

    let rows: Vec<FixedBitSet> = (0..order)
        .into_par_iter()
        .map(|a| {
            let u = owner[a];
            let lu = &layers[u];
            let x = a - lu.offset;
            let mut row = FixedBitSet::with_capacity(order);
            for v in base.neighbors(u).ones() {
                let lv = &layers[v];
                let shared: Vec<(usize, usize)> = lu
                    .cliques
                    .iter()
                    .enumerate()
                    .filter_map(|(tu, c)| lv.cliques.binary_search(c).ok().map(|tv| (tu, tv)))
                    .collect();
                let mine: Vec<usize> = shared.iter().map(|&(tu, _)| colour(lu, x, tu)).collect();
                for y in 0..lv.count {
                    if shared.iter().zip(&mine).all(|(&(_, tv), &c)| colour(lv, y, tv) != c) {
                        row.insert(lv.offset + y);
                    }
                }
            }
            row
        })
        .collect();
    let host = Graph::from_rows(rows);

    let image: Vec<usize> = h0.embedding.clone();
    let mut in_image = vec![false; base.order()];
    for &u in &image {
        in_image[u] = true;
    }
    let psi: Vec<usize> = image
        .iter()
        .map(|&u| {
            let l = &layers[u];
            let mut x = 0;
            for &c in &l.cliques {
                let pos = all[c].iter().filter(|&&w| in_image[w] && w < u).count();
                x = x * (k - 1) + pos;
            }
            l.offset + x
        })
        .collect();

    if has_clique(&host, k) {
        return Err(EppaError::Internal(format!("layered host contains K_{k}")));
    }
    let base_labels = h0.labels.clone().unwrap_or_default();
    let labels = (0..order)
        .map(|a| {
            let u = owner[a];
            let l = &layers[u];
            let chi: Vec<String> = (0..l.cliques.len()).map(|t| colour(l, a - l.offset, t).to_string()).collect();
            format!("({}, [{}])", base_labels.get(u).cloned().unwrap_or_else(|| u.to_string()), chi.join(","))
        })
        .collect();
    Ok(Witness::new(g.clone(), host, psi, format!("K_{k}-free layers over {}", h0.construction))?.with_labels(labels))
}
