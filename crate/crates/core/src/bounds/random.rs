//! Seeded random-graph experiments with the lower-bound engine.

use super::lemma::{lower_bound_hrus, BoundMode, DEFAULT_EXACT_CAP};
use crate::error::{EppaError, Result};
use crate::structure::Graph;
use crate::Count;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Edge probability: a constant, or `c / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeProbability {
    Fixed(f64),
    OverN(f64),
}

impl EdgeProbability {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            EdgeProbability::Fixed(p) => p,
            EdgeProbability::OverN(c) => (c / n.max(1) as f64).min(1.0),
        }
    }
}

impl std::fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeProbability::Fixed(p) => write!(f, "{p}"),
            EdgeProbability::OverN(c) => write!(f, "{c}/n"),
        }
    }
}

impl std::str::FromStr for EdgeProbability {
    type Err = EppaError;

    /// `0.5`, `1/2` or `4/n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || EppaError::input(format!("bad probability {s:?}"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let p = match s.split_once('/') {
            Some((c, "n")) => EdgeProbability::OverN(num(c)?),
            Some((a, b)) => EdgeProbability::Fixed(num(a)? / num(b)?),
            None => EdgeProbability::Fixed(num(s)?),
        };
        let ok = match p {
            EdgeProbability::Fixed(x) => (0.0..=1.0).contains(&x),
            EdgeProbability::OverN(c) => c >= 0.0 && c.is_finite(),
        };
        if ok {
            Ok(p)
        } else {
            Err(bad())
        }
    }
}

/// `G(n, p)` from the `sample`-th stream of the seed; pairs in lexicographic
/// order, one draw each.
pub fn random_graph(n: usize, p: f64, seed: u64, sample: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleResult {
    pub value: Count,
    pub set_size: usize,
    pub best_k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub n: usize,
    pub probability: EdgeProbability,
    pub seed: u64,
    pub mode: BoundMode,
    pub samples: Vec<SampleResult>,
    pub min: Count,
    /// Lower median.
    pub median: Count,
    pub max: Count,
    /// `(|A|, best k) -> samples`.
    pub distribution: BTreeMap<(usize, Option<usize>), usize>,
}

impl ExperimentReport {
    /// Plain-text statistics block; identical for identical inputs.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "n={} p={} seed={} samples={} mode={:?}\nmin={} median={} max={}\n",
            self.n,
            self.probability,
            self.seed,
            self.samples.len(),
            self.mode,
            self.min,
            self.median,
            self.max
        );
        for ((a, k), c) in &self.distribution {
            let k = k.map_or("-".to_string(), |k| k.to_string());
            s.push_str(&format!("|A|={a} k={k}: {c}\n"));
        }
        s
    }
}

/// Exact bounds up to the exact cap, greedy beyond it.
pub fn random_experiment(n: usize, p: EdgeProbability, samples: usize, seed: u64) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(EppaError::input("need at least one sample"));
    }
    let mode = if n <= DEFAULT_EXACT_CAP { BoundMode::Exact } else { BoundMode::Greedy };
    let prob = p.at(n);
    let results: Vec<SampleResult> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let g = random_graph(n, prob, seed, i);
            let c = lower_bound_hrus(&g, mode)?;
            Ok(SampleResult { best_k: c.best_k(), set_size: c.independent_set.len(), value: c.value })
        })
        .collect::<Result<_>>()?;
    let mut values: Vec<&Count> = results.iter().map(|r| &r.value).collect();
    values.sort();
    let mut distribution = BTreeMap::new();
    for r in &results {
        *distribution.entry((r.set_size, r.best_k)).or_insert(0) += 1;
    }
    Ok(ExperimentReport {
        n,
        probability: p,
        seed,
        mode,
        min: values[0].clone(),
        median: values[(values.len() - 1) / 2].clone(),
        max: values[values.len() - 1].clone(),
        samples: results,
        distribution,
    })
}
