use super::Witness;
use crate::error::{EppaError, Result};
use crate::partial::{enumerate_partial_autos, PartialIso};
use crate::perm::Perm;
use crate::structure::Structure;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceScope {
    /// Pairs of automorphisms of one induced substructure.
    SubstructureAutos,
    /// Every pair `(f, g)` with `rng(f) = dom(g)`.
    AllComposable,
}

impl std::str::FromStr for CoherenceScope {
    type Err = EppaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "substructure" | "substructure-autos" => Ok(CoherenceScope::SubstructureAutos),
            "all" | "all-composable" => Ok(CoherenceScope::AllComposable),
            _ => Err(EppaError::input(format!("unknown coherence scope {s:?}"))),
        }
    }
}

/// `Psi(g f) != Psi(g) Psi(f)` at host vertex `point`.
#[derive(Debug, Clone)]
pub struct Violation {
    pub f: PartialIso,
    pub g: PartialIso,
    pub point: usize,
}

#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub scope: CoherenceScope,
    pub pairs_checked: u64,
    pub violation_count: u64,
    pub first_violation: Option<Violation>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Checks the composition law of the witness's extender on every pair in
/// `scope`. Pairs are visited in enumeration order of `f`, then `g`.
pub fn verify_coherence<S: Structure>(w: &Witness<S>, scope: CoherenceScope) -> Result<CoherenceReport> {
    let ext = w
        .extender
        .as_ref()
        .ok_or_else(|| EppaError::input(format!("witness {:?} has no extender", w.construction)))?;
    let maps: Vec<PartialIso> = enumerate_partial_autos(&w.base, None).collect();
    let images: Vec<Perm> = maps.par_iter().map(|p| ext.extend(p)).collect::<Result<_>>()?;
    let index: HashMap<&PartialIso, usize> = maps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut by_domain: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (i, p) in maps.iter().enumerate() {
        by_domain.entry(p.domain()).or_default().push(i);
    }

    let partners = |fi: usize| -> Vec<usize> {
        let f = &maps[fi];
        match scope {
            CoherenceScope::SubstructureAutos => {
                if !f.is_domain_automorphism() {
                    return Vec::new();
                }
                by_domain[f.domain()].iter().copied().filter(|&gi| maps[gi].is_domain_automorphism()).collect()
            }
            CoherenceScope::AllComposable => {
                let rng = f.range();
                by_domain.get(rng.as_slice()).cloned().unwrap_or_default()
            }
        }
    };

    let results: Vec<(u64, u64, Option<Violation>)> = (0..maps.len())
        .into_par_iter()
        .map(|fi| {
            let mut checked = 0;
            let mut bad = 0;
            let mut first = None;
            for gi in partners(fi) {
                checked += 1;
                let gf = maps[gi].after(&maps[fi]);
                let lhs = &images[index[&gf]];
                let rhs = images[gi].after(&images[fi]);
                if let Some(point) = lhs.first_difference(&rhs) {
                    bad += 1;
                    if first.is_none() {
                        first = Some(Violation { f: maps[fi].clone(), g: maps[gi].clone(), point });
                    }
                }
            }
            (checked, bad, first)
        })
        .collect();

    let mut report = CoherenceReport { scope, pairs_checked: 0, violation_count: 0, first_violation: None };
    for (c, b, v) in results {
        report.pairs_checked += c;
        report.violation_count += b;
        if report.first_violation.is_none() {
            report.first_violation = v;
        }
    }
    Ok(report)
}
