//! Ground truth: exhaustive witness verification, coherence checking and
//! brute-force minimal witnesses.

mod coherence;
mod minimal;

pub use coherence::{verify_coherence, CoherenceReport, CoherenceScope, Violation};
pub use minimal::{min_witness_search, MinSearchOptions, MinSearchOutcome};

use crate::error::{EppaError, Result};
use crate::partial::{maps_on_domain, subsets_colex, PartialIso};
use crate::perm::Perm;
use crate::search::AutSearcher;
use crate::structure::Structure;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// A rule turning partial automorphisms of the base into automorphisms of
/// the host that extend them along the embedding.
pub trait Extender<S: Structure>: Send + Sync {
    fn extend(&self, p: &PartialIso) -> Result<Perm>;

    fn name(&self) -> String;
}

/// A host structure with an embedding of the base into it.
#[derive(Clone)]
pub struct Witness<S: Structure> {
    pub base: S,
    pub host: S,
    /// `v -> psi(v)`.
    pub embedding: Vec<usize>,
    pub construction: String,
    /// Optional display label per host vertex.
    pub labels: Option<Vec<String>>,
    pub extender: Option<Arc<dyn Extender<S>>>,
}

impl<S: Structure> fmt::Debug for Witness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Witness")
            .field("construction", &self.construction)
            .field("base", &self.base)
            .field("host_order", &self.host.order())
            .field("embedding", &self.embedding)
            .field("extender", &self.extender.as_ref().map(|e| e.name()))
            .finish()
    }
}

impl<S: Structure> Witness<S> {
    /// Checks that `embedding` is an injective, relation-preserving (both
    /// ways) map from `base` into `host`.
    pub fn new(base: S, host: S, embedding: Vec<usize>, construction: impl Into<String>) -> Result<Self> {
        if embedding.len() != base.order() {
            return Err(EppaError::input(format!(
                "embedding lists {} images for {} vertices",
                embedding.len(),
                base.order()
            )));
        }
        let pairs: Vec<(usize, usize)> = embedding.iter().copied().enumerate().collect();
        if !base.preserves(&host, &pairs) {
            return Err(EppaError::input("map is not an embedding of the base into the host"));
        }
        Ok(Witness { base, host, embedding, construction: construction.into(), labels: None, extender: None })
    }

    /// The identity self-witness used for homogeneity checks.
    pub fn identity(s: S) -> Self {
        let n = s.order();
        Witness::new(s.clone(), s, (0..n).collect(), "identity").expect("identity is an embedding")
    }

    pub fn with_extender(mut self, e: Arc<dyn Extender<S>>) -> Self {
        self.extender = Some(e);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// `psi ∘ p ∘ psi^-1` as a partial map of the host.
    pub fn transport(&self, p: &PartialIso) -> PartialIso {
        p.transport(&self.embedding)
    }

    /// Independent check that `g` is an automorphism of the host extending
    /// the transported `p`; `Err` carries the reason.
    pub fn check_extension(&self, p: &PartialIso, g: &Perm) -> std::result::Result<(), String> {
        if g.len() != self.host.order() || Perm::from_images(g.images().to_vec()).is_err() {
            return Err("not a permutation of the host".into());
        }
        if !self.host.is_automorphism(g) {
            return Err("not an automorphism of the host".into());
        }
        for (x, y) in p.pairs() {
            if g.apply(self.embedding[x]) != self.embedding[y] {
                return Err(format!("does not extend: psi({x}) should go to psi({y})"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Extender,
    Search,
    Both,
}

impl std::str::FromStr for Strategy {
    type Err = EppaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extender" | "use-extender" => Ok(Strategy::Extender),
            "search" => Ok(Strategy::Search),
            "both" => Ok(Strategy::Both),
            _ => Err(EppaError::input(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Base structures with more vertices are refused by [`verify_witness`].
pub const DEFAULT_VERIFY_CAP: usize = 10;

/// Failures beyond this many are counted but not stored.
const MAX_STORED_FAILURES: usize = 64;

#[derive(Debug, Clone)]
pub struct Failure {
    pub partial: PartialIso,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub strategy: Strategy,
    /// Partial automorphisms of the base that were examined.
    pub checked: u64,
    /// Of those, how many were extended successfully.
    pub extended: u64,
    pub failure_count: u64,
    /// The first failures in enumeration order.
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

pub fn verify_witness<S: Structure>(w: &Witness<S>, strategy: Strategy) -> Result<VerificationReport> {
    verify_witness_capped(w, strategy, DEFAULT_VERIFY_CAP)
}

pub fn verify_witness_capped<S: Structure>(
    w: &Witness<S>,
    strategy: Strategy,
    cap: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = w.base.order();
    if n > cap {
        return Err(EppaError::capacity("verified base vertices", n, cap));
    }
    if strategy != Strategy::Search && w.extender.is_none() {
        return Err(EppaError::input(format!("witness {:?} has no extender", w.construction)));
    }
    let searcher = AutSearcher::new(&w.host);
    let domains: Vec<Vec<usize>> = subsets_colex(n, n).collect();
    let per_domain: Vec<Result<(u64, u64, u64, Vec<Failure>)>> = domains
        .par_iter()
        .map(|dom| {
            let mut stats = (0u64, 0u64, 0u64, Vec::new());
            for p in maps_on_domain(&w.base, dom) {
                stats.0 += 1;
                match check_one(w, &searcher, &p, strategy)? {
                    None => stats.1 += 1,
                    Some(reason) => {
                        stats.2 += 1;
                        if stats.3.len() < MAX_STORED_FAILURES {
                            stats.3.push(Failure { partial: p, reason });
                        }
                    }
                }
            }
            Ok(stats)
        })
        .collect();
    let mut report = VerificationReport {
        strategy,
        checked: 0,
        extended: 0,
        failure_count: 0,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for r in per_domain {
        let (c, e, f, fs) = r?;
        report.checked += c;
        report.extended += e;
        report.failure_count += f;
        let room = MAX_STORED_FAILURES - report.failures.len();
        report.failures.extend(fs.into_iter().take(room));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `Ok(None)` when `p` is handled, `Ok(Some(reason))` on failure.
fn check_one<S: Structure>(
    w: &Witness<S>,
    searcher: &AutSearcher<'_, S>,
    p: &PartialIso,
    strategy: Strategy,
) -> Result<Option<String>> {
    let mut ext_ok = true;
    if strategy != Strategy::Search {
        let e = w.extender.as_ref().expect("checked above");
        match e.extend(p) {
            Ok(g) => {
                if let Err(reason) = w.check_extension(p, &g) {
                    if strategy == Strategy::Extender {
                        return Ok(Some(format!("extender output {reason}")));
                    }
                    ext_ok = false;
                }
            }
            Err(err @ EppaError::Internal(_)) => return Err(err),
            Err(err) => {
                if strategy == Strategy::Extender {
                    return Ok(Some(format!("extender refused: {err}")));
                }
                ext_ok = false;
            }
        }
    }
    if strategy == Strategy::Extender {
        return Ok(None);
    }
    let found = searcher.extend_partial(&w.transport(p))?;
    Ok(match (found, ext_ok) {
        (Some(g), true) => {
            debug_assert!(w.check_extension(p, &g).is_ok());
            None
        }
        (Some(_), false) => Some("extender output invalid although an extension exists".into()),
        (None, true) if strategy == Strategy::Both => {
            return Err(EppaError::Internal(format!("extender succeeded on {p:?} but search found nothing")))
        }
        (None, _) => Some("no automorphism of the host extends it".into()),
    })
}

/// First partial automorphism (in enumeration order) with no extension in
/// the host, found by search with early exit.
pub fn first_failure<S: Structure>(w: &Witness<S>) -> Option<PartialIso> {
    let searcher = AutSearcher::new(&w.host);
    crate::partial::enumerate_partial_autos(&w.base, None)
        .find(|p| searcher.extend_partial(&w.transport(p)).expect("transported map is a partial automorphism").is_none())
}

/// Homogeneity test: the structure is an EPPA-witness for itself.
pub fn is_homogeneous<S: Structure>(s: &S) -> Result<bool> {
    Ok(verify_witness_capped(&Witness::identity(s.clone()), Strategy::Search, 12)?.passed())
}
