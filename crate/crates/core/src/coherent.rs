//! Lifting an extender that is multiplicative on substructure automorphisms
//! to a coherent one on all partial automorphisms.
//!
//! Every substructure `C` gets a representative `r(C)` (the first subset of
//! its isomorphism class in colex order) and a fixed isomorphism
//! `iota_C: r(C) -> C` read off canonical labelings; `iota_C` is the identity
//! when `C = r(C)`. For `f: C -> D` put `alpha = iota_D^-1 f iota_C`, an
//! automorphism of `r(C)`, and `Psi(f) = Psi(iota_D) base(alpha) Psi(iota_C)^-1`.

use crate::canon::canonical_form;
use crate::error::{EppaError, Result};
use crate::partial::{maps_on_domain, subsets_colex, PartialIso};
use crate::perm::Perm;
use crate::structure::Structure;
use crate::verify::Extender;
use std::collections::HashMap;
use std::sync::Arc;

struct Entry {
    rep: Vec<usize>,
    /// `iota_C: rep -> C`.
    iota: PartialIso,
    lift: Perm,
    lift_inv: Perm,
}

pub struct CoherentExtender<S: Structure> {
    base: Arc<dyn Extender<S>>,
    table: HashMap<Vec<usize>, Entry>,
}

impl<S: Structure> CoherentExtender<S> {
    /// Representative of the class of `c` (sorted).
    pub fn representative(&self, c: &[usize]) -> Option<&[usize]> {
        self.table.get(c).map(|e| e.rep.as_slice())
    }
}

/// Builds `Psi` for the base structure `g`. Fails with a precondition error
/// naming `C`, `f` and `g` if `base` is not multiplicative on `Aut(r(C))`.
pub fn make_coherent_extender<S: Structure>(g: &S, base: Arc<dyn Extender<S>>) -> Result<CoherentExtender<S>> {
    let n = g.order();
    let mut reps: Vec<(Vec<Vec<usize>>, Vec<usize>, Perm)> = Vec::new();
    let mut table = HashMap::new();
    for c in subsets_colex(n, n) {
        let sub = g.induced(&c)?;
        let form = canonical_form(&sub)?;
        let key = form.tuples.clone();
        let lab = form.relabeling;
        let rep = reps.iter().find(|(k, r, _)| *k == key && r.len() == c.len());
        let (rep_set, iota) = match rep {
            None => {
                reps.push((key, c.clone(), lab));
                (c.clone(), PartialIso::from_pairs(&c.iter().map(|&x| (x, x)).collect::<Vec<_>>())?)
            }
            Some((_, r, rep_lab)) => {
                // rep local a -> canonical label -> local b of c
                let lab_inv = lab.inverse();
                let pairs: Vec<(usize, usize)> =
                    (0..r.len()).map(|a| (r[a], c[lab_inv.apply(rep_lab.apply(a))])).collect();
                (r.clone(), PartialIso::from_pairs(&pairs)?)
            }
        };
        let lift = base.extend(&iota)?;
        let lift_inv = lift.inverse();
        table.insert(c, Entry { rep: rep_set, iota, lift, lift_inv });
    }
    for (_, r, _) in &reps {
        let autos: Vec<PartialIso> = maps_on_domain(g, r).into_iter().filter(|p| p.is_domain_automorphism()).collect();
        let lifted: Vec<Perm> = autos.iter().map(|p| base.extend(p)).collect::<Result<_>>()?;
        let index: HashMap<&PartialIso, usize> = autos.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (fi, f) in autos.iter().enumerate() {
            for (gi, gg) in autos.iter().enumerate() {
                let prod = &lifted[index[&gg.after(f)]];
                if *prod != lifted[gi].after(&lifted[fi]) {
                    return Err(EppaError::Precondition(format!(
                        "base extender is not multiplicative on Aut of {r:?}: f = {f:?}, g = {gg:?}"
                    )));
                }
            }
        }
    }
    Ok(CoherentExtender { base, table })
}

impl<S: Structure> Extender<S> for CoherentExtender<S> {
    fn extend(&self, f: &PartialIso) -> Result<Perm> {
        let c = f.domain();
        let d = f.range();
        let ec = self.table.get(c).ok_or_else(|| EppaError::input(format!("domain {c:?} out of range")))?;
        let ed = self.table.get(&d).ok_or_else(|| EppaError::input(format!("range {d:?} out of range")))?;
        if ec.rep != ed.rep {
            return Err(EppaError::input(format!("{f:?} joins non-isomorphic substructures")));
        }
        let alpha = ed.iota.inverse().after(f).after(&ec.iota);
        debug_assert!(alpha.is_domain_automorphism());
        let core = self.base.extend(&alpha)?;
        Ok(ed.lift.after(&core).after(&ec.lift_inv))
    }

    fn name(&self) -> String {
        format!("coherent lift of {}", self.base.name())
    }
}
