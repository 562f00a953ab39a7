//! Valuation witnesses for digraphs and the Paley tournaments.
//!
//! A vertex is `(i, f)` with `f: [n] \ {i} -> Z_q`. The arc pattern between
//! `(i, f)` and `(j, g)` is read from `s = f(j) - g(i) mod q`; with `q = 4`
//! every pattern occurs, with `q = 3` bidirectional pairs do not.

use crate::count::power_big;
use crate::error::{EppaError, Result};
use crate::structure::{Digraph, Structure};
use crate::valuation::pos;
use crate::verify::Witness;
use crate::{Count, MATERIALIZE_CAP};
use fixedbitset::FixedBitSet;
use rayon::prelude::*;

/// Arc pattern for residue `s`, as in [`Digraph::code`]: bit 0 is the arc
/// from the first-listed vertex, bit 1 the arc into it.
pub fn decode(q: u64, s: u64) -> u8 {
    match (q, s % q) {
        (_, 0) => 0,
        (_, 1) => 1,
        (4, 2) => 3,
        (4, 3) | (3, 2) => 2,
        _ => unreachable!("modulus is 3 or 4"),
    }
}

/// Inverse of [`decode`].
pub fn encode(q: u64, code: u8) -> Result<u64> {
    (0..q)
        .find(|&s| decode(q, s) == code)
        .ok_or_else(|| EppaError::input(format!("arc pattern {code} has no residue mod {q}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedValuation {
    n: usize,
    q: u64,
}

impl DirectedValuation {
    pub fn new(n: usize, allow_bidirectional: bool) -> Result<Self> {
        let q = if allow_bidirectional { 4 } else { 3 };
        if n == 0 {
            return Err(EppaError::input("directed valuation needs n >= 1"));
        }
        let count = Self::vertex_count(n as u64, q);
        if count > Count::from(MATERIALIZE_CAP) {
            return Err(EppaError::capacity("directed valuation vertices", count, MATERIALIZE_CAP));
        }
        Ok(DirectedValuation { n, q })
    }

    /// `n q^(n-1)`.
    pub fn vertex_count(n: u64, q: u64) -> Count {
        Count::from(n) * power_big(q, n.saturating_sub(1))
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn block(&self) -> usize {
        (self.q as usize).pow(self.n as u32 - 1)
    }

    pub fn order(&self) -> usize {
        self.n * self.block()
    }

    /// `(i, digits)` with `digits[pos(i, j)] = f(j)`.
    pub fn vertex(&self, idx: usize) -> (usize, Vec<u64>) {
        let b = self.block();
        let mut rest = idx % b;
        let digits = (0..self.n - 1)
            .map(|_| {
                let d = (rest % self.q as usize) as u64;
                rest /= self.q as usize;
                d
            })
            .collect();
        (idx / b, digits)
    }

    pub fn index(&self, i: usize, digits: &[u64]) -> usize {
        let f = digits.iter().rev().fold(0usize, |acc, &d| acc * self.q as usize + d as usize);
        i * self.block() + f
    }

    fn value(&self, idx: usize, j: usize) -> u64 {
        let p = pos(idx / self.block(), j) as u32;
        ((idx % self.block()) / (self.q as usize).pow(p) % self.q as usize) as u64
    }

    /// Arc pattern between two vertices, first one listed first.
    pub fn code(&self, a: usize, b: usize) -> u8 {
        let (i, j) = (a / self.block(), b / self.block());
        if i == j {
            return 0;
        }
        let s = (self.value(a, j) + self.q - self.value(b, i)) % self.q;
        decode(self.q, s)
    }

    pub fn label(&self, idx: usize) -> String {
        let (i, digits) = self.vertex(idx);
        let f: Vec<String> = (0..self.n).filter(|&j| j != i).map(|j| digits[pos(i, j)].to_string()).collect();
        format!("({}, [{}])", i + 1, f.join(","))
    }

    pub fn to_digraph(&self) -> Digraph {
        let order = self.order();
        let rows = (0..order)
            .into_par_iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(order);
                for b in 0..order {
                    if self.code(a, b) & 1 == 1 {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        Digraph::from_out_rows(rows)
    }

    /// `psi(i) = (i, f_i)`: for `i < j`, `f_j(i)` encodes the pattern of
    /// `(j, i)` and `f_i(j) = 0`.
    pub fn embed(&self, dg: &Digraph) -> Result<Vec<usize>> {
        if dg.order() > self.n {
            return Err(EppaError::input(format!("{} vertices do not fit into n = {}", dg.order(), self.n)));
        }
        (0..dg.order())
            .map(|j| {
                let mut digits = vec![0; self.n - 1];
                for i in 0..j {
                    digits[pos(j, i)] = encode(self.q, dg.code(j, i))?;
                }
                Ok(self.index(j, &digits))
            })
            .collect()
    }
}

/// The host digraph on `n q^(n-1)` vertices.
pub fn build_directed_valuation_host(n: usize, allow_bidirectional: bool) -> Result<Digraph> {
    Ok(DirectedValuation::new(n, allow_bidirectional)?.to_digraph())
}

/// `dg` inside the directed valuation digraph (`n` defaults to `|dg|`).
pub fn build_directed_valuation_witness(
    dg: &Digraph,
    n: Option<usize>,
    allow_bidirectional: bool,
) -> Result<Witness<Digraph>> {
    let v = DirectedValuation::new(n.unwrap_or(dg.order()).max(1), allow_bidirectional)?;
    let psi = v.embed(dg)?;
    let labels = (0..v.order()).map(|x| v.label(x)).collect();
    Ok(Witness::new(dg.clone(), v.to_digraph(), psi, format!("directed valuation Z_{}", v.q))?.with_labels(labels))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2u64..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Tournament on `Z_q` with `a -> b` iff `b - a` is a nonzero square.
pub fn build_paley_tournament(q: u64) -> Result<Digraph> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(EppaError::input(format!("{q} is not a prime congruent to 3 mod 4")));
    }
    if q as usize > MATERIALIZE_CAP {
        return Err(EppaError::capacity("Paley tournament vertices", q, MATERIALIZE_CAP));
    }
    let mut square = vec![false; q as usize];
    for x in 1..q {
        square[(x * x % q) as usize] = true;
    }
    let n = q as usize;
    let mut d = Digraph::empty(n);
    for a in 0..n {
        for b in 0..n {
            if square[(b + n - a) % n] {
                d.add_arc(a, b)?;
            }
        }
    }
    Ok(d)
}
