//! Fixed-size subsets in colex order and their ranks.

use crate::count::binom_usize;

/// All `k`-subsets of `0..n`, sorted, in colex order.
pub fn k_subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binom_usize(n, k).min(1 << 20));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the lowest position that can move
        let mut i = 0;
        while i < k && (if i + 1 < k { cur[i] + 1 == cur[i + 1] } else { cur[i] + 1 == n }) {
            i += 1;
        }
        if i == k {
            return out;
        }
        cur[i] += 1;
        for (j, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// Position of a sorted subset in the colex order of subsets of its size.
pub fn colex_rank(set: &[usize]) -> usize {
    set.iter().enumerate().map(|(i, &x)| binom_usize(x, i + 1)).sum()
}
