//! Subset dynamic program over labeled sets.
//!
//! `N(S)` is the number of ways to reach labeled set `S` from the initial
//! set; `N(S) = Σ N(S \ {v})` over `v ∈ S` that are adjacent to `S \ {v}`
//! (and, under an ordering constraint, not the second vertex while the
//! first is still missing). Only the vertices outside the initial set are
//! indexed. Values are kept one popcount layer at a time, each layer
//! indexed by colexicographic rank, so memory is bounded by the widest
//! layer instead of `2^n`. Subsets are processed by popcount ascending and
//! then by rank ascending.
//!
//! Every `N(S)` is at most `|S|!`, so `u128` is exact up to 33 free
//! vertices; the result is widened to a [`Count`] at the end.

use rayon::prelude::*;

use super::{prepare, LabelingCounter, Prepared, Query};
use crate::bigmath::Count;
use crate::error::{Error, Result};
use crate::graphs::Graph;

pub const DEFAULT_DP_LIMIT: usize = 24;
/// Hard cap: beyond this the `u128` layer values could overflow.
pub const MAX_DP_LIMIT: usize = 32;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetDp {
    limit: usize,
}

impl Default for SubsetDp {
    fn default() -> Self {
        Self::new(DEFAULT_DP_LIMIT)
    }
}

impl SubsetDp {
    /// A DP accepting graphs with at most `limit` vertices (clamped to [`MAX_DP_LIMIT`]).
    pub fn new(limit: usize) -> Self {
        Self {
            limit: limit.min(MAX_DP_LIMIT),
        }
    }
}

impl LabelingCounter for SubsetDp {
    fn name(&self) -> &'static str {
        "dp"
    }

    fn limit(&self) -> usize {
        self.limit
    }

    fn count(&self, g: &Graph, query: &Query) -> Result<Count> {
        match prepare(g, query, self.limit)? {
            Prepared::Trivial(c) => Ok(c),
            Prepared::Search { base, before } => Ok(Count::from(run(g, base, before)?)),
        }
    }
}

/// Pascal table `binom[n][k]`.
struct Binomials(Vec<Vec<u64>>);

impl Binomials {
    fn new(max: usize) -> Self {
        let mut t = vec![vec![0u64; max + 2]; max + 2];
        for n in 0..=max + 1 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        Self(t)
    }

    #[inline]
    fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.0[n][k]
        }
    }

    /// Subset of size `k` with colex rank `rank`.
    fn unrank(&self, mut rank: u64, k: usize) -> u64 {
        let mut mask = 0u64;
        for i in (1..=k).rev() {
            let mut c = i - 1;
            while self.get(c + 1, i) <= rank {
                c += 1;
            }
            mask |= 1 << c;
            rank -= self.get(c, i);
        }
        mask
    }
}

/// Next larger integer with the same popcount (Gosper).
#[inline]
fn next_same_popcount(x: u64) -> u64 {
    let low = x & x.wrapping_neg();
    let ripple = x + low;
    (((ripple ^ x) >> 2) / low) | ripple
}

struct Layout {
    /// neighbors among free vertices, as masks over free indices
    adj_free: Vec<u64>,
    /// whether a free vertex touches the initial labeled set
    touches_base: Vec<bool>,
    /// (first, second) as free indices: `second` needs `first` already labeled
    before: Option<(usize, usize)>,
    base_empty: bool,
}

fn run(g: &Graph, base: u64, before: Option<(usize, usize)>) -> Result<u128> {
    let n = g.n();
    let free: Vec<usize> = (0..n).filter(|&v| base >> v & 1 == 0).collect();
    let f = free.len();
    if f == 0 {
        return Ok(1);
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        pos[v] = i;
    }
    let layout = Layout {
        adj_free: free
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| pos[w] != usize::MAX)
                    .fold(0u64, |m, &w| m | 1 << pos[w])
            })
            .collect(),
        touches_base: free
            .iter()
            .map(|&v| g.neighbors(v).iter().any(|&w| base >> w & 1 == 1))
            .collect(),
        // `prepare` guarantees both endpoints are free when a constraint survives
        before: before.map(|(a, b)| (pos[a], pos[b])),
        base_empty: base == 0,
    };
    let binom = Binomials::new(f);

    let mut prev: Vec<u128> = if layout.base_empty {
        // every single vertex may start, except a constrained second vertex
        (0..f)
            .map(|i| match layout.before {
                Some((_, second)) if second == i => 0,
                _ => 1,
            })
            .collect()
    } else {
        vec![1]
    };
    let first_layer = if layout.base_empty { 2 } else { 1 };

    for k in first_layer..=f {
        let size = binom.get(f, k) as usize;
        let mut cur = vec![0u128; size];
        let overflow = cur
            .par_chunks_mut(CHUNK)
            .enumerate()
            .map(|(chunk, out)| fill_chunk(&layout, &binom, &prev, k, chunk * CHUNK, out))
            .any(|ok| !ok);
        if overflow {
            return Err(Error::OutOfRange(format!(
                "subset DP value overflowed u128 at layer {k}"
            )));
        }
        prev = cur;
    }
    Ok(prev[0])
}

/// Computes `out.len()` consecutive entries of layer `k` starting at colex
/// rank `start`. Returns false on overflow.
fn fill_chunk(
    layout: &Layout,
    binom: &Binomials,
    prev: &[u128],
    k: usize,
    start: usize,
    out: &mut [u128],
) -> bool {
    let mut mask = binom.unrank(start as u64, k);
    let mut elems = [0usize; 64];
    let mut prefix = [0u64; 65];
    let mut suffix = [0u64; 65];
    for (slot, value) in out.iter_mut().enumerate() {
        if slot > 0 {
            mask = next_same_popcount(mask);
        }
        // elements c_1 < ... < c_k; rank(S \ c_j) = Σ_{i<j} C(c_i, i) + Σ_{i>j} C(c_i, i-1)
        let mut rest = mask;
        for e in elems.iter_mut().take(k) {
            *e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
        }
        prefix[0] = 0;
        for j in 0..k {
            prefix[j + 1] = prefix[j] + binom.get(elems[j], j + 1);
        }
        suffix[k] = 0;
        for j in (0..k).rev() {
            suffix[j] = suffix[j + 1] + binom.get(elems[j], j);
        }
        let mut acc: u128 = 0;
        for j in 0..k {
            let v = elems[j];
            let without = mask & !(1u64 << v);
            if !layout.touches_base[v] && layout.adj_free[v] & without == 0 {
                continue;
            }
            if let Some((first, second)) = layout.before {
                if v == second && without >> first & 1 == 0 {
                    continue;
                }
            }
            let rank = (prefix[j] + suffix[j + 1]) as usize;
            match acc.checked_add(prev[rank]) {
                Some(s) => acc = s,
                None => return false,
            }
        }
        *value = acc;
    }
    true
}
