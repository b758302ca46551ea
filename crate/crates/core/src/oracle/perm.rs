//! Brute force: walk every ordering of the unlabeled vertices and keep the
//! prefix-adjacent ones. Shares nothing with the subset DP beyond query
//! validation.

use super::{prepare, LabelingCounter, Prepared, Query};
use crate::bigmath::Count;
use crate::error::Result;
use crate::graphs::Graph;

pub const PERM_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, Default)]
pub struct PermutationEnumerator;

impl LabelingCounter for PermutationEnumerator {
    fn name(&self) -> &'static str {
        "perm"
    }

    fn limit(&self) -> usize {
        PERM_LIMIT
    }

    fn count(&self, g: &Graph, query: &Query) -> Result<Count> {
        let (base, before) = match prepare(g, query, PERM_LIMIT)? {
            Prepared::Trivial(c) => return Ok(c),
            Prepared::Search { base, before } => (base, before),
        };
        let mut order: Vec<usize> = (0..g.n()).filter(|&v| base >> v & 1 == 0).collect();
        let mut total: u64 = 0;
        loop {
            if is_valid(g, base, before, &order) {
                total += 1;
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
        Ok(Count::from(total))
    }
}

fn is_valid(g: &Graph, base: u64, before: Option<(usize, usize)>, order: &[usize]) -> bool {
    let mut labeled = base;
    for &v in order {
        let attached = labeled == 0 || g.neighbors(v).iter().any(|&w| labeled >> w & 1 == 1);
        if !attached {
            return false;
        }
        if let Some((first, second)) = before {
            if v == second && labeled >> first & 1 == 0 {
                return false;
            }
        }
        labeled |= 1 << v;
    }
    true
}

/// Advances to the next lexicographic permutation; false once the last one is passed.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
