//! Ground-truth counting of random walk labelings on arbitrary connected graphs.
//!
//! # Reduction
//!
//! A walk labeling is determined by the order in which vertices are first
//! visited. Write that order as `v1, ..., vn`. When the walk first reaches
//! `vi` (i >= 2) it arrives along an edge from a vertex it has already
//! visited, so `vi` is adjacent to one of `v1, ..., v(i-1)`. Conversely,
//! given any such prefix-adjacent ordering, the set `{v1, ..., v(i-1)}`
//! induces a connected subgraph by induction. The walk can travel inside
//! that set without labeling anything and then step from a neighbor of
//! `vi` onto `vi`. So random walk labelings of `G` are in bijection with
//! prefix-adjacent orderings of `V(G)`. Every counter here counts those
//! orderings, optionally with a fixed initial labeled set or a
//! "`u` before `v`" constraint.
//!
//! Two independent counters are provided and registered by name: a subset
//! dynamic program ([`SubsetDp`], `"dp"`) and a brute-force permutation
//! enumerator ([`PermutationEnumerator`], `"perm"`).

mod dp;
mod perm;

use std::collections::BTreeMap;

pub use dp::{SubsetDp, DEFAULT_DP_LIMIT, MAX_DP_LIMIT};
pub use perm::{PermutationEnumerator, PERM_LIMIT};

use crate::bigmath::Count;
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// What to count: orderings extending `labeled`, optionally requiring
/// `before.0` to be labeled before `before.1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Query {
    pub labeled: Vec<usize>,
    pub before: Option<(usize, usize)>,
}

impl Query {
    /// All labelings of the graph.
    pub fn all() -> Self {
        Self::default()
    }

    /// Labelings whose first vertex is `start`.
    pub fn from(start: usize) -> Self {
        Self {
            labeled: vec![start],
            before: None,
        }
    }

    /// Ways to finish a labeling once `labeled` has been labeled.
    pub fn completions(labeled: impl Into<Vec<usize>>) -> Self {
        Self {
            labeled: labeled.into(),
            before: None,
        }
    }

    /// Adds the constraint that `first` is labeled before `second`.
    pub fn with_before(mut self, first: usize, second: usize) -> Self {
        self.before = Some((first, second));
        self
    }
}

/// A strategy that counts prefix-adjacent orderings.
pub trait LabelingCounter: Send + Sync {
    fn name(&self) -> &'static str;

    /// Largest vertex count this counter accepts.
    fn limit(&self) -> usize;

    fn count(&self, g: &Graph, query: &Query) -> Result<Count>;
}

/// Outcome of the checks shared by every counter.
pub(crate) enum Prepared {
    /// The answer is fixed without any search.
    Trivial(Count),
    /// Bitmask form of the query.
    Search {
        base: u64,
        before: Option<(usize, usize)>,
    },
}

/// Validates a query and normalizes the ordering constraint.
pub(crate) fn prepare(g: &Graph, query: &Query, limit: usize) -> Result<Prepared> {
    let n = g.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    for &v in query
        .labeled
        .iter()
        .chain(query.before.iter().flat_map(|(a, b)| [a, b]))
    {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if !query.labeled.is_empty() && !g.is_connected_subset(&query.labeled) {
        return Err(Error::LabeledNotConnected);
    }
    let base = query.labeled.iter().fold(0u64, |m, &v| m | 1 << v);
    let mut before = query.before;
    if let Some((first, second)) = before {
        if first == second {
            return Err(Error::OutOfRange(format!(
                "ordering constraint needs two distinct vertices, got {first} twice"
            )));
        }
        let first_in = base >> first & 1 == 1;
        let second_in = base >> second & 1 == 1;
        match (first_in, second_in) {
            // already satisfied by the initial labeled set
            (true, _) => before = None,
            (false, true) => return Ok(Prepared::Trivial(Count::from(0u8))),
            (false, false) => {}
        }
    }
    Ok(Prepared::Search { base, before })
}

/// Counters available by name.
pub struct CounterRegistry {
    counters: BTreeMap<&'static str, Box<dyn LabelingCounter>>,
}

impl Default for CounterRegistry {
    fn default() -> Self {
        Self::with_dp_limit(DEFAULT_DP_LIMIT)
    }
}

impl CounterRegistry {
    pub fn empty() -> Self {
        Self {
            counters: BTreeMap::new(),
        }
    }

    /// The built-in counters, with the subset DP capped at `dp_limit` vertices.
    pub fn with_dp_limit(dp_limit: usize) -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(SubsetDp::new(dp_limit)));
        reg.register(Box::new(PermutationEnumerator));
        reg
    }

    pub fn register(&mut self, counter: Box<dyn LabelingCounter>) {
        self.counters.insert(counter.name(), counter);
    }

    pub fn get(&self, name: &str) -> Result<&dyn LabelingCounter> {
        self.counters
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "oracle algorithm",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.counters.keys().copied()
    }
}

/// `L(G)` by the subset DP with the default vertex limit.
pub fn count_labelings(g: &Graph) -> Result<Count> {
    SubsetDp::default().count(g, &Query::all())
}

/// Labelings of `g` that start at `start`.
pub fn count_labelings_from(g: &Graph, start: usize) -> Result<Count> {
    SubsetDp::default().count(g, &Query::from(start))
}

/// Ways to finish a labeling whose labeled set is `labeled`.
pub fn count_completions(g: &Graph, labeled: &[usize]) -> Result<Count> {
    SubsetDp::default().count(g, &Query::completions(labeled))
}

/// Labelings starting at `start` in which `u` is labeled before `v`.
pub fn count_labelings_from_before(g: &Graph, start: usize, u: usize, v: usize) -> Result<Count> {
    SubsetDp::default().count(g, &Query::from(start).with_before(u, v))
}

/// `L(G)` by enumerating all `n!` orderings; `n` must not exceed [`PERM_LIMIT`].
pub fn count_labelings_perm(g: &Graph) -> Result<Count> {
    PermutationEnumerator.count(g, &Query::all())
}
