//! b-file export of the sequences that correspond to catalogued ones.
//! Comparison against the catalogue itself is manual.

use std::fmt;
use std::str::FromStr;

use crate::bigmath::Count;
use crate::combs::comb_row;
use crate::error::{Error, Result};
use crate::trees::oeis_tree_root_sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    /// `t_{h,2,0}` at index `h+1`; candidate for A056972.
    TreeRoot,
    /// `L(C_{m,2,1})` at index `m`; candidate for A151817.
    CombRow,
}

impl Sequence {
    pub const ALL: [Sequence; 2] = [Sequence::TreeRoot, Sequence::CombRow];

    pub fn name(self) -> &'static str {
        match self {
            Sequence::TreeRoot => "tree-root",
            Sequence::CombRow => "comb-row",
        }
    }

    pub fn catalogue_id(self) -> &'static str {
        match self {
            Sequence::TreeRoot => "A056972",
            Sequence::CombRow => "A151817",
        }
    }

    /// First `count` terms, starting at index 1.
    pub fn terms(self, count: usize) -> Result<Vec<Count>> {
        if count == 0 {
            return Err(Error::OutOfRange("term count must be >= 1".into()));
        }
        match self {
            Sequence::TreeRoot => oeis_tree_root_sequence(count),
            Sequence::CombRow => comb_row(count),
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sequence::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "sequence",
                name: s.to_string(),
            })
    }
}

/// Lines `k a(k)` for `k = 1, 2, ...`.
pub fn b_file(terms: &[Count]) -> String {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| format!("{} {}\n", i + 1, t))
        .collect()
}
