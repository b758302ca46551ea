//! Two-cycle graphs `S_{a1,a2,a3}`: paths of `a1` (top), `a2` (middle) and
//! `a3` (bottom) vertices whose left ends form a vertical path and whose
//! right ends form a vertical path.
//!
//! The left middle junction `(2,1)` is the *green* vertex and the right
//! middle junction `(2,a2)` is the *red* one. Every labeling labels one of
//! them first, and reflecting the graph left to right swaps them, so
//! `L = 2 × #(labelings with green before red)`. Those are split by start:
//!
//! * `A`: start at green.
//! * `B(s)`, `2 <= s <= a2-1`: start at middle vertex `(2,s)`.
//! * `C(s)`, `1 <= s <= a1`: start at top vertex `(1,s)`; position 1 is next
//!   to green. Bottom starts are `C` with `a1` and `a3` swapped.
//!
//! Starting at red with green before red is impossible. Hence
//! `L = 2A + 2 Σ B(s) + 2 Σ C_{a1,a2,a3}(s) + 2 Σ C_{a3,a2,a1}(s)`.
//!
//! In `B` and `C` the walk leaves the start, runs along its path toward the
//! left end and labels `q - 1` further vertices of that path on both sides
//! before entering the rest of the graph. The prefix factor interleaves the
//! vertices right of the start with the left interior, which is
//! `C(q-2, s-2)` for `B` and `C(q-1, s-1)` for `C`. The shorthand
//! `M_{q-2,s-2} = C(q+s-4, q-2)` in the same position is also available as
//! [`PrefixReading::Shorthand`]; it does not count these labelings once
//! `s > 2` (resp. `s > 1`).

use num_traits::Zero;

use crate::bigmath::{binomial, multinomial, pow2, Count};
use crate::error::{Error, Result};

/// How the prefix factor in `B` and `C` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrefixReading {
    /// `C(q-2, s-2)` and `C(q-1, s-1)`.
    #[default]
    Interleave,
    /// `M_{q-2,s-2}` and `M_{q-1,s-1}` as two-part multinomials.
    Shorthand,
}

fn check(a1: u64, a2: u64, a3: u64) -> Result<()> {
    if a1 < 2 || a2 < 2 || a3 < 2 {
        return Err(Error::OutOfRange(format!(
            "two-cycle paths need a1, a2, a3 >= 2, got ({a1},{a2},{a3})"
        )));
    }
    Ok(())
}

fn m(parts: &[i64]) -> Result<Count> {
    multinomial(parts)
}

fn p2(e: i64) -> Result<Count> {
    pow2(e)
}

/// Labelings starting at the green vertex, green before red automatically.
pub fn term_a(a1: u64, a2: u64, a3: u64) -> Result<Count> {
    check(a1, a2, a3)?;
    let (a1, a2, a3) = (a1 as i64, a2 as i64, a3 as i64);
    let mut t = Count::zero();
    for k in 0..a1 {
        for l in 0..a3 {
            t += m(&[a2 - 2, k, l])? * m(&[a1 - k, a3 - l])? * p2(a1 - 1 - k + a3 - 1 - l)?;
        }
    }
    for k in 0..a3 {
        t += m(&[a2 - 2, k, a1])? * p2(a3 - 1 - k)?;
    }
    for k in 0..a1 {
        t += m(&[a2 - 2, k, a3])? * p2(a1 - 1 - k)?;
    }
    t += m(&[a2 - 2, a1, a3])?;
    for k in 0..a1 {
        for l in 0..a2 - 2 {
            t += m(&[a3, k, l])? * m(&[a1 - k, a2 - 2 - l])? * p2(a1 - 1 - k + a2 - 3 - l)?;
        }
    }
    for l in 0..a2 - 2 {
        t += m(&[a1, a3, l])? * p2(a2 - 3 - l)?;
    }
    for k in 0..a3 {
        for l in 0..a2 - 2 {
            t += m(&[a1, k, l])? * m(&[a3 - k, a2 - 2 - l])? * p2(a3 - 1 - k + a2 - 3 - l)?;
        }
    }
    Ok(t)
}

fn prefix(reading: PrefixReading, q: i64, s: i64) -> Result<Count> {
    match reading {
        PrefixReading::Interleave => Ok(binomial(q, s)),
        PrefixReading::Shorthand => m(&[q, s]),
    }
}

/// Labelings starting at middle vertex `(2,s)` with green before red.
pub fn term_b(a1: u64, a2: u64, a3: u64, s: u64) -> Result<Count> {
    term_b_with(PrefixReading::Interleave, a1, a2, a3, s)
}

pub fn term_b_with(reading: PrefixReading, a1: u64, a2: u64, a3: u64, s: u64) -> Result<Count> {
    check(a1, a2, a3)?;
    if s < 2 || s + 1 > a2 {
        return Err(Error::OutOfRange(format!(
            "B needs 2 <= s <= a2-1, got s={s} a2={a2}"
        )));
    }
    let (a1, a2, a3, s) = (a1 as i64, a2 as i64, a3 as i64, s as i64);
    let mut t = Count::zero();
    // green reached before the right end of the middle path
    for q in s..a2 {
        let r = a2 - 1 - q;
        let mut inner = Count::zero();
        for k in 0..a1 {
            for l in 0..a3 {
                inner += m(&[r, k, l])? * m(&[a1 - k, a3 - l])? * p2(a1 - 1 - k + a3 - 1 - l)?;
            }
        }
        for k in 0..a1 {
            inner += m(&[r, k, a3])? * p2(a1 - 1 - k)?;
        }
        for k in 0..a3 {
            inner += m(&[r, k, a1])? * p2(a3 - 1 - k)?;
        }
        inner += m(&[r, a1, a3])?;
        t += prefix(reading, q - 2, s - 2)? * inner;
    }
    // red's neighbors on the middle path still open after green
    for q in s..a2 - 1 {
        let r = a2 - 1 - q;
        let mut inner = Count::zero();
        for l in 0..r {
            for k in 0..a1 {
                inner += m(&[a3, k, l])? * m(&[a1 - k, r - l])? * p2(a1 - 1 - k + r - 1 - l)?;
            }
            for k in 0..a3 {
                inner += m(&[a1, k, l])? * m(&[a3 - k, r - l])? * p2(a3 - 1 - k + r - 1 - l)?;
            }
            inner += m(&[a3, a1, l])? * p2(r - 1 - l)?;
        }
        t += prefix(reading, q - 2, s - 2)? * inner;
    }
    Ok(t)
}

/// Labelings starting at top vertex `(1,s)` with green before red.
pub fn term_c(a1: u64, a2: u64, a3: u64, s: u64) -> Result<Count> {
    term_c_with(PrefixReading::Interleave, a1, a2, a3, s)
}

pub fn term_c_with(reading: PrefixReading, a1: u64, a2: u64, a3: u64, s: u64) -> Result<Count> {
    check(a1, a2, a3)?;
    if s < 1 || s > a1 {
        return Err(Error::OutOfRange(format!(
            "C needs 1 <= s <= a1, got s={s} a1={a1}"
        )));
    }
    let (a1, a2, a3, s) = (a1 as i64, a2 as i64, a3 as i64, s as i64);
    let mut t = Count::zero();
    for q in s..=a1 {
        let r = a1 - q;
        let mut inner = Count::zero();
        for k in 0..r {
            for l in 0..a3 {
                inner += m(&[a2 - 2, k, l])? * m(&[r - k, a3 - l])? * p2(r - 1 - k + a3 - 1 - l)?;
            }
        }
        for l in 0..a3 {
            inner += m(&[a2 - 2, r, l])? * p2(a3 - 1 - l)?;
        }
        for k in 0..r {
            inner += m(&[a2 - 2, k, a3])? * p2(r - 1 - k)?;
        }
        inner += m(&[r, a2 - 2, a3])?;
        for l in 0..a2 - 2 {
            for k in 0..a3 {
                inner += m(&[r, k, l])? * m(&[a2 - 2 - l, a3 - k])? * p2(a3 - 1 - k + a2 - 3 - l)?;
            }
            inner += m(&[r, a3, l])? * p2(a2 - 3 - l)?;
            for k in 0..r {
                inner += m(&[k, a3, l])? * m(&[a2 - 2 - l, r - k])? * p2(r - 1 - k + a2 - 3 - l)?;
            }
        }
        t += prefix(reading, q - 1, s - 1)? * inner;
    }
    Ok(t)
}

/// `L(S_{a1,a2,a3})`.
pub fn count_two_cycles(a1: u64, a2: u64, a3: u64) -> Result<Count> {
    count_two_cycles_with(PrefixReading::Interleave, a1, a2, a3)
}

pub fn count_two_cycles_with(reading: PrefixReading, a1: u64, a2: u64, a3: u64) -> Result<Count> {
    check(a1, a2, a3)?;
    let mut half = term_a(a1, a2, a3)?;
    for s in 2..a2 {
        half += term_b_with(reading, a1, a2, a3, s)?;
    }
    for s in 1..=a1 {
        half += term_c_with(reading, a1, a2, a3, s)?;
    }
    for s in 1..=a3 {
        half += term_c_with(reading, a3, a2, a1, s)?;
    }
    Ok(half * 2u32)
}
