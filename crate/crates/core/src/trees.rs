//! Perfect `m`-ary trees `T_{h,m}`.
//!
//! `t(h,m,k)` counts labelings of `T_{h,m}` that start at a fixed depth-`k`
//! vertex. `s(h,m,k)` counts labelings of the tree with one depth-`(k+1)`
//! subtree removed, starting at the parent that lost the child. Both have a
//! recursive route (four recurrences with `t(0,m,0) = 1`) and a closed
//! product route built from the multinomials `alpha`, `beta`, `gamma`. The
//! two routes are independent code paths and are expected to agree.
//!
//! `L(T_{h,m}) = Σ_k m^k t(h,m,k)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::bigmath::{binomial, multinomial, Count};
use crate::error::{Error, Result};

/// Which evaluation route to use for `t` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeRoute {
    Recursive,
    Closed,
}

fn check_arity(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::OutOfRange(format!(
            "tree arity m = {m} must be >= 2"
        )));
    }
    Ok(())
}

fn pow(m: u64, e: u64) -> Result<i64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| (m as i64).checked_pow(e))
        .ok_or_else(|| Error::OutOfRange(format!("{m}^{e} overflows")))
}

/// `(m^e - 1) / (m - 1)`, the size of `T_{e-1,m}`.
fn geometric(m: u64, e: u64) -> Result<i64> {
    Ok((pow(m, e)? - 1) / (m as i64 - 1))
}

/// Multinomial with an explicit top index; the remainder becomes the last part.
fn multinomial_top(top: i64, parts: &[i64]) -> Result<Count> {
    let rest = top - parts.iter().sum::<i64>();
    let mut all = parts.to_vec();
    all.push(rest);
    multinomial(&all)
}

fn exponent(e: i64) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::OutOfRange(format!("exponent {e}")))
}

/// `alpha_{h,m}`: top `(m^{h+1} - m)/(m-1)`, `m` equal parts `(m^h - 1)/(m-1)`.
pub fn alpha(h: u64, m: u64) -> Result<Count> {
    check_arity(m)?;
    if h < 1 {
        return Err(Error::OutOfRange(format!("alpha needs h >= 1, got {h}")));
    }
    let top = (pow(m, h + 1)? - m as i64) / (m as i64 - 1);
    let part = geometric(m, h)?;
    multinomial_top(top, &vec![part; m as usize])
}

/// `beta_{h,m,k}`: `m-1` parts `(m^{h-k}-1)/(m-1)` and one part
/// `(m^{h+1} - m^{h-k+1})/(m-1)`, total `(m^{h+1} - m^{h-k})/(m-1) - 1`.
pub fn beta(h: u64, m: u64, k: u64) -> Result<Count> {
    check_arity(m)?;
    if h < 1 || k > h - 1 {
        return Err(Error::OutOfRange(format!(
            "beta needs h >= 1 and k <= h-1, got h={h} k={k}"
        )));
    }
    let d = m as i64 - 1;
    let top = (pow(m, h + 1)? - pow(m, h - k)?) / d - 1;
    let mut parts = vec![geometric(m, h - k)?; (m - 1) as usize];
    parts.push((pow(m, h + 1)? - pow(m, h - k + 1)?) / d);
    multinomial_top(top, &parts)
}

/// `gamma_{h,m,k} = C((m^{h+1}-m)/(m-1), (m^{h+1-k}-m)/(m-1))`.
pub fn gamma(h: u64, m: u64, k: u64) -> Result<Count> {
    check_arity(m)?;
    if k > h {
        return Err(Error::OutOfRange(format!(
            "gamma needs k <= h, got h={h} k={k}"
        )));
    }
    let d = m as i64 - 1;
    let top = (pow(m, h + 1)? - m as i64) / d;
    let bottom = (pow(m, h + 1 - k)? - m as i64) / d;
    Ok(binomial(top, bottom))
}

fn check_t(h: u64, m: u64, k: u64) -> Result<()> {
    check_arity(m)?;
    if k > h {
        return Err(Error::OutOfRange(format!(
            "t needs 0 <= k <= h, got h={h} k={k}"
        )));
    }
    Ok(())
}

fn check_s(h: u64, m: u64, k: u64) -> Result<()> {
    check_arity(m)?;
    if h < 1 || k >= h {
        return Err(Error::OutOfRange(format!(
            "s needs h >= 1 and 0 <= k <= h-1, got h={h} k={k}"
        )));
    }
    Ok(())
}

/// Bottom-up tables of the recurrences for one arity.
#[derive(Debug, Default)]
struct RecurrenceTable {
    /// `t[h][k]`, `0 <= k <= h`
    t: Vec<Vec<Count>>,
    /// `s[h][k]`, `0 <= k <= h-1` (`s[0]` is empty)
    s: Vec<Vec<Count>>,
}

impl RecurrenceTable {
    fn extend_to(&mut self, m: u64, h_max: u64) -> Result<()> {
        if self.t.is_empty() {
            self.t.push(vec![Count::one()]);
            self.s.push(Vec::new());
        }
        let mi = m as i64;
        let d = mi - 1;
        while (self.t.len() as u64) <= h_max {
            let h = self.t.len() as u64;
            let t_root = |hh: u64| self.t[hh as usize][0].clone();

            let mut s_row: Vec<Count> = Vec::with_capacity(h as usize);
            // k = 0: (t_{h-1,m,0})^{m-1} * multinomial(m^h - 1; m-1 parts (m^h-1)/(m-1))
            let part = (pow(m, h)? - 1) / d;
            let s0 = t_root(h - 1).pow(exponent(mi - 1)?)
                * multinomial_top(pow(m, h)? - 1, &vec![part; (m - 1) as usize])?;
            s_row.push(s0);
            // 1 <= k <= h-1
            for k in 1..h {
                let top = (pow(m, h + 1)? - pow(m, h - k)?) / d - 1;
                let mut parts = vec![(pow(m, h - k)? - 1) / d; (m - 1) as usize];
                parts.push((pow(m, h + 1)? - pow(m, h - k + 1)?) / d);
                let v = t_root(h - k - 1).pow(exponent(mi - 1)?)
                    * &s_row[(k - 1) as usize]
                    * multinomial_top(top, &parts)?;
                s_row.push(v);
            }

            let mut t_row: Vec<Count> = Vec::with_capacity(h as usize + 1);
            // k = 0: (t_{h-1,m,0})^m * multinomial((m^{h+1}-1)/(m-1) - 1; m parts (m^h-1)/(m-1))
            let top = (pow(m, h + 1)? - 1) / d - 1;
            let t0 = t_root(h - 1).pow(exponent(mi)?)
                * multinomial_top(top, &vec![(pow(m, h)? - 1) / d; m as usize])?;
            t_row.push(t0);
            // 1 <= k <= h
            for k in 1..=h {
                let top = (pow(m, h + 1)? - 1) / d - 1;
                let bottom = (pow(m, h - k + 1)? - 1) / d - 1;
                let v = t_root(h - k) * &s_row[(k - 1) as usize] * binomial(top, bottom);
                t_row.push(v);
            }
            self.t.push(t_row);
            self.s.push(s_row);
        }
        Ok(())
    }
}

fn tables() -> &'static RwLock<HashMap<u64, RecurrenceTable>> {
    static TABLES: OnceLock<RwLock<HashMap<u64, RecurrenceTable>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

fn with_table<R>(m: u64, h: u64, f: impl FnOnce(&RecurrenceTable) -> R) -> Result<R> {
    {
        let guard = tables().read().expect("tree tables poisoned");
        if let Some(t) = guard.get(&m) {
            if t.t.len() as u64 > h {
                return Ok(f(t));
            }
        }
    }
    let mut guard = tables().write().expect("tree tables poisoned");
    let table = guard.entry(m).or_default();
    table.extend_to(m, h)?;
    Ok(f(table))
}

/// `t_{h,m,k}` from the recurrences.
pub fn t_rec(h: u64, m: u64, k: u64) -> Result<Count> {
    check_t(h, m, k)?;
    with_table(m, h, |t| t.t[h as usize][k as usize].clone())
}

/// `s_{h,m,k}` from the recurrences.
pub fn s_rec(h: u64, m: u64, k: u64) -> Result<Count> {
    check_s(h, m, k)?;
    with_table(m, h, |t| t.s[h as usize][k as usize].clone())
}

/// `Π_{l=1}^{top} alpha_{l,m}^{(m-1) m^{top-l}}`, the factor shared by the
/// closed forms (empty product when `top = 0`).
fn alpha_tail(top: u64, m: u64) -> Result<Count> {
    let mut acc = Count::one();
    for l in 1..=top {
        let e = (m as i64 - 1) * pow(m, top - l)?;
        acc *= alpha(l, m)?.pow(exponent(e)?);
    }
    Ok(acc)
}

/// `t_{h,m,0} = Π_{j=1}^{h} alpha_{j,m}^{m^{h-j}}`.
fn t_root_closed(h: u64, m: u64) -> Result<Count> {
    let mut acc = Count::one();
    for j in 1..=h {
        acc *= alpha(j, m)?.pow(exponent(pow(m, h - j)?)?);
    }
    Ok(acc)
}

/// `Π_{j=0}^{last} beta_{h,m,j} * alpha_tail(h-1-j)`.
fn beta_chain(h: u64, m: u64, last: Option<u64>) -> Result<Count> {
    let mut acc = Count::one();
    if let Some(last) = last {
        for j in 0..=last {
            acc *= beta(h, m, j)? * alpha_tail(h - 1 - j, m)?;
        }
    }
    Ok(acc)
}

/// `t_{h,m,k}` from the product formula.
pub fn t_closed(h: u64, m: u64, k: u64) -> Result<Count> {
    check_t(h, m, k)?;
    let chain = beta_chain(h, m, k.checked_sub(1))?;
    Ok(gamma(h, m, k)? * t_root_closed(h - k, m)? * chain)
}

/// `s_{h,m,k}` from the product formula.
pub fn s_closed(h: u64, m: u64, k: u64) -> Result<Count> {
    check_s(h, m, k)?;
    beta_chain(h, m, Some(k))
}

/// `t_{h,m,k}` along the chosen route.
pub fn t_via(route: TreeRoute, h: u64, m: u64, k: u64) -> Result<Count> {
    match route {
        TreeRoute::Recursive => t_rec(h, m, k),
        TreeRoute::Closed => t_closed(h, m, k),
    }
}

/// `L(T_{h,m})` using the closed form.
pub fn count_perfect_tree(h: u64, m: u64) -> Result<Count> {
    count_perfect_tree_via(TreeRoute::Closed, h, m)
}

/// `L(T_{h,m}) = Σ_{k=0}^{h} m^k t_{h,m,k}`.
pub fn count_perfect_tree_via(route: TreeRoute, h: u64, m: u64) -> Result<Count> {
    check_arity(m)?;
    let mut total = Count::default();
    for k in 0..=h {
        total += Count::from(m).pow(exponent(k as i64)?) * t_via(route, h, m, k)?;
    }
    Ok(total)
}

/// `t_{h,2,0}` for `h = 0 .. limit-1`; entry `h` is the candidate for
/// A056972(h+1).
pub fn oeis_tree_root_sequence(limit: usize) -> Result<Vec<Count>> {
    if limit < 1 {
        return Err(Error::OutOfRange("sequence length must be >= 1".into()));
    }
    (0..limit as u64).map(|h| t_closed(h, 2, 0)).collect()
}
