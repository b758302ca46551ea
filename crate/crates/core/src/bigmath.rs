//! Exact integer and rational kernels shared by every formula module.
//!
//! Counts are arbitrary-precision ([`Count`]), generating-function coefficients
//! are signed ([`SignedCoefficient`]) and intermediate quotients use
//! [`Rational`], which `num-rational` keeps in lowest terms with a positive
//! denominator. Empty sums are zero and empty products are one throughout.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A labeling count. Always nonnegative.
pub type Count = BigUint;
/// A signed coefficient of a generating-function numerator.
pub type SignedCoefficient = BigInt;
/// An exact quotient in lowest terms.
pub type Rational = BigRational;

/// Monotone factorial table. Grows on demand and never shrinks; create a
/// fresh instance if bounded memory matters.
#[derive(Debug)]
pub struct FactorialCache {
    table: RwLock<Vec<Count>>,
}

impl Default for FactorialCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialCache {
    pub fn new() -> Self {
        Self {
            table: RwLock::new(vec![Count::one()]),
        }
    }

    pub fn get(&self, n: u64) -> Count {
        let idx = n as usize;
        {
            let table = self.table.read().expect("factorial cache poisoned");
            if let Some(v) = table.get(idx) {
                return v.clone();
            }
        }
        let mut table = self.table.write().expect("factorial cache poisoned");
        // another writer may have extended the table meanwhile
        while table.len() <= idx {
            let i = table.len() as u64;
            let next = &table[table.len() - 1] * i;
            table.push(next);
        }
        table[idx].clone()
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.table.read().expect("factorial cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn global_factorials() -> &'static FactorialCache {
    static CACHE: OnceLock<FactorialCache> = OnceLock::new();
    CACHE.get_or_init(FactorialCache::new)
}

/// `n!`, served from the process-wide cache.
pub fn factorial(n: u64) -> Count {
    global_factorials().get(n)
}

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
///
/// The shorthand `M_{a,b}` for two arguments is `binomial(a + b, a)`.
pub fn binomial(n: i64, k: i64) -> Count {
    if n < 0 || k < 0 || k > n {
        return Count::zero();
    }
    let (n, k) = (n as u64, k as u64);
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(Σ parts)! / Π parts!`. The empty list gives 1.
pub fn multinomial(parts: &[i64]) -> Result<Count> {
    if let Some(&part) = parts.iter().find(|&&p| p < 0) {
        return Err(Error::NegativeMultinomialPart {
            part,
            parts: parts.to_vec(),
        });
    }
    let total: u64 = parts.iter().map(|&p| p as u64).sum();
    let denom = parts
        .iter()
        .fold(Count::one(), |acc, &p| acc * factorial(p as u64));
    Ok(factorial(total) / denom)
}

/// `n!! = n (n-2) (n-4) ...`, with `0!! = 1!! = 1`.
pub fn double_factorial(n: u64) -> Count {
    (1..=n)
        .rev()
        .step_by(2)
        .fold(Count::one(), |acc, i| acc * i)
}

/// `2^e` for a nonnegative exponent.
pub fn pow2(e: i64) -> Result<Count> {
    if e < 0 {
        return Err(Error::OutOfRange(format!("negative power of two: 2^{e}")));
    }
    Ok(Count::one() << (e as usize))
}

pub fn count_to_rational(c: &Count) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

pub fn rational(num: &Count, den: &Count) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Converts an exact quotient back to a count, failing loudly if a formula
/// that should be integral is not.
pub fn rational_to_count(r: &Rational, what: &str) -> Result<Count> {
    if !r.is_integer() {
        return Err(Error::Integrality(format!("{what} evaluated to {r}")));
    }
    let n = r.to_integer();
    if n.is_negative() {
        return Err(Error::Integrality(format!(
            "{what} evaluated to negative {n}"
        )));
    }
    Ok(n.magnitude().clone())
}

/// Exact quotient of two counts, erroring when `den` does not divide `num`.
pub fn exact_div(num: &Count, den: &Count, what: &str) -> Result<Count> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Integrality(format!("{what}: {num} / {den}")));
    }
    Ok(q)
}

/// Small helper so callers can print counts of moderate size compactly in
/// diagnostics.
pub fn digits(c: &Count) -> usize {
    if c.is_zero() {
        1
    } else {
        c.to_str_radix(10).len()
    }
}

/// Converts a count into a `u128` if it fits.
pub fn count_to_u128(c: &Count) -> Option<u128> {
    c.to_u128()
}

/// Concurrent memo table. Grows without bound, like [`FactorialCache`].
#[derive(Debug)]
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self {
            map: RwLock::new(HashMap::new()),
        }
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().expect("memo poisoned").get(key).cloned()
    }

    pub fn insert(&self, key: K, value: V) {
        self.map.write().expect("memo poisoned").insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
