//! Trivariate generating function of the two-cycle counts,
//! `F(x,y,z) = Σ L(S_{a1,a2,a3}) x^a1 y^a2 z^a3`, which is rational:
//!
//! ```text
//! F = 16 x^2 y^2 z^2 f(x,y,z) /
//!     ((1-2x)^3 (1-2y)^3 (1-2z)^3 (1-2x-2y)(1-2x-2z)(1-2y-2z)(1-x-y-z))
//! ```
//!
//! with `f` a polynomial of total degree 10. The module carries a sparse
//! polynomial type with a small parser, truncated series expansion of such
//! quotients, and recovery of `f` from the directly counted coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigmath::SignedCoefficient;
use crate::error::{Error, Result};
use crate::twocycles::count_two_cycles;

pub type Exponent = [u32; 3];

fn degree(e: &Exponent) -> u32 {
    e[0] + e[1] + e[2]
}

/// Sparse polynomial in `x, y, z`, optionally truncated to a total degree.
/// Equality compares terms only.
#[derive(Debug, Clone, Default)]
pub struct SignedPoly3 {
    terms: BTreeMap<Exponent, SignedCoefficient>,
    truncation: Option<u32>,
}

impl PartialEq for SignedPoly3 {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SignedPoly3 {}

impl SignedPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<SignedCoefficient>) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn monomial(c: impl Into<SignedCoefficient>, e: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, [1, 0, 0])
    }

    pub fn y() -> Self {
        Self::monomial(1, [0, 1, 0])
    }

    pub fn z() -> Self {
        Self::monomial(1, [0, 0, 1])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, SignedCoefficient)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Drops every term above total degree `d` and keeps doing so under arithmetic.
    pub fn truncated(mut self, d: u32) -> Self {
        let d = self.truncation.map_or(d, |t| t.min(d));
        self.truncation = Some(d);
        self.terms.retain(|e, _| degree(e) <= d);
        self
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    fn keeps(&self, e: &Exponent) -> bool {
        self.truncation.is_none_or(|d| degree(e) <= d)
    }

    fn add_term(&mut self, e: Exponent, c: SignedCoefficient) {
        if c.is_zero() || !self.keeps(&e) {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coefficient(&self, e: Exponent) -> SignedCoefficient {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in increasing `(total degree, exponent)` order.
    pub fn terms(&self) -> Vec<(Exponent, &SignedCoefficient)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by_key(|(e, _)| (degree(e), *e));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }

    fn combine_truncation(&self, other: &Self) -> Option<u32> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.combine_truncation(other),
        };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &SignedCoefficient) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.truncation,
        };
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.combine_truncation(other),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exchanges the roles of `x` and `z`.
    pub fn mirror_xz(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[2], e[1], e[0]], c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Exact division by `c * x^e`; fails if some term is not divisible.
    pub fn div_monomial(&self, c: &SignedCoefficient, e: Exponent) -> Result<Self> {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.truncation.map(|d| d.saturating_sub(degree(&e))),
        };
        for (t, v) in &self.terms {
            if (0..3).any(|i| t[i] < e[i]) || !(v % c).is_zero() {
                return Err(Error::NumeratorRecovery(format!(
                    "term {} is not divisible by {}",
                    Self::monomial(v.clone(), *t),
                    Self::monomial(c.clone(), e)
                )));
            }
            out.add_term([t[0] - e[0], t[1] - e[1], t[2] - e[2]], v / c);
        }
        Ok(out)
    }

    /// Terms of total degree in `lo..=hi`.
    pub fn degree_band(&self, lo: u32, hi: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| (lo..=hi).contains(&degree(e)))
                .map(|(e, c)| (*e, c.clone())),
        )
    }
}

impl fmt::Display for SignedPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let vars: String = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    if p == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() || !mag.is_one() {
                write!(f, "{sign}{mag}{vars}")?;
            } else {
                write!(f, "{sign}{vars}")?;
            }
        }
        Ok(())
    }
}

/// Parses sums and differences of products of integers, `x`, `y`, `z` and
/// parenthesized subexpressions, with `^` for nonnegative integer powers.
/// A product may be written with `*` or by juxtaposition; whitespace
/// (including newlines) is ignored.
pub fn parse_poly(text: &str) -> Result<SignedPoly3> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::PolySyntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SignedPoly3> {
        let mut acc = SignedPoly3::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SignedPoly3> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c.is_ascii_digit() || c == b'(' || matches!(c, b'x' | b'y' | b'z') => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SignedPoly3> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }

    fn primary(&mut self) -> Result<SignedPoly3> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(SignedPoly3::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(SignedPoly3::y())
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(SignedPoly3::z())
            }
            Some(c) if c.is_ascii_digit() => Ok(SignedPoly3::constant(self.integer()?)),
            Some(_) => Err(self.error("expected integer, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Transcription of the numerator `f`, line breaks as published.
pub const NUMERATOR_TRANSCRIPTION: &str = "13+360y^4-96y+292y^2-456y^3-112y^5
+8(56y^3-100y^2+64y-15)(x^5+z^5)
-4(480y^5-2056y^4+3336y^3-2690y^2+1103y-185)xz
+4xz(672y^5-3544y^4+6756y^3-6238y^2+2885y-541)(x+z)
-8xz(160y^5-1304y^4+3204y^3-3520y^2+1864y-393)(x^2+z^2)
-8(384y^5-2592y^4+5960y^3-6436y^2+3418y-727)x^2z^2
-8xz(320y^4-1320y^3+1868y^2-1168y+281)(x^3+z^3)
+16x^2z^2(64y^5-752y^4+2360y^3-3140y^2+1955y-475)(x+z)
-16xz(80y^3-176y^2+138y-39)(x^4+z^4)
+64x^2z^2(32y^4-190y^3+345y^2-262y+74)(x^2+z^2)
+32(128y^4-696y^3+1244y^2-944y+267)x^3z^3
+64x^2z^2(16y^3-50y^2+50y-17)(x^3+z^3)
+128x^3z^3(32y^3-99y^2+98y-33)(x+z)
128x^3z^3(8y^2-12y+5)(x+z)^2
+(496y^5-1824y^4+2596y^3-1852y^2+675y-101)(x+z)
-4(200y^5-892y^4+1470y^3-1183y^2+479y-79)(x^2+z^2)
+4(112y^5-760y^4+1584y^3-1490y^2+679y-124)(x^3+z^3)
+4(224y^4-760y^3+900y^2-474y+97)(x^4+z^4)";

/// Textual fixes applied to [`NUMERATOR_TRANSCRIPTION`]: `(found, replacement)`.
/// Each is confirmed by [`recover_numerator`].
pub const NUMERATOR_CORRECTIONS: &[(&str, &str)] = &[(
    "(x+z)\n128x^3z^3(8y^2-12y+5)",
    "(x+z)\n+128x^3z^3(8y^2-12y+5)",
)];

/// The transcription read literally: the line without a leading operator
/// multiplies onto the previous line.
pub fn f_numerator_verbatim() -> SignedPoly3 {
    parse_poly(NUMERATOR_TRANSCRIPTION).expect("transcription parses")
}

/// The numerator `f` with [`NUMERATOR_CORRECTIONS`] applied.
pub fn f_numerator() -> SignedPoly3 {
    let mut text = NUMERATOR_TRANSCRIPTION.to_string();
    for (found, replacement) in NUMERATOR_CORRECTIONS {
        assert!(text.contains(found), "correction target missing: {found:?}");
        text = text.replacen(found, replacement, 1);
    }
    parse_poly(&text).expect("corrected transcription parses")
}

/// The published low-order expansion of `F`, all terms with `a1+a2+a3 <= 11`.
pub const EXPANSION_TRANSCRIPTION: &str =
    "208x^2y^2z^2+672x^2y^2z^3+752x^2y^3z^2+672x^3y^2z^2+2048x^2y^2z^4+2336x^2y^3z^3
+2544x^2y^4z^2+2496x^3y^2z^3+2336x^3y^3z^2+2048x^4y^2z^2+5952x^2y^2z^5
+6848x^2y^3z^4+8048x^2y^4z^3+8048x^2y^5z^2+8640x^3y^2z^4+8064x^3y^3z^3
+8048x^3y^4z^2+8640x^4y^2z^3+6848x^4y^3z^2+5952x^5y^2z^2+16640x^2y^2z^6
+19200x^2y^3z^5+24048x^2y^4z^4+26720x^2y^5z^3+24048x^2y^6z^2+28160x^3y^2z^5
+26368x^3y^3z^4+26720x^3y^4z^3+26720x^3y^5z^2+33536x^4y^2z^4+26368x^4y^3z^3
+24048x^4y^4z^2+28160x^5y^2z^3+19200x^5y^3z^2+16640x^6y^2z^2+45056x^2y^2z^7
+51968x^2y^3z^6+68592x^2y^4z^5+84816x^2y^5z^4+84816x^2y^6z^3+68592x^2y^7z^2
+87296x^3y^2z^6+82176x^3y^3z^5+84816x^3y^4z^4+87840x^3y^5z^3+84816x^3y^6z^2
+121088x^4y^2z^5+96512x^4y^3z^4+84816x^4y^4z^3+84816x^4y^5z^2+121088x^5y^2z^4
+82176x^5y^3z^3+68592x^5y^4z^2+87296x^6y^2z^3+51968x^6y^3z^2+45056x^7y^2z^2";

/// The published expansion terms as `(exponent, coefficient)`.
pub fn expansion_terms() -> Vec<(Exponent, SignedCoefficient)> {
    let p = parse_poly(EXPANSION_TRANSCRIPTION).expect("expansion parses");
    p.terms().into_iter().map(|(e, c)| (e, c.clone())).collect()
}

/// `numerator / Π factor^multiplicity` as a power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: SignedPoly3,
    /// Each factor must have constant term 1.
    pub factors: Vec<(SignedPoly3, u32)>,
}

impl RationalGF {
    pub fn denominator(&self) -> SignedPoly3 {
        self.factors
            .iter()
            .fold(SignedPoly3::one(), |acc, (g, k)| acc.mul(&g.pow(*k)))
    }
}

/// `p / g` as a power series truncated at total degree `d`; `g(0,0,0)` must be 1.
pub fn divide_series(p: &SignedPoly3, g: &SignedPoly3, d: u32) -> Result<SignedPoly3> {
    if !g.coefficient([0, 0, 0]).is_one() {
        return Err(Error::NonUnitFactor);
    }
    // r = p + h r with h = 1 - g; settle coefficients in increasing total degree
    let h: Vec<(Exponent, SignedCoefficient)> = g
        .terms
        .iter()
        .filter(|(e, _)| degree(e) > 0)
        .map(|(e, c)| (*e, -c))
        .collect();
    let mut work: BTreeMap<(u32, Exponent), SignedCoefficient> = p
        .terms
        .iter()
        .filter(|(e, _)| degree(e) <= d)
        .map(|(e, c)| ((degree(e), *e), c.clone()))
        .collect();
    let mut out = SignedPoly3::zero().truncated(d);
    while let Some(((deg, e), c)) = work.pop_first() {
        if c.is_zero() {
            continue;
        }
        for (he, hc) in &h {
            let t = [e[0] + he[0], e[1] + he[1], e[2] + he[2]];
            let td = deg + degree(he);
            if td <= d {
                *work.entry((td, t)).or_insert_with(BigInt::zero) += hc * &c;
            }
        }
        out.add_term(e, c);
    }
    Ok(out)
}

/// Power series of `gf` up to total degree `d`.
pub fn expand_rational(gf: &RationalGF, d: u32) -> Result<SignedPoly3> {
    let mut acc = gf.numerator.clone().truncated(d);
    for (g, k) in &gf.factors {
        for _ in 0..*k {
            acc = divide_series(&acc, g, d)?;
        }
    }
    Ok(acc)
}

/// The denominator factors `(1-2x)^3 (1-2y)^3 (1-2z)^3 (1-2x-2y)(1-2x-2z)(1-2y-2z)(1-x-y-z)`.
pub fn two_cycle_denominator() -> Vec<(SignedPoly3, u32)> {
    let lin = |a: i64, b: i64, c: i64| {
        SignedPoly3::from_terms([
            ([0, 0, 0], BigInt::one()),
            ([1, 0, 0], BigInt::from(-a)),
            ([0, 1, 0], BigInt::from(-b)),
            ([0, 0, 1], BigInt::from(-c)),
        ])
    };
    vec![
        (lin(2, 0, 0), 3),
        (lin(0, 2, 0), 3),
        (lin(0, 0, 2), 3),
        (lin(2, 2, 0), 1),
        (lin(2, 0, 2), 1),
        (lin(0, 2, 2), 1),
        (lin(1, 1, 1), 1),
    ]
}

fn prefactor() -> (SignedCoefficient, Exponent) {
    (BigInt::from(16), [2, 2, 2])
}

/// `F` with numerator `16 x^2 y^2 z^2 f`.
pub fn two_cycle_gf() -> RationalGF {
    let (c, e) = prefactor();
    RationalGF {
        numerator: SignedPoly3::monomial(c, e).mul(&f_numerator()),
        factors: two_cycle_denominator(),
    }
}

/// `Σ L(S_{a1,a2,a3}) x^a1 y^a2 z^a3` over `a1+a2+a3 <= d`, from direct counting.
pub fn counted_series(d: u32) -> Result<SignedPoly3> {
    let mut terms = Vec::new();
    for a1 in 2..=d {
        for a2 in 2..=d {
            for a3 in 2..=d {
                if a1 + a2 + a3 <= d {
                    let c = count_two_cycles(a1 as u64, a2 as u64, a3 as u64)?;
                    terms.push(([a1, a2, a3], BigInt::from(c)));
                }
            }
        }
    }
    Ok(SignedPoly3::from_terms(terms).truncated(d))
}

/// Smallest degree accepted by [`recover_numerator`].
pub const MIN_RECOVERY_DEGREE: u32 = 18;

/// Rebuilds `f` from counted coefficients: multiply the counted series by
/// the denominator, require the top two degree layers (`d-1`, `d`) of the
/// product to vanish, and divide out `16 x^2 y^2 z^2`.
pub fn recover_numerator(d: u32) -> Result<SignedPoly3> {
    if d < MIN_RECOVERY_DEGREE {
        return Err(Error::NumeratorRecovery(format!(
            "degree {d} below the minimum {MIN_RECOVERY_DEGREE}"
        )));
    }
    let series = counted_series(d)?;
    let den = two_cycle_denominator()
        .iter()
        .fold(SignedPoly3::one().truncated(d), |acc, (g, k)| {
            acc.mul(&g.pow(*k))
        });
    let product = series.mul(&den);
    let tail = product.degree_band(d - 1, d);
    if !tail.is_empty() {
        return Err(Error::NumeratorRecovery(format!(
            "{} nonzero terms in degrees {}..={}",
            tail.len(),
            d - 1,
            d
        )));
    }
    let (c, e) = prefactor();
    let numerator = product.degree_band(0, d - 2);
    numerator.div_monomial(&c, e)
}

/// A monomial whose coefficient differs between two polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientDiff {
    pub exponent: Exponent,
    pub left: SignedCoefficient,
    pub right: SignedCoefficient,
}

/// Every monomial where `left` and `right` disagree, in `(degree, exponent)` order.
pub fn diff(left: &SignedPoly3, right: &SignedPoly3) -> Vec<CoefficientDiff> {
    let mut keys: Vec<Exponent> = left
        .terms
        .keys()
        .chain(right.terms.keys())
        .copied()
        .collect();
    keys.sort_by_key(|e| (degree(e), *e));
    keys.dedup();
    keys.into_iter()
        .filter_map(|e| {
            let (l, r) = (left.coefficient(e), right.coefficient(e));
            (l != r).then_some(CoefficientDiff {
                exponent: e,
                left: l,
                right: r,
            })
        })
        .collect()
}

/// `a1,a2,a3,coefficient` rows, header first, sorted by total degree then exponent.
pub fn to_csv(p: &SignedPoly3) -> String {
    let mut out = String::from("a1,a2,a3,coefficient\n");
    for (e, c) in p.terms() {
        out.push_str(&format!("{},{},{},{}\n", e[0], e[1], e[2], c));
    }
    out
}

/// CSV of a coefficient diff with columns `a1,a2,a3,<left>,<right>`.
pub fn diff_to_csv(rows: &[CoefficientDiff], left: &str, right: &str) -> String {
    let mut out = format!("a1,a2,a3,{left},{right}\n");
    for d in rows {
        let e = d.exponent;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            e[0], e[1], e[2], d.left, d.right
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(s: &str) -> SignedPoly3 {
        parse_poly(s).unwrap()
    }

    #[test]
    fn parser_basics() {
        assert_eq!(poly("2x^2y - 3(x+1)").to_string(), "-3-3x+2x^2y");
        assert_eq!(poly("(x+y)^2"), poly("x^2+2xy+y^2"));
        assert_eq!(poly("-x*y"), poly("0-yx"));
        assert_eq!(poly("(x+z)\n(x+z)"), poly("(x+z)^2"));
        assert!(matches!(parse_poly("x+"), Err(Error::PolySyntax { .. })));
        assert!(matches!(parse_poly("(x"), Err(Error::PolySyntax { .. })));
        assert!(matches!(
            parse_poly("x)"),
            Err(Error::PolySyntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_poly("w"),
            Err(Error::PolySyntax { pos: 0, .. })
        ));
    }

    #[test]
    fn display_round_trip() {
        let f = f_numerator();
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn geometric_and_binomial_series() {
        let gf = RationalGF {
            numerator: SignedPoly3::one(),
            factors: vec![(poly("1-x"), 1)],
        };
        assert_eq!(expand_rational(&gf, 3).unwrap(), poly("1+x+x^2+x^3"));
        let gf = RationalGF {
            numerator: SignedPoly3::one(),
            factors: vec![(poly("1-x-y"), 1)],
        };
        assert_eq!(expand_rational(&gf, 2).unwrap(), poly("1+x+y+x^2+2xy+y^2"));
        let bad = RationalGF {
            numerator: SignedPoly3::one(),
            factors: vec![(poly("2-x"), 1)],
        };
        assert_eq!(expand_rational(&bad, 2).unwrap_err(), Error::NonUnitFactor);
    }

    #[test]
    fn numerator_data() {
        let f = f_numerator();
        assert_eq!(f.coefficient([0, 0, 0]), b(13));
        assert_eq!(f.coefficient([0, 5, 0]), b(-112));
        assert_eq!(f.mirror_xz(), f);
        assert_eq!(f.total_degree(), Some(10));
        assert_eq!(f.len(), 166);
        assert_ne!(f_numerator_verbatim(), f);
    }

    #[test]
    fn expansion_matches_transcription() {
        let printed = expansion_terms();
        assert_eq!(printed.len(), 56);
        let fx = expand_rational(&two_cycle_gf(), 11).unwrap();
        assert_eq!(fx.len(), 56);
        for (e, c) in printed {
            assert_eq!(fx.coefficient(e), c, "{e:?}");
        }
        assert_eq!(fx.coefficient([2, 2, 2]), b(208));
        assert_eq!(fx.coefficient([1, 2, 2]), b(0));
        assert_eq!(fx.coefficient([7, 2, 2]), b(45056));
    }

    #[test]
    fn expansion_matches_direct_counts() {
        let fx = expand_rational(&two_cycle_gf(), 14).unwrap();
        let counted = counted_series(14).unwrap();
        assert_eq!(fx, counted);
        assert!(fx.terms().iter().all(|(_, c)| !c.is_negative()));
        assert_eq!(fx.mirror_xz(), fx);
    }

    #[test]
    fn numerator_recovery() {
        let rec = recover_numerator(18).unwrap();
        assert_eq!(rec, f_numerator());
        assert_eq!(rec.coefficient([0, 0, 0]), b(13));
        assert_eq!(rec.mirror_xz(), rec);
        assert!(diff(&rec, &f_numerator()).is_empty());
        assert!(!diff(&f_numerator_verbatim(), &rec).is_empty());
        assert!(recover_numerator(17).is_err());
    }

    #[test]
    fn csv_layout() {
        let p = poly("3x^2y^2z^2 + 5x^2y^2z^3 + 7x^3y^2z^2 + x^2y^3z^2");
        assert_eq!(
            to_csv(&p),
            "a1,a2,a3,coefficient\n2,2,2,3\n2,2,3,5\n2,3,2,1\n3,2,2,7\n"
        );
    }

    fn small_poly() -> impl Strategy<Value = SignedPoly3> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|ts| {
            SignedPoly3::from_terms(ts.into_iter().map(|((a, b2, c), k)| ([a, b2, c], b(k))))
        })
    }

    fn unit_factor() -> impl Strategy<Value = SignedPoly3> {
        small_poly().prop_map(|p| {
            let tail = SignedPoly3::from_terms(
                p.terms()
                    .into_iter()
                    .filter(|(e, _)| degree(e) > 0)
                    .map(|(e, c)| (e, c.clone())),
            );
            SignedPoly3::one().add(&tail)
        })
    }

    proptest! {
        #[test]
        fn expansion_is_linear(p in small_poly(), q in small_poly(), g in unit_factor(), d in 0u32..=6) {
            let e = |n: SignedPoly3| expand_rational(&RationalGF { numerator: n, factors: vec![(g.clone(), 2)] }, d).unwrap();
            let lhs = e(p.add(&q.scale(&b(3))));
            let rhs = e(p.clone()).add(&e(q.clone()).scale(&b(3)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn expansion_is_multiplicative(p in small_poly(), g in unit_factor(), h in unit_factor(), d in 0u32..=6) {
            let both = expand_rational(&RationalGF { numerator: p.clone(), factors: vec![(g.clone(), 1), (h.clone(), 1)] }, d).unwrap();
            let product = expand_rational(&RationalGF { numerator: p.clone(), factors: vec![(g.mul(&h), 1)] }, d).unwrap();
            prop_assert_eq!(&both, &product);
            // multiplying back recovers the numerator
            prop_assert_eq!(both.mul(&g).mul(&h).truncated(d), p.truncated(d));
        }
    }
}
