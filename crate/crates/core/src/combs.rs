//! Combs `C_{m,n,k}`: `m` paths of length `n` whose `k`-th vertices are
//! joined by a spine path. `k = 1, n = 2` gives combs and `k = 2, n = 3`
//! gives double combs.
//!
//! Teeth are rows `1..=m`, positions along a tooth are `1..=n`.

use num_traits::Zero;
use serde::Serialize;

use crate::bigmath::{
    binomial, count_to_rational, double_factorial, factorial, multinomial, pow2, rational,
    rational_to_count, Count, Rational,
};
use crate::error::{Error, Result};

fn check(m: u64, n: u64, k: u64) -> Result<()> {
    if m < 1 || n < 2 || k < 1 || k > n {
        return Err(Error::OutOfRange(format!(
            "comb needs m >= 1, n >= 2, 1 <= k <= n, got m={m} n={n} k={k}"
        )));
    }
    Ok(())
}

/// Product form without the `n >= 2` check; the EGF identity also holds at `n = 1`.
fn spine_product(m: u64, n: u64, k: u64) -> Count {
    let (n, k) = (n as i64, k as i64);
    let mut acc = binomial(n - 1, k - 1).pow(m as u32);
    for l in 1..m as i64 {
        acc *= binomial((l + 1) * n - 1, n - 1);
    }
    acc
}

/// Labelings of `C_{m,n,k}` starting at the spine end `(1,k)`; `t_spine(0,n,k) = 1`.
pub fn t_spine(m: u64, n: u64, k: u64) -> Result<Count> {
    if n < 2 || k < 1 || k > n {
        return Err(Error::OutOfRange(format!(
            "t_spine needs n >= 2, 1 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(spine_product(m, n, k))
}

/// `A_{j,k',y}`: the walk reaches the spine vertex of tooth `j` at label `y`.
pub fn a_term(m: u64, n: u64, j: u64, k: u64, y: u64) -> Result<Count> {
    check(m, n, k)?;
    if j < 1 || j > m || y < 1 || y > n {
        return Err(Error::OutOfRange(format!(
            "A term needs 1 <= j <= m, 1 <= y <= n, got j={j} y={y}"
        )));
    }
    let (mi, ni, ji, yi) = (m as i64, n as i64, j as i64, y as i64);
    let trinomial = multinomial(&[(ji - 1) * ni, ni - yi, (mi - ji) * ni])?;
    Ok(trinomial
        * binomial(ni - yi, ni - k as i64)
        * spine_product(j - 1, n, k)
        * spine_product(m - j, n, k))
}

/// Labelings of `C_{m,n,k}` that start at `(j, s)`.
pub fn count_from_vertex(m: u64, n: u64, k: u64, j: u64, s: u64) -> Result<Count> {
    check(m, n, k)?;
    if j < 1 || j > m || s < 1 || s > n {
        return Err(Error::OutOfRange(format!(
            "start vertex ({j},{s}) outside C_{{{m},{n},{k}}}"
        )));
    }
    // reversing every tooth maps (j, s) on C_{m,n,k} to (j, n-s+1) on C_{m,n,n-k+1}
    let (k, s) = if s > k {
        (n - k + 1, n - s + 1)
    } else {
        (k, s)
    };
    if s == k {
        return a_term(m, n, j, k, 1);
    }
    let mut total = Count::zero();
    for y in (k - s + 1)..=k {
        total += binomial(y as i64 - 2, (k - s) as i64 - 1) * a_term(m, n, j, k, y)?;
    }
    Ok(total)
}

/// `(2/n! * C(n-1,k-1))^e`
fn spine_ratio_pow(n: u64, k: u64, e: u64) -> Rational {
    let base = rational(
        &(binomial(n as i64 - 1, k as i64 - 1) * 2u32),
        &factorial(n),
    );
    num_traits::pow(base, e as usize)
}

/// `L(C_{m,n,k})` from the closed form, evaluated exactly.
pub fn count_comb(m: u64, n: u64, k: u64) -> Result<Count> {
    check(m, n, k)?;
    let mn = m * n;
    let two_pow = |y: u64| pow2(y as i64 - 2).expect("y >= 2");
    let mut left = Rational::zero();
    for y in 2..=k {
        left += rational(&(two_pow(y) * factorial(mn - y)), &factorial(k - y));
    }
    left /= count_to_rational(&factorial(n - k));
    let mut right = Rational::zero();
    for y in 2..=(n - k + 1) {
        right += rational(&(two_pow(y) * factorial(mn - y)), &factorial(n - k + 1 - y));
    }
    right /= count_to_rational(&factorial(k - 1));
    let middle = rational(&factorial(mn - 1), &(factorial(n - k) * factorial(k - 1)));
    let pre = spine_ratio_pow(n, k, m - 1) / count_to_rational(&factorial(m - 1));
    rational_to_count(&(pre * (left + right + middle)), "comb closed form")
}

/// The same count as a sum over start vertices.
pub fn count_comb_by_starts(m: u64, n: u64, k: u64) -> Result<Count> {
    check(m, n, k)?;
    let mut total = Count::zero();
    for j in 1..=m {
        for s in 1..=n {
            total += count_from_vertex(m, n, k, j, s)?;
        }
    }
    Ok(total)
}

/// Closed rational value of `Σ_j A_{j,k,y}`:
/// `(mn-y)! / ((n-k)! (k-y)! (m-1)!) * (2/n! C(n-1,k-1))^{m-1}`, for `y <= k`.
pub fn a_sum_closed(m: u64, n: u64, k: u64, y: u64) -> Result<Rational> {
    check(m, n, k)?;
    if y < 1 || y > k {
        return Err(Error::OutOfRange(format!(
            "need 1 <= y <= k, got y={y} k={k}"
        )));
    }
    let den = factorial(n - k) * factorial(k - y) * factorial(m - 1);
    Ok(rational(&factorial(m * n - y), &den) * spine_ratio_pow(n, k, m - 1))
}

/// Checks `Σ_j t_j/(jn)! * t_{m-j}/((m-j)n)! = (1/m!) (2/n! C(n-1,k-1))^m`
/// where `t_j = t_spine(j,n,k)`.
pub fn lemma_pac_check(m: u64, n: u64, k: u64) -> bool {
    if n < 1 || k < 1 || k > n {
        return false;
    }
    let term = |j: u64| rational(&spine_product(j, n, k), &factorial(j * n));
    let lhs: Rational = (0..=m).map(|j| term(j) * term(m - j)).sum();
    let rhs = spine_ratio_pow(n, k, m) / count_to_rational(&factorial(m));
    lhs == rhs
}

/// A printed corollary value set beside the theorem value it should equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub m: u64,
    /// Exact value of the printed expression; may be non-integral.
    #[serde(serialize_with = "ser_rational")]
    pub printed: Rational,
    #[serde(serialize_with = "ser_count")]
    pub theorem: Count,
    pub agrees: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_count<S: serde::Serializer>(c: &Count, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn report(m: u64, printed: Rational, theorem: Count) -> CorollaryReport {
    let agrees = printed == count_to_rational(&theorem);
    CorollaryReport {
        m,
        printed,
        theorem,
        agrees,
    }
}

/// Printed comb expression `2^{m-1} m (m-1)!!` against `count_comb(m,2,1)`.
pub fn corollary_comb(m: u64) -> Result<CorollaryReport> {
    check(m, 2, 1)?;
    let printed = pow2(m as i64 - 1)? * m * double_factorial(m - 1);
    Ok(report(m, count_to_rational(&printed), count_comb(m, 2, 1)?))
}

/// Printed double-comb expression `2^{m-1} (3m+1)! / (3^m (3m-1) m!)` against `count_comb(m,3,2)`.
pub fn corollary_double_comb(m: u64) -> Result<CorollaryReport> {
    check(m, 3, 2)?;
    let num = pow2(m as i64 - 1)? * factorial(3 * m + 1);
    let den = Count::from(3u32).pow(m as u32) * (3 * m - 1) * factorial(m);
    Ok(report(m, rational(&num, &den), count_comb(m, 3, 2)?))
}

/// `L(C_{m,2,1})` for `m = 1..=count`, the theorem-backed comb row.
pub fn comb_row(count: usize) -> Result<Vec<Count>> {
    (1..=count as u64).map(|m| count_comb(m, 2, 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_family, Coord, FamilySpec};
    use crate::oracle::{count_labelings, count_labelings_from};

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn comb_graph(m: u64, n: u64, k: u64) -> crate::graphs::Graph {
        build_family(FamilySpec::Comb {
            m: m as usize,
            n: n as usize,
            k: k as usize,
        })
        .unwrap()
    }

    #[test]
    fn spine_examples() {
        for n in 2..7 {
            for k in 1..=n {
                assert_eq!(
                    t_spine(1, n, k).unwrap(),
                    binomial(n as i64 - 1, k as i64 - 1)
                );
            }
        }
        assert_eq!(t_spine(0, 4, 2).unwrap(), c(1));
        assert_eq!(t_spine(2, 2, 1).unwrap(), c(3));
        assert!(t_spine(2, 1, 1).is_err());
        assert!(t_spine(2, 3, 4).is_err());
    }

    #[test]
    fn spine_matches_oracle() {
        for m in 1..=10u64 {
            for n in 2..=10u64 {
                if m * n > 20 {
                    continue;
                }
                for k in 1..=n {
                    let g = comb_graph(m, n, k);
                    let v = g
                        .vertex_at(Coord::Cell {
                            row: 1,
                            col: k as usize,
                        })
                        .unwrap();
                    assert_eq!(
                        t_spine(m, n, k).unwrap(),
                        count_labelings_from(&g, v).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_comb(2, 2, 1).unwrap(), c(8));
        assert_eq!(count_comb(2, 3, 2).unwrap(), c(112));
        assert_eq!(count_comb(1, 2, 1).unwrap(), c(2));
        let row: Vec<Count> = [2u64, 8, 72, 960, 16800, 362880].map(c).to_vec();
        assert_eq!(comb_row(6).unwrap(), row);
        assert!(count_comb(0, 2, 1).is_err());
        assert!(count_comb(2, 2, 3).is_err());
    }

    #[test]
    fn per_start_examples() {
        assert_eq!(count_from_vertex(2, 2, 1, 1, 1).unwrap(), c(3));
        assert_eq!(count_from_vertex(2, 2, 1, 1, 2).unwrap(), c(1));
        assert!(count_from_vertex(2, 2, 1, 3, 1).is_err());
        assert!(count_from_vertex(2, 2, 1, 1, 3).is_err());
        // j = 1 collapses the (j-1)n part
        assert_eq!(a_term(2, 2, 1, 1, 1).unwrap(), c(3));
    }

    #[test]
    fn closed_form_matches_oracle_and_starts() {
        for m in 1..=10u64 {
            for n in 2..=20u64 {
                if m * n > 20 {
                    continue;
                }
                for k in 1..=n {
                    let g = comb_graph(m, n, k);
                    let closed = count_comb(m, n, k).unwrap();
                    assert_eq!(closed, count_labelings(&g).unwrap(), "C_{m},{n},{k}");
                    assert_eq!(closed, count_comb_by_starts(m, n, k).unwrap());
                    assert_eq!(closed, count_comb(m, n, n - k + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn per_start_matches_oracle() {
        for (m, n) in [(2u64, 3u64), (3, 3), (2, 5), (3, 4), (4, 3)] {
            for k in 1..=n {
                let g = comb_graph(m, n, k);
                for j in 1..=m {
                    for s in 1..=n {
                        let v = g
                            .vertex_at(Coord::Cell {
                                row: j as usize,
                                col: s as usize,
                            })
                            .unwrap();
                        assert_eq!(
                            count_from_vertex(m, n, k, j, s).unwrap(),
                            count_labelings_from(&g, v).unwrap(),
                            "C_{m},{n},{k} from ({j},{s})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn a_sum_matches_closed_rational() {
        for m in 1..=4u64 {
            for n in 2..=6u64 {
                for k in 1..=n {
                    for y in 1..=k {
                        let sum: Count = (1..=m).map(|j| a_term(m, n, j, k, y).unwrap()).sum();
                        assert_eq!(
                            count_to_rational(&sum),
                            a_sum_closed(m, n, k, y).unwrap(),
                            "m={m} n={n} k={k} y={y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_identity() {
        for m in 0..=8u64 {
            for n in 1..=6u64 {
                for k in 1..=n {
                    assert!(lemma_pac_check(m, n, k), "m={m} n={n} k={k}");
                }
            }
        }
        assert!(!lemma_pac_check(1, 3, 4));
    }

    #[test]
    fn corollaries_reported() {
        let d = corollary_double_comb(2).unwrap();
        assert_eq!(d.printed, count_to_rational(&c(112)));
        assert_eq!(d.theorem, c(112));
        assert!(d.agrees);
        for m in 1..=6 {
            assert!(corollary_double_comb(m).unwrap().agrees, "m={m}");
        }
        let expected = [(1u64, 1u64, 2u64), (2, 4, 8), (3, 24, 72)];
        for (m, printed, theorem) in expected {
            let r = corollary_comb(m).unwrap();
            assert_eq!(r.printed, count_to_rational(&c(printed)));
            assert_eq!(r.theorem, c(theorem));
            assert!(!r.agrees);
        }
    }
}
