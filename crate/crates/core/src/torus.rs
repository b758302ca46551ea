//! The torus `C_2 x C_n`: two `n`-cycles joined by rungs.
//!
//! `a(n,k)` counts completions once `k` consecutive vertices of one row are
//! labeled. `b(n,s,t)` counts completions once `s+1` consecutive vertices
//! of one row and `t+1` of the other are labeled, overlapping in exactly one
//! column, so a single rung joins the two runs. Both satisfy recurrences in
//! `n` (evaluated bottom-up from the stated initial values) and have
//! piecewise closed forms. `L(C_2 x C_n) = 2n a(n,1)`.

use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::bigmath::{binomial, factorial, rational, rational_to_count, Count};
use crate::error::{Error, Result};
use crate::graphs::{build_family, Coord, FamilySpec, Graph};

fn check_a(n: u64, k: u64) -> Result<()> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::OutOfRange(format!(
            "a needs 1 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(())
}

fn check_b(n: u64, s: u64, t: u64) -> Result<()> {
    if n < 1 || s >= n || t >= n {
        return Err(Error::OutOfRange(format!(
            "b needs 0 <= s, t <= n-1, got n={n} s={s} t={t}"
        )));
    }
    Ok(())
}

/// All `a(n,·)` and `b(n,·,·)` for one `n`.
#[derive(Debug, Clone)]
struct Layer {
    /// `a[k]` for `1 <= k <= n`; `a[0]` unused
    a: Vec<Count>,
    /// `b[s][t]` for `0 <= s, t <= n-1`
    b: Vec<Vec<Count>>,
}

impl Layer {
    fn initial(n: usize) -> Layer {
        let c = |v: u32| Count::from(v);
        match n {
            1 => Layer {
                a: vec![c(0), c(1)],
                b: vec![vec![c(0)]],
            },
            2 => Layer {
                a: vec![c(0), c(4), c(2)],
                b: vec![vec![c(2), c(1)], vec![c(1), c(0)]],
            },
            _ => unreachable!("initial layers exist for n = 1, 2"),
        }
    }
}

/// Layers indexed by `n`; entry 0 is a placeholder.
fn layers() -> &'static RwLock<Vec<Layer>> {
    static LAYERS: OnceLock<RwLock<Vec<Layer>>> = OnceLock::new();
    LAYERS.get_or_init(|| {
        RwLock::new(vec![
            Layer {
                a: vec![],
                b: vec![],
            },
            Layer::initial(1),
            Layer::initial(2),
        ])
    })
}

/// `C(2n - (d+3), q-1) (q-1)!`, the weight of the `q`-th lower-order term.
fn weight(top: i64, q: usize) -> Count {
    binomial(top, q as i64 - 1) * factorial(q as u64 - 1)
}

fn next_layer(done: &[Layer]) -> Layer {
    let n = done.len();
    let ni = n as i64;
    let b_at = |m: usize, s: usize, t: usize| -> Count { done[m].b[s][t].clone() };
    let mut b = vec![vec![Count::zero(); n]; n];
    // b(n,s,t) needs only larger s+t at the same n, so sweep s+t downwards
    for d in (0..n).rev() {
        for s in 0..=d {
            let t = d - s;
            if s >= n || t >= n {
                continue;
            }
            let top = 2 * ni - (d as i64 + 3);
            let value = if d == n - 1 {
                factorial(n as u64 - 1)
            } else if s == 0 && t == 0 {
                b[1][0].clone() * 4u32
            } else if s == 0 && t == n - 2 {
                let mut v = b[1][n - 2].clone() + &b[0][n - 1];
                for q in 1..=n - 2 {
                    v += weight(ni - 1, q) * b_at(n - q, 0, n - 2 - q);
                }
                v
            } else if s == 0 {
                let mut v = done[n - 1].a[t + 1].clone() + &b[1][t] + &b[0][t + 1];
                for q in 1..=t {
                    v += weight(top, q) * b_at(n - q, 0, t - q);
                }
                v
            } else if t == 0 && s == n - 2 {
                let mut v = b[n - 2][1].clone() + &b[n - 1][0];
                for q in 1..=n - 2 {
                    v += weight(ni - 1, q) * b_at(n - q, n - 2 - q, 0);
                }
                v
            } else if t == 0 {
                let mut v = done[n - 1].a[s + 1].clone() + &b[s][1] + &b[s + 1][0];
                for q in 1..=s {
                    v += weight(top, q) * b_at(n - q, s - q, 0);
                }
                v
            } else {
                let mut v = b[s + 1][t].clone() + &b[s][t + 1];
                for q in 1..=s {
                    v += weight(top, q) * b_at(n - q, s - q, t);
                }
                for q in 1..=t {
                    v += weight(top, q) * b_at(n - q, s, t - q);
                }
                v
            };
            b[s][t] = value;
        }
    }
    let mut a = vec![Count::zero(); n + 1];
    a[n] = factorial(n as u64);
    for k in (1..n).rev() {
        a[k] = if k == 1 {
            a[2].clone() * 2u32 + &b[0][0]
        } else if k <= n - 2 {
            a[k + 1].clone() * 2u32
                + done[n - 1].a[k - 1].clone() * (k as u64 - 2)
                + b[k - 1][0].clone() * 2u32
        } else {
            a[k + 1].clone()
                + done[n - 1].a[k - 1].clone() * (n as u64 - 3)
                + b[k - 1][0].clone() * 2u32
        };
    }
    Layer { a, b }
}

fn with_layer<T>(n: u64, f: impl FnOnce(&Layer) -> T) -> T {
    let n = n as usize;
    {
        let guard = layers().read().expect("torus cache poisoned");
        if n < guard.len() {
            return f(&guard[n]);
        }
    }
    let mut guard = layers().write().expect("torus cache poisoned");
    while guard.len() <= n {
        let layer = next_layer(&guard);
        guard.push(layer);
    }
    f(&guard[n])
}

/// `a(n,k)` from the recurrences.
pub fn a_rec(n: u64, k: u64) -> Result<Count> {
    check_a(n, k)?;
    Ok(with_layer(n, |l| l.a[k as usize].clone()))
}

/// `b(n,s,t)` from the recurrences; zero when `s + t >= n`.
pub fn b_rec(n: u64, s: u64, t: u64) -> Result<Count> {
    check_b(n, s, t)?;
    if s + t >= n {
        return Ok(Count::zero());
    }
    Ok(with_layer(n, |l| l.b[s as usize][t as usize].clone()))
}

fn check_closed(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "closed forms need n >= 2, got n={n}"
        )));
    }
    Ok(())
}

/// `a(n,k)` from the piecewise closed form.
pub fn a_closed(n: u64, k: u64) -> Result<Count> {
    check_a(n, k)?;
    check_closed(n)?;
    if k == n {
        return Ok(factorial(n));
    }
    let r = if k == 1 {
        rational(
            &(factorial(2 * n - 2) * (n + 2)),
            &(factorial(n - 2) * 2u32),
        )
    } else {
        let c = binomial((n - k + 2) as i64, 2);
        rational(&(c * factorial(2 * n - k)), &(factorial(n - k + 1) * 2u32))
    };
    rational_to_count(&r, "torus a closed form")
}

/// `b(n,s,t)` from the piecewise closed form; symmetric in `s` and `t`.
pub fn b_closed(n: u64, s: u64, t: u64) -> Result<Count> {
    check_b(n, s, t)?;
    check_closed(n)?;
    if s + t >= n {
        return Ok(Count::zero());
    }
    let (s, t) = if s > t { (t, s) } else { (s, t) };
    if s + t == n - 1 {
        return Ok(factorial(n - 1));
    }
    let r = if s == 0 && t == 0 {
        rational(&factorial(2 * n - 2), &factorial(n - 2))
    } else if s == 0 {
        rational(
            &(factorial(2 * n - 2 - t) * (n - t)),
            &(factorial(n - 1 - t) * 2u32),
        )
    } else {
        let d = n - s - t;
        rational(
            &(factorial(2 * n - 2 - s - t) * (d * (d + 1) + 2)),
            &(factorial(d) * 4u32),
        )
    };
    rational_to_count(&r, "torus b closed form")
}

/// `L(C_2 x C_n) = n (n+2) (2n-2)! / (n-2)!`, and 2 for the single rung `n = 1`.
pub fn count_torus(n: u64) -> Result<Count> {
    match n {
        0 => Err(Error::OutOfRange("torus needs n >= 1".into())),
        1 => Ok(Count::from(2u32)),
        _ => rational_to_count(
            &rational(&(factorial(2 * n - 2) * (n * (n + 2))), &factorial(n - 2)),
            "torus closed form",
        ),
    }
}

/// `2n a(n,1)` from the recurrences.
pub fn count_torus_rec(n: u64) -> Result<Count> {
    Ok(a_rec(n, 1)? * (2 * n))
}

/// A labeled configuration behind `a` or `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusShape {
    /// `k` consecutive vertices of row 1.
    A { k: u64 },
    /// Row 1 columns `1..=s+1`, row 2 columns `s+1..=s+t+1`.
    B { s: u64, t: u64 },
}

/// The torus together with the labeled set whose completions `shape` counts.
pub fn torus_partial_state_graph(n: u64, shape: TorusShape) -> Result<(Graph, Vec<usize>)> {
    let g = build_family(FamilySpec::Torus { n: n as usize })?;
    let cell = |row: u64, col: u64| {
        g.vertex_at(Coord::Cell {
            row: row as usize,
            col: col as usize,
        })
    };
    let labeled = match shape {
        TorusShape::A { k } => {
            check_a(n, k)?;
            (1..=k).map(|c| cell(1, c)).collect::<Result<Vec<_>>>()?
        }
        TorusShape::B { s, t } => {
            check_b(n, s, t)?;
            if s + t >= n {
                return Err(Error::OutOfRange(format!(
                    "b shape needs s + t <= n-1, got n={n} s={s} t={t}"
                )));
            }
            let top = (1..=s + 1).map(|c| cell(1, c));
            let bottom = (s + 1..=s + t + 1).map(|c| cell(2, c));
            top.chain(bottom).collect::<Result<Vec<_>>>()?
        }
    };
    Ok((g, labeled))
}
