//! Exact rational helpers: the scalar type, `p/q` formatting, and a small
//! dense linear solver over the rationals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::InvalidArgument(format!("expected a rational 'p/q' or integer, got '{s}'"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Solves `a x = b` exactly by Gauss-Jordan elimination. `a` must be square
/// and nonsingular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("solve: dimension mismatch".into()));
    }
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::InvalidArgument("solve: singular matrix".into()))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let delta = f * m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n]).collect())
}

/// Exact determinant by fraction-preserving elimination.
pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            d = -d;
        }
        d *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let delta = f * m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    d
}

/// Sylvester's criterion on the leading principal minors.
pub fn is_positive_definite(a: &[Vec<Q>]) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Vec<Vec<Q>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor).is_positive()
    })
}

/// True when `x` is an integer.
pub fn is_integral(x: &Q) -> bool {
    x.denom() == &1
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}
