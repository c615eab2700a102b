//! Bracket supports on `CP^{2m-1} = Sp(m)/Sp(m-1)U(1)`.
//!
//! With `e`-coordinates on `C_m`, the roots spanning `m` are
//! `β_i = e_1 - e_{i+1}` (`i < m`), `β_m = e_1 + e_m`,
//! `β_{m+j} = e_1 + e_{m-j}` (`1 <= j <= m-1`), so `β_{2m-1} = 2e_1 = μ`.
//! For each pair `k < l` the bracket `[U^a_{β_k}, U^a_{β_l}]` is predicted
//! to lie on the `U^0` of a listed set of roots; this checks the prediction
//! against the exact bracket table.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Root, Series};
use crate::threesym::{Auto3Kind, ThreeSymSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrcMismatch {
    pub k: usize,
    pub l: usize,
    pub a: u8,
    pub expected: Vec<String>,
    pub found: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BrcReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<BrcMismatch>,
}

impl BrcReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `α_i + ... + α_j` (1-based, `i <= j <= m`).
fn alpha(m: usize, i: usize, j: usize) -> Root {
    let mut v = vec![0; m];
    v[i - 1..j].iter_mut().for_each(|x| *x = 1);
    Root::new(v)
}

/// `e_i + e_j` (1-based, `i <= j <= m-1`).
fn tilde(m: usize, i: usize, j: usize) -> Root {
    let mut v = vec![0; m];
    for (k, x) in v.iter_mut().enumerate() {
        let k = k + 1;
        *x = if k < i {
            0
        } else if k < j {
            1
        } else if k < m {
            2
        } else {
            1
        };
    }
    Root::new(v)
}

fn beta(m: usize, k: usize) -> Root {
    if k <= m {
        alpha(m, 1, k)
    } else {
        tilde(m, 1, 2 * m - k)
    }
}

/// Predicted support of `[U^a_{β_k}, U^a_{β_l}]`, `1 <= k < l <= 2m-1`.
fn expected(m: usize, k: usize, l: usize) -> Vec<Root> {
    let b = |i| beta(m, i);
    let mu = 2 * m - 1;
    if l <= m {
        if (k, l) == (m - 1, m) {
            return vec![b(mu), alpha(m, m, m)];
        }
        return vec![alpha(m, k + 1, l)];
    }
    if k > m {
        let (i, j) = (k - m, l - m);
        if l == mu {
            return vec![b(m - i - 1)];
        }
        return vec![alpha(m, m - j, m - i - 1)];
    }
    // k <= m < l
    let i = k;
    if l == mu {
        return match i {
            _ if i == m => vec![b(m - 1)],
            _ if i == m - 1 => vec![b(m)],
            _ => vec![b(2 * m - i - 1)],
        };
    }
    let j = l - m;
    if i == m {
        return vec![alpha(m, m - j, m - 1)];
    }
    if i == m - 1 {
        return vec![alpha(m, m - j, m)];
    }
    if j == m - i - 1 {
        return vec![b(mu), tilde(m, i + 1, i + 1)];
    }
    if m - j <= i {
        vec![tilde(m, m - j, i + 1)]
    } else {
        vec![tilde(m, i + 1, m - j)]
    }
}

/// Checks every predicted support on a `C_m`, A3III at node 1 space.
pub fn verify_brc_support(space: &ThreeSymSpace) -> Result<BrcReport> {
    let alg = space.algebra();
    let rs = alg.root_system();
    let ty = rs.dynkin_type();
    let spec = space.spec();
    if ty.series() != Series::C || spec.kind != Auto3Kind::A3III || spec.i != 0 {
        return Err(Error::InvalidArgument(format!(
            "support check needs a C_m space with A3III at node 1, got {ty} {spec}"
        )));
    }
    let m = ty.rank();
    let index = |r: &Root| -> Result<usize> {
        rs.positive_index(r)
            .ok_or_else(|| Error::Internal(format!("{r} is not a positive root")))
    };
    let mut rep = BrcReport::default();
    for k in 1..2 * m {
        for l in k + 1..2 * m {
            let (bk, bl) = (index(&beta(m, k))?, index(&beta(m, l))?);
            let want: BTreeSet<usize> = expected(m, k, l)
                .iter()
                .map(|r| index(r).map(|p| alg.u_index(p, 0)))
                .collect::<Result<_>>()?;
            for a in 0..2u8 {
                rep.pairs_checked += 1;
                let got: BTreeSet<usize> = alg
                    .basis_bracket(alg.u_index(bk, a), alg.u_index(bl, a))
                    .iter()
                    .map(|&(t, _)| t)
                    .collect();
                if got != want {
                    let names = |s: &BTreeSet<usize>| s.iter().map(|&t| alg.label(t)).collect();
                    rep.mismatches.push(BrcMismatch { k, l, a, expected: names(&want), found: names(&got) });
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn beta_roots_span_m() {
        for m in 2..=5usize {
            let s = presets::build(&format!("cp{}-sp", 2 * m - 1)).unwrap();
            let rs = s.algebra().root_system();
            let mut got: Vec<usize> = (1..2 * m).map(|k| rs.positive_index(&beta(m, k)).unwrap()).collect();
            got.sort();
            assert_eq!(got, s.m_roots());
            assert_eq!(&beta(m, 2 * m - 1), rs.maximal_root());
        }
    }

    #[test]
    fn supports_hold() {
        for m in 2..=5usize {
            let s = presets::build(&format!("cp{}-sp", 2 * m - 1)).unwrap();
            let rep = verify_brc_support(&s).unwrap();
            assert!(rep.ok(), "m = {m}: {:?}", rep.mismatches);
            assert_eq!(rep.pairs_checked, (2 * m - 1) * (2 * m - 2));
        }
    }

    #[test]
    fn wrong_space_rejected() {
        assert!(verify_brc_support(&presets::build("s6").unwrap()).is_err());
    }
}
