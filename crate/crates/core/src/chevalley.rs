//! Structure constants.
//!
//! Two layers: an integer Chevalley table (`[e_r, e_s] = N_rs e_{r+s}` with
//! `N_rs = +-(p+1)`), whose signs are fixed by the extraspecial-pair method,
//! and the Weyl-basis table normalized by `[E_a, E_-a] = H_a`,
//! `B(E_a, E_-a) = 1`, stored as `sign * sqrt(nsq)` with
//! `nsq = q(1-p)/2 <a,a>`. The rescaling `E_a = sqrt(<a,a>/2) e_a` is
//! positive, so both layers share signs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, Q};
use crate::rootsys::{RootId, RootSystem};
use crate::surd::Surd;

/// Integer structure constants of a Chevalley basis.
#[derive(Clone, Debug)]
pub struct ChevalleyTable {
    roots: usize,
    table: Vec<i64>,
    extraspecial: Vec<Option<(RootId, RootId)>>,
}

impl ChevalleyTable {
    /// Builds the table with sign `+1` on every extraspecial pair.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_extraspecial_signs(rs, |_| 1)
    }

    /// Builds the table with `sign(k)` on the extraspecial pair of positive
    /// root `k`. Every choice yields a valid Lie algebra.
    pub fn with_extraspecial_signs(rs: &RootSystem, sign: impl Fn(usize) -> i8) -> Result<Self> {
        let n_pos = rs.num_positive();
        let roots = rs.num_roots();
        let mut b = Builder {
            rs,
            roots,
            table: vec![0; roots * roots],
        };
        let mut extraspecial = vec![None; n_pos];

        for xi in 0..n_pos {
            let xi_root = rs.root(xi);
            // decompositions xi = a + b with a < b, ids ascending
            let mut pairs: Vec<(RootId, RootId)> = Vec::new();
            for a in 0..xi {
                let rest = xi_root.sub(&rs.root(a));
                if let Some(bid) = rs.positive_index(&rest) {
                    if a < bid {
                        pairs.push((a, bid));
                    }
                }
            }
            let Some(&(g, d)) = pairs.first() else {
                continue;
            };
            extraspecial[xi] = Some((g, d));
            let s = sign(xi).signum() as i64;
            if s == 0 {
                return Err(Error::InvalidArgument("extraspecial sign must be +-1".into()));
            }
            let ngd = s * (b.down_length(g, d) + 1);
            b.set(g, d, ngd);
            b.set(d, g, -ngd);
            for &(a, bb) in &pairs[1..] {
                let v = b.four_root(a, bb, g, d)?;
                b.set(a, bb, v);
                b.set(bb, a, -v);
            }
        }

        // remaining pairs with at least one negative root
        for r in 0..roots {
            for s in 0..roots {
                if r < n_pos && s < n_pos {
                    continue;
                }
                let sum = rs.root(r).add(&rs.root(s));
                if sum.is_zero() || !rs.is_root(&sum) {
                    continue;
                }
                let v = b.resolve(r, s)?;
                b.table[r * roots + s] = v;
            }
        }

        // magnitudes must be p + 1 everywhere
        for r in 0..roots {
            for s in 0..roots {
                let v = b.table[r * roots + s];
                let sum = rs.root(r).add(&rs.root(s));
                let defined = !sum.is_zero() && rs.is_root(&sum);
                if defined != (v != 0) || (defined && v.abs() != b.down_length(r, s) + 1) {
                    return Err(Error::Internal(format!(
                        "Chevalley constant N({}, {}) = {v} has the wrong magnitude",
                        rs.root(r),
                        rs.root(s)
                    )));
                }
            }
        }

        Ok(Self {
            roots,
            table: b.table,
            extraspecial,
        })
    }

    /// `N_rs`, zero when `r + s` is not a root.
    pub fn get(&self, r: RootId, s: RootId) -> i64 {
        self.table[r * self.roots + s]
    }

    /// Extraspecial pair of positive root `k` (none for simple roots).
    pub fn extraspecial(&self, k: usize) -> Option<(RootId, RootId)> {
        self.extraspecial[k]
    }
}

struct Builder<'a> {
    rs: &'a RootSystem,
    roots: usize,
    table: Vec<i64>,
}

impl Builder<'_> {
    fn set(&mut self, r: RootId, s: RootId, v: i64) {
        self.table[r * self.roots + s] = v;
    }

    fn len2(&self, r: RootId) -> i64 {
        let root = self.rs.root(r);
        self.rs.inner0(&root, &root)
    }

    /// Largest `p` with `s - p r` a root.
    fn down_length(&self, r: RootId, s: RootId) -> i64 {
        let (r, s) = (self.rs.root(r), self.rs.root(s));
        let mut p = 0;
        while self.rs.is_root(&s.scaled_add(-(p + 1), &r)) {
            p += 1;
        }
        p as i64
    }

    fn id(&self, r: &crate::rootsys::Root) -> Option<RootId> {
        self.rs.id_of(r)
    }

    /// N for any pair whose sum is a root, reduced to positive pairs via
    /// `N_{r1,r2}/|r3|^2 = N_{r2,r3}/|r1|^2 = N_{r3,r1}/|r2|^2` for
    /// `r1 + r2 + r3 = 0`.
    fn resolve(&self, r: RootId, s: RootId) -> Result<i64> {
        let n_pos = self.rs.num_positive();
        let rr = self.rs.root(r);
        let sr = self.rs.root(s);
        let sum = rr.add(&sr);
        if sum.is_zero() || !self.rs.is_root(&sum) {
            return Ok(0);
        }
        match (r < n_pos, s < n_pos) {
            (true, true) => {
                let v = self.table[r * self.roots + s];
                if v == 0 {
                    return Err(Error::Internal(format!("positive pair ({rr}, {sr}) not yet fixed")));
                }
                Ok(v)
            }
            (false, false) => Ok(-self.resolve(self.rs.neg_id(r), self.rs.neg_id(s))?),
            (false, true) => Ok(-self.resolve(s, r)?),
            (true, false) => {
                let t = self.id(&sum.neg()).expect("root");
                let (num, den, v) = if t < n_pos {
                    (self.len2(t), self.len2(s), self.resolve(t, r)?)
                } else {
                    let ms = self.rs.neg_id(s);
                    let mt = self.rs.neg_id(t);
                    (-self.len2(t), self.len2(r), self.resolve(ms, mt)?)
                };
                let x = num * v;
                if x % den != 0 {
                    return Err(Error::Internal("non-integral Chevalley constant".into()));
                }
                Ok(x / den)
            }
        }
    }

    /// Four-root identity for `a + b = g + d`, `(g, d)` extraspecial.
    fn four_root(&self, a: RootId, b: RootId, g: RootId, d: RootId) -> Result<i64> {
        let rs = self.rs;
        let (ra, rb, rg) = (rs.root(a), rs.root(b), rs.root(g));
        let xi = ra.add(&rb);
        let xi_len = rs.inner0(&xi, &xi);
        let mut acc = Q::from_integer(0);
        // N_{b,-g} N_{a,-d} / |b - g|^2
        let bg = rb.sub(&rg);
        if rs.is_root(&bg) {
            let t1 = self.resolve(b, rs.neg_id(g))?;
            let t2 = self.resolve(a, rs.neg_id(d))?;
            acc += q(t1 * t2, rs.inner0(&bg, &bg));
        }
        // N_{-g,a} N_{b,-d} / |a - g|^2
        let ag = ra.sub(&rg);
        if rs.is_root(&ag) {
            let t1 = self.resolve(rs.neg_id(g), a)?;
            let t2 = self.resolve(b, rs.neg_id(d))?;
            acc += q(t1 * t2, rs.inner0(&ag, &ag));
        }
        let ngd = self.table[g * self.roots + d];
        let v = acc * qi(xi_len) / qi(ngd);
        if v.denom() != &1 {
            return Err(Error::Internal(format!("non-integral N({ra}, {rb})")));
        }
        Ok(*v.numer())
    }
}

/// Weyl-basis structure constants `N_{a,b} = sign * sqrt(nsq)`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    roots: usize,
    entries: Vec<Surd>,
    chevalley: ChevalleyTable,
}

impl StructureTable {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::from_chevalley(rs, ChevalleyTable::new(rs)?)
    }

    pub fn from_chevalley(rs: &RootSystem, chevalley: ChevalleyTable) -> Result<Self> {
        let roots = rs.num_roots();
        let mut entries = vec![Surd::zero(); roots * roots];
        for r in 0..roots {
            for s in 0..roots {
                let c = chevalley.get(r, s);
                if c == 0 {
                    continue;
                }
                let (ra, rb) = (rs.root(r), rs.root(s));
                let (p, qq) = rs.root_string(&ra, &rb)?;
                let nsq = q((qq * (1 - p)) as i64, 2) * rs.inner(&ra, &ra);
                entries[r * roots + s] = Surd::new(c.signum() as i8, nsq);
            }
        }
        Ok(Self {
            roots,
            entries,
            chevalley,
        })
    }

    /// `N_{r,s}`; zero when `r + s` is not a root.
    pub fn get(&self, r: RootId, s: RootId) -> Surd {
        self.entries[r * self.roots + s]
    }

    pub fn chevalley(&self) -> &ChevalleyTable {
        &self.chevalley
    }

    pub fn to_json(&self, rs: &RootSystem) -> Vec<StructureEntryJson> {
        let mut out = Vec::new();
        for r in 0..self.roots {
            for s in 0..self.roots {
                let e = self.get(r, s);
                if e.is_zero() {
                    continue;
                }
                out.push(StructureEntryJson {
                    a: rs.root(r).coords().to_vec(),
                    b: rs.root(s).coords().to_vec(),
                    sign: e.sign() as i32,
                    nsq: fmt_q(&e.square()),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureEntryJson {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub sign: i32,
    pub nsq: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub violations: usize,
}

/// Exhaustive Jacobi check on the integer Chevalley algebra: basis `h_i`
/// (simple coroots) and `e_r`, all coefficients integers.
pub fn verify_jacobi(table: &StructureTable, rs: &RootSystem) -> JacobiReport {
    let ch = ChevalleyAlgebra::new(rs, table.chevalley());
    let dim = ch.dim;
    let mut violations = 0;
    let mut triples = 0;
    let mut acc = vec![0i64; dim];
    for x in 0..dim {
        for y in x + 1..dim {
            let xy = ch.bracket(x, y);
            for z in y + 1..dim {
                triples += 1;
                acc.iter_mut().for_each(|v| *v = 0);
                let yz = ch.bracket(y, z);
                let zx = ch.bracket(z, x);
                for &(k, c) in &yz {
                    for (m, v) in ch.bracket(x, k) {
                        acc[m] += c * v;
                    }
                }
                for &(k, c) in &zx {
                    for (m, v) in ch.bracket(y, k) {
                        acc[m] += c * v;
                    }
                }
                for &(k, c) in &xy {
                    for (m, v) in ch.bracket(z, k) {
                        acc[m] += c * v;
                    }
                }
                if acc.iter().any(|&v| v != 0) {
                    violations += 1;
                }
            }
        }
    }
    JacobiReport {
        triples_checked: triples,
        violations,
    }
}

struct ChevalleyAlgebra<'a> {
    rs: &'a RootSystem,
    table: &'a ChevalleyTable,
    rank: usize,
    dim: usize,
}

impl<'a> ChevalleyAlgebra<'a> {
    fn new(rs: &'a RootSystem, table: &'a ChevalleyTable) -> Self {
        let rank = rs.rank();
        Self {
            rs,
            table,
            rank,
            dim: rank + rs.num_roots(),
        }
    }

    /// `<r, a_i^v>` for root id `r`.
    fn pairing(&self, r: RootId, i: usize) -> i64 {
        let root = self.rs.root(r);
        let c = self.rs.cartan();
        (0..self.rank).map(|j| root.coords()[j] as i64 * c[j][i] as i64).sum()
    }

    fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let l = self.rank;
        match (x < l, y < l) {
            (true, true) => vec![],
            (true, false) => vec![(y, self.pairing(y - l, x))],
            (false, true) => vec![(x, -self.pairing(x - l, y))],
            (false, false) => {
                let (r, s) = (x - l, y - l);
                if self.rs.neg_id(r) == s {
                    // h_r = sum_i n_i (|a_i|^2 / |r|^2) h_i
                    let root = self.rs.root(r);
                    let len = self.rs.inner0(&root, &root);
                    (0..l)
                        .filter(|&i| root.coords()[i] != 0)
                        .map(|i| {
                            let ai = self.rs.simple(i);
                            (i, root.coords()[i] as i64 * self.rs.inner0(ai, ai) / len)
                        })
                        .collect()
                } else {
                    let n = self.table.get(r, s);
                    if n == 0 {
                        vec![]
                    } else {
                        let sum = self.rs.root(r).add(&self.rs.root(s));
                        vec![(l + self.rs.id_of(&sum).expect("root"), n)]
                    }
                }
            }
        }
    }
}
