//! The compact real form `g = h + sum (R U^0_a + R U^1_a)` over the positive
//! roots, with `U^0_a = E_a - E_-a` and `U^1_a = i(E_a + E_-a)`.
//!
//! Basis order: `i H_{a_1} .. i H_{a_l}` first, then `U^0_a, U^1_a` for each
//! positive root in root-system order. Brackets of basis elements are stored
//! exactly as `sign * sqrt(rational)` coefficients.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use crate::chevalley::StructureTable;
use crate::error::Result;
use crate::rational::{fmt_q, frac, qi, to_f64, Q};
use crate::rootsys::{Root, RootSystem};
use crate::surd::Surd;

/// A basis element of the compact form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// `sqrt(-1) H_{a_i}`
    H(usize),
    /// `U^a` of positive root `root`
    U { root: usize, a: u8 },
}

/// Sparse exact element: coefficient `sign * sqrt(q)` per basis index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExactElement {
    terms: BTreeMap<usize, Surd>,
}

impl ExactElement {
    pub fn basis(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(i, Surd::one());
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Surd)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Surd {
        self.terms.get(&i).copied().unwrap_or_else(Surd::zero)
    }

    fn add_term(&mut self, i: usize, c: Surd) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let cur = self.coeff(i);
        let next = cur.checked_add(c)?;
        if next.is_zero() {
            self.terms.remove(&i);
        } else {
            self.terms.insert(i, next);
        }
        Ok(())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut v = vec![0.0; dim];
        for (&k, c) in &self.terms {
            v[k] = c.to_f64();
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct CompactAlgebra {
    rs: RootSystem,
    st: StructureTable,
    dim: usize,
    exact: Vec<Vec<(usize, Surd)>>,
    float: Vec<Vec<(usize, f64)>>,
    killing: Vec<Vec<Q>>,
}

impl CompactAlgebra {
    pub fn new(rs: RootSystem, st: StructureTable) -> Self {
        let rank = rs.rank();
        let n_pos = rs.num_positive();
        let dim = rank + 2 * n_pos;
        let mut exact = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                exact[x * dim + y] = basis_bracket(&rs, &st, rank, x, y);
            }
        }
        let float = exact
            .iter()
            .map(|terms| terms.iter().map(|&(k, c)| (k, c.to_f64())).collect())
            .collect();
        let mut killing = vec![vec![Q::zero(); dim]; dim];
        for i in 0..rank {
            for j in 0..rank {
                killing[i][j] = -rs.gram()[i][j];
            }
        }
        for k in rank..dim {
            killing[k][k] = qi(-2);
        }
        Self {
            rs,
            st,
            dim,
            exact,
            float,
            killing,
        }
    }

    /// Builds root system, structure constants and compact form for a type.
    pub fn from_type(ty: crate::rootsys::DynkinType) -> Result<Self> {
        let rs = RootSystem::new(ty)?;
        let st = StructureTable::new(&rs)?;
        Ok(Self::new(rs, st))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn structure(&self) -> &StructureTable {
        &self.st
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn u_index(&self, root: usize, a: u8) -> usize {
        self.rank() + 2 * root + a as usize
    }

    pub fn describe(&self, i: usize) -> Basis {
        let l = self.rank();
        if i < l {
            Basis::H(i)
        } else {
            Basis::U {
                root: (i - l) / 2,
                a: ((i - l) % 2) as u8,
            }
        }
    }

    pub fn label(&self, i: usize) -> String {
        match self.describe(i) {
            Basis::H(k) => format!("iH{}", k + 1),
            Basis::U { root, a } => format!("U{a}{}", self.rs.positive()[root]),
        }
    }

    /// Exact bracket of two basis elements.
    pub fn basis_bracket(&self, x: usize, y: usize) -> &[(usize, Surd)] {
        &self.exact[x * self.dim + y]
    }

    /// Exact bracket; fails if a coefficient would be a sum of unlike radicals.
    pub fn bracket_exact(&self, x: &ExactElement, y: &ExactElement) -> Result<ExactElement> {
        let mut out = ExactElement::default();
        for (i, ci) in x.terms() {
            for (j, cj) in y.terms() {
                for &(k, c) in self.basis_bracket(i, j) {
                    out.add_term(k, ci * cj * c)?;
                }
            }
        }
        Ok(out)
    }

    /// Floating-point bracket of coefficient vectors.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                let s = xi * yj;
                for &(k, c) in &self.float[i * self.dim + j] {
                    out[k] += s * c;
                }
            }
        }
        out
    }

    /// Killing form matrix on the basis (exact).
    pub fn killing_matrix(&self) -> &[Vec<Q>] {
        &self.killing
    }

    pub fn killing_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let l = self.rank();
        let mut acc = 0.0;
        for i in 0..l {
            for j in 0..l {
                acc += x[i] * y[j] * to_f64(&self.killing[i][j]);
            }
        }
        for k in l..self.dim {
            acc -= 2.0 * x[k] * y[k];
        }
        acc
    }

    /// The default metric `-B/2`.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        -0.5 * self.killing_form(x, y)
    }

    /// `a(H)` for `H = sum c_k H_{a_k}`.
    pub fn root_on(&self, h: &[Q], root: &Root) -> Q {
        let l = self.rank();
        let mut acc = Q::zero();
        for k in 0..l {
            acc += h[k] * self.rs.inner(root, self.rs.simple(k));
        }
        acc
    }

    /// `Ad(exp(2 pi t sqrt(-1) H))` as a matrix on the basis: a rotation by
    /// `2 pi t a(H)` on each `(U^0_a, U^1_a)` plane, identity on `h`.
    pub fn torus_adjoint(&self, h: &[Q], t: Q) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for (k, root) in self.rs.positive().iter().enumerate() {
            let turns = frac(&(t * self.root_on(h, root)));
            if turns.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * to_f64(&turns);
            let (s, c) = theta.sin_cos();
            let (u0, u1) = (self.u_index(k, 0), self.u_index(k, 1));
            m[(u0, u0)] = c;
            m[(u1, u0)] = s;
            m[(u0, u1)] = -s;
            m[(u1, u1)] = c;
        }
        m
    }

    pub fn bracket_table_json(&self) -> Vec<BracketEntryJson> {
        let mut out = Vec::new();
        for x in 0..self.dim {
            for y in x + 1..self.dim {
                for &(k, c) in self.basis_bracket(x, y) {
                    out.push(BracketEntryJson {
                        x,
                        y,
                        k,
                        sign: c.sign() as i32,
                        sq: fmt_q(&c.square()),
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketEntryJson {
    pub x: usize,
    pub y: usize,
    pub k: usize,
    pub sign: i32,
    pub sq: String,
}

/// Index of `U^c_g` for any nonzero root `g`, with the sign from
/// `U^0_{-g} = -U^0_g`, `U^1_{-g} = U^1_g`.
fn u_of(rs: &RootSystem, rank: usize, g: &Root, c: u8) -> (usize, i8) {
    let (pos, sign) = if g.is_positive() { (g.clone(), 1) } else { (g.neg(), if c == 0 { -1 } else { 1 }) };
    let k = rs.positive_index(&pos).expect("positive root");
    (rank + 2 * k + c as usize, sign)
}

fn basis_bracket(rs: &RootSystem, st: &StructureTable, rank: usize, x: usize, y: usize) -> Vec<(usize, Surd)> {
    let n_pos = rs.num_positive();
    let desc = |i: usize| {
        if i < rank {
            Basis::H(i)
        } else {
            Basis::U {
                root: (i - rank) / 2,
                a: ((i - rank) % 2) as u8,
            }
        }
    };
    match (desc(x), desc(y)) {
        (Basis::H(_), Basis::H(_)) => vec![],
        (Basis::U { root, a }, Basis::H(i)) => {
            // [U^a_r, iH_b] = (-1)^(a+1) <r, b> U^(a+1)_r
            let alpha = &rs.positive()[root];
            let c = rs.inner(alpha, rs.simple(i)) * qi(if a == 0 { -1 } else { 1 });
            if c.is_zero() {
                vec![]
            } else {
                vec![(rank + 2 * root + (1 - a as usize), Surd::from_rational(c))]
            }
        }
        (Basis::H(_), Basis::U { .. }) => basis_bracket(rs, st, rank, y, x)
            .into_iter()
            .map(|(k, c)| (k, -c))
            .collect(),
        (Basis::U { root: r1, a }, Basis::U { root: r2, a: b }) if r1 == r2 => {
            if a == b {
                return vec![];
            }
            // [U^0_r, U^1_r] = 2 iH_r
            let s = if a == 0 { 2 } else { -2 };
            let alpha = &rs.positive()[r1];
            (0..rank)
                .filter(|&i| alpha.coords()[i] != 0)
                .map(|i| (i, Surd::from_rational(qi(s * alpha.coords()[i] as i64))))
                .collect()
        }
        (Basis::U { root: r1, a }, Basis::U { root: r2, a: b }) => {
            if a > b {
                return basis_bracket(rs, st, rank, y, x)
                    .into_iter()
                    .map(|(k, c)| (k, -c))
                    .collect();
            }
            // [U^a_r, U^b_s] = (-1)^(ab) N_{r,s} U^(a+b)_{r+s} + (-1)^(a+b) N_{-r,s} U^(a+b)_{r-s}
            let c = (a + b) % 2;
            let alpha = &rs.positive()[r1];
            let beta = &rs.positive()[r2];
            let mut out = Vec::new();
            let n_sum = st.get(r1, r2);
            if !n_sum.is_zero() {
                let (k, sg) = u_of(rs, rank, &alpha.add(beta), c);
                let s = if a * b == 1 { -sg } else { sg };
                out.push((k, Surd::new(s, qi(1)) * n_sum));
            }
            let n_diff = st.get(r1 + n_pos, r2);
            if !n_diff.is_zero() {
                let (k, sg) = u_of(rs, rank, &alpha.sub(beta), c);
                let s = if (a + b) % 2 == 1 { -sg } else { sg };
                out.push((k, Surd::new(s, qi(1)) * n_diff));
            }
            out.sort_by_key(|t| t.0);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::q;

    fn alg(s: &str) -> CompactAlgebra {
        CompactAlgebra::from_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(alg("G2").dim(), 14);
        for m in 2..=5 {
            assert_eq!(alg(&format!("C{m}")).dim(), m * (2 * m + 1));
        }
    }

    #[test]
    fn u0_u1_gives_2ih() {
        let a = alg("A2");
        // root a1 + a2 has index 2
        let br = a.basis_bracket(a.u_index(2, 0), a.u_index(2, 1));
        assert_eq!(br, &[(0, Surd::from_rational(qi(2))), (1, Surd::from_rational(qi(2)))]);
    }

    #[test]
    fn u_with_h() {
        let a = alg("C2");
        let g = a.root_system().gram().to_vec();
        // [U^0_{a1}, iH_{a2}] = -<a1,a2> U^1_{a1}
        let br = a.basis_bracket(a.u_index(0, 0), 1);
        assert_eq!(br, &[(a.u_index(0, 1), Surd::from_rational(-g[0][1]))]);
        let br = a.basis_bracket(a.u_index(0, 1), 0);
        assert_eq!(br, &[(a.u_index(0, 0), Surd::from_rational(g[0][0]))]);
    }

    #[test]
    fn orthogonal_roots_commute() {
        // in C3, a1 and a3 are orthogonal and a1 +- a3 are not roots
        let a = alg("C3");
        for x in 0..2 {
            for y in 0..2 {
                assert!(a.basis_bracket(a.u_index(0, x), a.u_index(2, y)).is_empty());
            }
        }
    }

    #[test]
    fn antisymmetry() {
        let a = alg("G2");
        for x in 0..a.dim() {
            assert!(a.basis_bracket(x, x).is_empty());
            for y in 0..a.dim() {
                let xy: Vec<_> = a.basis_bracket(x, y).iter().map(|&(k, c)| (k, -c)).collect();
                assert_eq!(xy, a.basis_bracket(y, x));
            }
        }
    }

    #[test]
    fn metric_values() {
        let a = alg("B3");
        let d = a.dim();
        let e = |i: usize| {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            v
        };
        assert_eq!(a.inner(&e(a.u_index(2, 0)), &e(a.u_index(2, 0))), 1.0);
        assert_eq!(a.inner(&e(a.u_index(2, 0)), &e(a.u_index(2, 1))), 0.0);
        let g = a.root_system().gram();
        assert!((a.inner(&e(0), &e(1)) - 0.5 * to_f64(&g[0][1])).abs() < 1e-15);
    }

    #[test]
    fn torus_rotation_third_turn() {
        let a = alg("A2");
        // H with a1(H) = 1/3, a2(H) = 0
        let h = crate::rational::solve(a.root_system().gram(), &[q(1, 3), qi(0)]).unwrap();
        let m = a.torus_adjoint(&h, qi(1));
        let (u0, u1) = (a.u_index(0, 0), a.u_index(0, 1));
        assert!((m[(u0, u0)] + 0.5).abs() < 1e-15);
        assert!((m[(u1, u0)] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        // a2 plane untouched
        assert_eq!(m[(a.u_index(1, 0), a.u_index(1, 0))], 1.0);
        // integral turns are exactly the identity
        let m3 = a.torus_adjoint(&h, qi(3));
        assert_eq!(m3, DMatrix::identity(a.dim(), a.dim()));
    }

    #[test]
    fn exact_bracket_rejects_unlike_radicals() {
        let a = alg("G2");
        let d = a.dim();
        // find [e_i, e_j] and [e_i, e_k] hitting the same basis element with
        // different radicands
        let mut found = None;
        'search: for i in 0..d {
            for j in 0..d {
                for k in j + 1..d {
                    for &(t1, c1) in a.basis_bracket(i, j) {
                        for &(t2, c2) in a.basis_bracket(i, k) {
                            if t1 == t2 && c1.square() != c2.square() {
                                found = Some((i, j, k));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        let (i, j, k) = found.expect("G2 has unequal structure constants");
        let x = ExactElement::basis(i);
        let mut y = ExactElement::basis(j);
        y.add_term(k, Surd::one()).unwrap();
        assert_eq!(a.bracket_exact(&x, &y), Err(Error::IrrationalSum));
        // basis pairs are always exact
        assert!(a.bracket_exact(&x, &ExactElement::basis(j)).is_ok());
    }
}
