//! Root systems of the simple complex Lie algebras.
//!
//! Roots are integer coefficient vectors over the simple roots, so root
//! membership and string lengths are exact set lookups. The inner product is
//! the one induced by the Killing form, `<a, b> = B(H_a, H_b)`, obtained by
//! rescaling a symmetrized Cartan form until
//! `<a, b> = sum over all roots g of <a, g><b, g>` holds exactly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_positive_definite, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A Dynkin type `X_n`, validated against the rank constraints of its series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    series: Series,
    rank: usize,
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            let rule = match series {
                Series::A => "rank >= 1",
                Series::B | Series::C => "rank >= 2",
                Series::D => "rank >= 3",
                Series::E => "rank 6, 7 or 8",
                Series::F => "rank 4",
                Series::G => "rank 2",
            };
            return Err(Error::InvalidType(format!(
                "{}{rank}: series {} requires {rule}",
                series.letter(),
                series.letter()
            )));
        }
        Ok(Self { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.num_positive()
    }

    /// Bourbaki-labelled diagram: edges `(i, j)` and doubled squared root
    /// lengths (2 for short/simply-laced, 4 or 6 for long).
    fn diagram(&self) -> (Vec<(usize, usize)>, Vec<i64>) {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.series {
            Series::A => (chain(n), vec![2; n]),
            Series::B => {
                let mut l = vec![4; n];
                l[n - 1] = 2;
                (chain(n), l)
            }
            Series::C => {
                let mut l = vec![2; n];
                l[n - 1] = 4;
                (chain(n), l)
            }
            Series::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (e, vec![2; n])
            }
            Series::E => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                (e, vec![2; n])
            }
            Series::F => (chain(4), vec![4, 4, 2, 2]),
            Series::G => (chain(2), vec![2, 6]),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::InvalidType(format!("'{s}': expected a series letter A-G"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("'{s}': expected a rank after the series letter")))?;
        DynkinType::new(series, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A root as integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled_add(&self, k: i32, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Positive representative of `+-self`.
    pub fn abs(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Identifier of a root in `Δ`: ids `0..N` are the positive roots ordered by
/// height, then by descending coefficient vector (so id `i < rank` is the
/// simple root `a_{i+1}`), `N + k` is the negative of positive root `k`.
pub type RootId = usize;

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: DynkinType,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<Q>>,
    /// Symmetrized integer form before Killing rescaling.
    gram0: Vec<Vec<i64>>,
    marks: Vec<i32>,
}

impl RootSystem {
    /// Builds the root system of `ty`, enumerating positive roots by height
    /// and fixing the Killing normalization of the inner product.
    pub fn new(ty: DynkinType) -> Result<Self> {
        let n = ty.rank();
        let (edges, lengths) = ty.diagram();
        let mut gram0 = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram0[i][i] = lengths[i];
        }
        for &(i, j) in &edges {
            let v = -lengths[i].max(lengths[j]) / 2;
            gram0[i][j] = v;
            gram0[j][i] = v;
        }
        // cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| (2 * gram0[i][j] / gram0[j][j]) as i32).collect())
            .collect();

        let positive = enumerate_positive(n, &cartan);
        if positive.len() != ty.num_positive() {
            return Err(Error::Internal(format!(
                "{ty}: enumerated {} positive roots, expected {}",
                positive.len(),
                ty.num_positive()
            )));
        }
        let index = positive.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

        // Killing normalization: <a,b> = s (a,b)_0 with s (a,b)_0 = s^2 S(a,b),
        // S(a,b) = sum over roots g of (a,g)_0 (b,g)_0.
        let ip0 = |a: &[i32], b: &[i32]| -> i64 {
            let mut acc = 0i64;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    acc += a[i] as i64 * b[j] as i64 * gram0[i][j];
                }
            }
            acc
        };
        let simple: Vec<Vec<i32>> = (0..n).map(|i| Root::simple(n, i).0).collect();
        let sums: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        2 * positive
                            .iter()
                            .map(|g| ip0(&simple[i], &g.0) * ip0(&simple[j], &g.0))
                            .sum::<i64>()
                    })
                    .collect()
            })
            .collect();
        let scale = Q::new(gram0[0][0], sums[0][0]);
        for i in 0..n {
            for j in 0..n {
                if Q::from_integer(gram0[i][j]) != scale * Q::from_integer(sums[i][j]) {
                    return Err(Error::Internal(format!(
                        "{ty}: Killing self-consistency fails at ({i},{j})"
                    )));
                }
            }
        }
        let gram: Vec<Vec<Q>> = gram0
            .iter()
            .map(|row| row.iter().map(|&v| scale * qi(v)).collect())
            .collect();
        if !is_positive_definite(&gram) {
            return Err(Error::Internal(format!("{ty}: gram matrix not positive definite")));
        }
        let marks = positive.last().expect("nonempty").0.clone();

        Ok(Self {
            ty,
            positive,
            index,
            cartan,
            gram,
            gram0,
            marks,
        })
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Killing-normalized inner products of the simple roots.
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn maximal_root(&self) -> &Root {
        self.positive.last().expect("nonempty")
    }

    /// Coefficients of the maximal root over the simple roots.
    pub fn marks(&self) -> &[i32] {
        &self.marks
    }

    /// `<a, b>` under the Killing normalization.
    pub fn inner(&self, a: &Root, b: &Root) -> Q {
        let n = self.rank();
        let mut acc = Q::zero();
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b.0[j] != 0 {
                    acc += self.gram[i][j] * qi(a.0[i] as i64 * b.0[j] as i64);
                }
            }
        }
        acc
    }

    /// Unnormalized integer form; ratios agree with [`inner`](Self::inner).
    pub(crate) fn inner0(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc += a.0[i] as i64 * b.0[j] as i64 * self.gram0[i][j];
            }
        }
        acc
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn id_of(&self, r: &Root) -> Option<RootId> {
        if let Some(&k) = self.index.get(r) {
            return Some(k);
        }
        self.index.get(&r.neg()).map(|&k| k + self.positive.len())
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn root(&self, id: RootId) -> Root {
        let n = self.positive.len();
        if id < n {
            self.positive[id].clone()
        } else {
            self.positive[id - n].neg()
        }
    }

    pub fn neg_id(&self, id: RootId) -> RootId {
        let n = self.positive.len();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.id_of(r).is_some()
    }

    /// The `a`-string through `b`: `(p, q)` with `b + k a` a root exactly for
    /// `p <= k <= q`.
    pub fn root_string(&self, a: &Root, b: &Root) -> Result<(i32, i32)> {
        if !self.is_root(a) || !self.is_root(b) {
            return Err(Error::InvalidArgument(format!("{a} or {b} is not a root")));
        }
        if a == b || *a == b.neg() {
            return Err(Error::InvalidArgument(format!(
                "root string undefined for b = +-a ({a}, {b})"
            )));
        }
        let mut q = 0;
        while self.is_root(&b.scaled_add(q + 1, a)) {
            q += 1;
        }
        let mut p = 0;
        while self.is_root(&b.scaled_add(p - 1, a)) {
            p -= 1;
        }
        Ok((p, q))
    }

    /// Canonical JSON document of the root data.
    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            r#type: self.ty.to_string(),
            rank: self.rank(),
            simple: (0..self.rank()).collect(),
            positive: self.positive.iter().map(|r| r.0.clone()).collect(),
            heights: self.positive.iter().map(|r| r.height()).collect(),
            cartan: self.cartan.clone(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(fmt_q).collect())
                .collect(),
            maximal_root: self.maximal_root().0.clone(),
            marks: self.marks.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemJson {
    pub r#type: String,
    pub rank: usize,
    /// Indices of the simple roots within `positive`.
    pub simple: Vec<usize>,
    pub positive: Vec<Vec<i32>>,
    pub heights: Vec<i32>,
    pub cartan: Vec<Vec<i32>>,
    pub gram: Vec<Vec<String>>,
    pub maximal_root: Vec<i32>,
    pub marks: Vec<i32>,
}

/// Height-by-height closure: `b + a_i` is a root iff `q > 0` in the
/// `a_i`-string through `b`, where `q = p - <b, a_i^v>`.
fn enumerate_positive(n: usize, cartan: &[Vec<i32>]) -> Vec<Root> {
    let mut all: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut seen: std::collections::HashSet<Root> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for b in &layer {
            for i in 0..n {
                let ai = Root::simple(n, i);
                if *b == ai {
                    continue;
                }
                let mut p = 0;
                loop {
                    let down = b.scaled_add(-(p + 1), &ai);
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..n).map(|j| b.0[j] * cartan[j][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let up = b.add(&ai);
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn rank_constraints() {
        for bad in ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "X2", "C"] {
            assert!(bad.parse::<DynkinType>().is_err(), "{bad}");
        }
        for good in ["A1", "B2", "C2", "D3", "E6", "E7", "E8", "F4", "G2"] {
            assert!(good.parse::<DynkinType>().is_ok(), "{good}");
        }
    }

    #[test]
    fn g2_positive_roots() {
        let g2 = rs("G2");
        let got: Vec<Vec<i32>> = g2.positive().iter().map(|r| r.0.clone()).collect();
        assert_eq!(
            got,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]]
        );
        assert_eq!(g2.maximal_root().coords(), &[3, 2]);
        assert_eq!(g2.marks(), &[3, 2]);
    }

    #[test]
    fn simple_roots_come_first() {
        for t in ["A4", "C3", "G2", "F4", "E6"] {
            let r = rs(t);
            for i in 0..r.rank() {
                assert_eq!(r.simple(i), &Root::simple(r.rank(), i));
                assert_eq!(r.positive_index(&Root::simple(r.rank(), i)), Some(i));
            }
        }
    }

    #[test]
    fn a1_killing_normalization() {
        // <a,a> = sum over {a, -a} of <a,g>^2 = 2 <a,a>^2
        let a1 = rs("A1");
        let x = a1.gram()[0][0];
        assert_eq!(x, x * x * qi(2));
        assert_eq!(x, q(1, 2));
    }

    #[test]
    fn counts_and_marks() {
        assert_eq!(rs("C4").num_positive(), 16);
        assert_eq!(rs("C3").marks(), &[2, 2, 1]);
        assert_eq!(rs("F4").marks(), &[2, 3, 4, 2]);
        assert_eq!(rs("A5").marks(), &[1, 1, 1, 1, 1]);
        assert_eq!(rs("E8").marks(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("E6").marks(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("D5").num_positive(), 20);
        assert_eq!(rs("B3").marks(), &[1, 2, 2]);
    }

    #[test]
    fn root_strings() {
        let a2 = rs("A2");
        let (a1, a2r) = (Root::simple(2, 0), Root::simple(2, 1));
        assert_eq!(a2.root_string(&a1, &a2r).unwrap(), (0, 1));
        let g2 = rs("G2");
        assert_eq!(g2.root_string(&a1, &a2r).unwrap(), (0, 3));
        assert!(g2.root_string(&a1, &a1).is_err());
        assert!(g2.root_string(&a1, &a1.neg()).is_err());
        // orthogonal simple roots of A1 x A1 inside C3: a1 and a3
        let c3 = rs("C3");
        assert_eq!(
            c3.root_string(&Root::simple(3, 0), &Root::simple(3, 2)).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn c_m_gram_table() {
        for m in 2..=6i64 {
            let c = rs(&format!("C{m}"));
            let g = c.gram();
            let mu = m as usize;
            for i in 0..mu {
                for j in 0..mu {
                    let want = if i == j {
                        if i + 1 < mu {
                            q(1, 2 * (m + 1))
                        } else {
                            q(1, m + 1)
                        }
                    } else if i.abs_diff(j) == 1 {
                        if i.max(j) + 1 < mu {
                            q(-1, 4 * (m + 1))
                        } else {
                            q(-1, 2 * (m + 1))
                        }
                    } else {
                        qi(0)
                    };
                    assert_eq!(g[i][j], want, "C{m} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_value(rs("A2").to_json()).unwrap();
        assert_eq!(j["type"], "A2");
        assert_eq!(j["gram"][0][0], "1/3");
        assert_eq!(j["gram"][0][1], "-1/6");
        assert_eq!(j["positive"].as_array().unwrap().len(), 3);
    }
}
