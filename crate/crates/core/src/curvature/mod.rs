//! Sectional curvature of the normal metric `-c B` on `G/K`:
//!
//! ```text
//! <R(X,Y)Y, X> = |[X,Y]_k|^2 + 1/4 |[X,Y]_m|^2
//! ```
//!
//! Vectors of `m` are given by coordinates against the basis `U^a_α` of `m`.
//! That basis is orthogonal with `q(U, U) = 2c`, so Euclidean operations on
//! coordinates (Gram-Schmidt, unit vectors) agree with the metric up to the
//! constant factor.

mod brc;
mod optimize;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use brc::{verify_brc_support, BrcMismatch, BrcReport};
pub use optimize::{
    find_flat_plane, pinch, CurvatureReport, FlatBudget, FlatWitness, PinchConfig, PinchOutcome, StartOutcome,
};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, to_f64, Q};
use crate::threesym::ThreeSymSpace;

/// Cutoff below which a singular value counts as zero.
pub const SVD_CUTOFF: f64 = 1e-9;
/// Sectional numerators at or below this are flat.
pub const FLAT_TOL: f64 = 1e-10;

/// Normal metric `-c B` with `c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricSpec {
    scale: Q,
}

impl MetricSpec {
    pub fn new(scale: Q) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {}", fmt_q(&scale))));
        }
        Ok(Self { scale })
    }

    pub fn scale(&self) -> Q {
        self.scale
    }
}

impl Default for MetricSpec {
    fn default() -> Self {
        Self { scale: q(1, 2) }
    }
}

/// A 2-plane spanned by orthonormal coordinate vectors `x`, `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Plane {
    /// Gram-Schmidt on `(x, y)`; fails when they are (numerically) dependent.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidArgument("plane vectors differ in length".into()));
        }
        orthonormalize(x, y)
            .map(|(x, y)| Self { x, y })
            .ok_or_else(|| Error::InvalidArgument("vectors are linearly dependent".into()))
    }

    pub fn to_rows(&self) -> [Vec<f64>; 2] {
        [self.x.clone(), self.y.clone()]
    }
}

impl Serialize for Plane {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn orthonormalize(x: &[f64], y: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
    let nx = dot(x, x).sqrt();
    if !(nx > 1e-300) {
        return None;
    }
    let x: Vec<f64> = x.iter().map(|v| v / nx).collect();
    let p = dot(&x, y);
    let mut y: Vec<f64> = y.iter().zip(&x).map(|(b, a)| b - p * a).collect();
    // second pass keeps orthogonality at rounding level
    let p = dot(&x, &y);
    y.iter_mut().zip(&x).for_each(|(b, a)| *b -= p * a);
    let ny = dot(&y, &y).sqrt();
    if !(ny > 1e-12 * nx.max(1.0)) {
        return None;
    }
    y.iter_mut().for_each(|v| *v /= ny);
    Some((x, y))
}

/// Exact sectional curvature of a pair of `m` basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub i: usize,
    pub j: usize,
    pub k: Q,
}

impl Serialize for BasisEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BasisEntry", 3)?;
        st.serialize_field("i", &self.i)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("k", &fmt_q(&self.k))?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct Centralizer {
    pub dim: usize,
    pub basis: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct Ricci {
    /// Ricci form against the metric-orthonormal basis of `m`.
    pub matrix: DMatrix<f64>,
    pub einstein_defect: f64,
}

/// Curvature evaluator for one space and metric. Holds the bracket of `m`
/// basis vectors as a sparse list and the weights of the numerator.
#[derive(Clone, Debug)]
pub struct Curvature {
    name: String,
    metric: MetricSpec,
    c: f64,
    n: usize,
    dim: usize,
    rank: usize,
    /// `(a, b, t, coeff)`: `[e_a, e_b]` has `coeff` on algebra index `t`
    terms: Vec<(usize, usize, usize, f64)>,
    w_h: DMatrix<f64>,
    w_u: Vec<f64>,
    basis_table: Vec<BasisEntry>,
}

impl Curvature {
    pub fn new(space: &ThreeSymSpace, metric: MetricSpec) -> Result<Self> {
        let alg = space.algebra();
        let rank = alg.rank();
        let dim = alg.dim();
        let n = space.dim_m();
        let c = to_f64(&metric.scale);
        let mut terms = Vec::new();
        for (a, &ia) in space.m_indices().iter().enumerate() {
            for (b, &ib) in space.m_indices().iter().enumerate() {
                for &(t, s) in alg.basis_bracket(ia, ib) {
                    terms.push((a, b, t, s.to_f64()));
                }
            }
        }
        let gram = alg.root_system().gram();
        let w_h = DMatrix::from_fn(rank, rank, |i, j| c * to_f64(&gram[i][j]));
        let w_u = (0..dim)
            .map(|t| match (t < rank, space.in_m(t)) {
                (true, _) => 0.0,
                (false, true) => c / 2.0,
                (false, false) => 2.0 * c,
            })
            .collect();
        let basis_table = exact_table(space, &metric)?;
        Ok(Self {
            name: format!("{}:{}", alg.root_system().dynkin_type(), space.spec()),
            metric,
            c,
            n,
            dim,
            rank,
            terms,
            w_h,
            w_u,
            basis_table,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metric(&self) -> MetricSpec {
        self.metric
    }

    pub fn dim_m(&self) -> usize {
        self.n
    }

    /// `[X, Y]` on the full algebra basis.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(a, b, t, c) in &self.terms {
            out[t] += c * x[a] * y[b];
        }
        out
    }

    fn weigh(&self, v: &[f64]) -> Vec<f64> {
        let mut w: Vec<f64> = v.iter().zip(&self.w_u).map(|(a, b)| a * b).collect();
        for i in 0..self.rank {
            w[i] = (0..self.rank).map(|j| self.w_h[(i, j)] * v[j]).sum();
        }
        w
    }

    /// `|[X,Y]_k|^2 + 1/4 |[X,Y]_m|^2` in the metric.
    pub fn sec_numerator(&self, x: &[f64], y: &[f64]) -> f64 {
        let b = self.bracket(x, y);
        dot(&b, &self.weigh(&b))
    }

    /// Sectional curvature of `span{x, y}`; `x`, `y` need not be orthonormal.
    pub fn sectional(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let d = dot(x, x) * dot(y, y) - dot(x, y).powi(2);
        if !(d > 1e-24 * dot(x, x) * dot(y, y)) {
            return Err(Error::InvalidArgument("vectors are linearly dependent".into()));
        }
        Ok(self.sec_numerator(x, y) / (4.0 * self.c * self.c * d))
    }

    pub fn plane_curvature(&self, p: &Plane) -> f64 {
        self.sec_numerator(&p.x, &p.y) / (4.0 * self.c * self.c)
    }

    /// Curvature and its gradient in `(x, y)` for arbitrary independent
    /// vectors.
    pub fn value_and_gradient(&self, x: &[f64], y: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
        let b = self.bracket(x, y);
        let wb = self.weigh(&b);
        let f = dot(&b, &wb);
        let (mut gx, mut gy) = (vec![0.0; self.n], vec![0.0; self.n]);
        for &(a, bb, t, c) in &self.terms {
            let s = 2.0 * c * wb[t];
            gx[a] += s * y[bb];
            gy[bb] += s * x[a];
        }
        let (xx, yy, xy) = (dot(x, x), dot(y, y), dot(x, y));
        let d = xx * yy - xy * xy;
        let s = 4.0 * self.c * self.c;
        let k = f / (s * d);
        for i in 0..self.n {
            let dx = 2.0 * yy * x[i] - 2.0 * xy * y[i];
            let dy = 2.0 * xx * y[i] - 2.0 * xy * x[i];
            gx[i] = (gx[i] / s - k * dx) / d;
            gy[i] = (gy[i] / s - k * dy) / d;
        }
        (k, gx, gy)
    }

    /// Exact curvatures of all pairs of `m` basis vectors.
    pub fn basis_table(&self) -> &[BasisEntry] {
        &self.basis_table
    }

    /// `{u in m : [u, v] = 0}` by SVD of `u -> [u, v]`.
    pub fn centralizer_in_m(&self, v: &[f64]) -> Result<Centralizer> {
        if v.iter().all(|x| *x == 0.0) {
            return Err(Error::InvalidArgument("centralizer of the zero vector".into()));
        }
        let mut l = DMatrix::<f64>::zeros(self.dim, self.n);
        for &(a, b, t, c) in &self.terms {
            l[(t, a)] += c * v[b];
        }
        let svd = l.svd(false, true);
        let vt = svd.v_t.expect("requested");
        let mut basis = Vec::new();
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if s < SVD_CUTOFF {
                basis.push(vt.row(k).iter().copied().collect());
            }
        }
        Ok(Centralizer { dim: basis.len(), basis })
    }

    /// Ricci form from the curvature numerators over an orthonormal basis.
    pub fn ricci(&self) -> Ricci {
        let n = self.n;
        let mut acc = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            // A_i: u -> [u, e_i]
            let mut a = DMatrix::<f64>::zeros(self.dim, n);
            for &(u, b, t, c) in &self.terms {
                if b == i {
                    a[(t, u)] += c;
                }
            }
            let mut wa = a.clone();
            for col in 0..n {
                let w = self.weigh(&a.column(col).iter().copied().collect::<Vec<_>>());
                wa.set_column(col, &DVector::from_vec(w));
            }
            acc += a.transpose() * wa;
        }
        // e_i has squared norm 2c; divide once for the sum, once more to
        // express the form on unit vectors
        let matrix = acc / (4.0 * self.c * self.c);
        let tr = matrix.trace() / n as f64;
        let defect = (&matrix - DMatrix::identity(n, n) * tr).norm() / matrix.norm();
        Ricci { matrix, einstein_defect: defect }
    }
}

fn exact_table(space: &ThreeSymSpace, metric: &MetricSpec) -> Result<Vec<BasisEntry>> {
    let alg = space.algebra();
    let rank = alg.rank();
    let gram = alg.root_system().gram();
    let c = metric.scale;
    let m = space.m_indices();
    let mut out = Vec::new();
    for (a, &ia) in m.iter().enumerate() {
        for (b, &ib) in m.iter().enumerate().skip(a + 1) {
            let mut h = vec![Q::zero(); rank];
            let mut num = Q::zero();
            for &(t, s) in alg.basis_bracket(ia, ib) {
                if t < rank {
                    h[t] = s
                        .to_rational()
                        .ok_or_else(|| Error::Internal("irrational torus coefficient".into()))?;
                } else {
                    let w = if space.in_m(t) { c / qi(4) } else { c };
                    num += w * qi(2) * s.square();
                }
            }
            for i in 0..rank {
                for j in 0..rank {
                    num += c * gram[i][j] * h[i] * h[j];
                }
            }
            out.push(BasisEntry { i: a, j: b, k: num / (qi(4) * c * c) });
        }
    }
    Ok(out)
}
