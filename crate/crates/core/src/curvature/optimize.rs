//! Multistart search over 2-planes and flat-plane detection.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{dot, orthonormalize, BasisEntry, Curvature, Plane, FLAT_TOL};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, to_f64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinchConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// gradient norm accepted as stationary
    pub tol: f64,
}

impl Default for PinchConfig {
    fn default() -> Self {
        Self { starts: 64, seed: 42, max_iter: 5000, tol: 1e-9 }
    }
}

#[derive(Clone, Debug)]
pub struct StartOutcome {
    pub min: f64,
    pub max: f64,
    pub argmin: Plane,
    pub argmax: Plane,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct PinchOutcome {
    pub kmin: f64,
    pub kmax: f64,
    pub argmin: Plane,
    pub argmax: Plane,
    pub starts: Vec<StartOutcome>,
}

impl PinchOutcome {
    pub fn converged_starts(&self) -> usize {
        self.starts.iter().filter(|s| s.converged).count()
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_plane(rng: &mut ChaCha8Rng, n: usize) -> Plane {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if let Some((x, y)) = orthonormalize(&x, &y) {
            return Plane { x, y };
        }
    }
}

/// Projected gradient descent of `sign * K` from `p`, with Armijo
/// backtracking and Gram-Schmidt retraction.
fn descend(model: &Curvature, p: &Plane, sign: f64, cfg: &PinchConfig) -> (f64, Plane, bool) {
    let (mut x, mut y) = (p.x.clone(), p.y.clone());
    let (k0, mut gx, mut gy) = model.value_and_gradient(&x, &y);
    let mut f = sign * k0;
    let mut step = 1.0;
    let mut stall = 0;
    for _ in 0..cfg.max_iter {
        let g2 = sign * sign * (dot(&gx, &gx) + dot(&gy, &gy));
        if g2.sqrt() <= cfg.tol {
            return (sign * f, Plane { x, y }, true);
        }
        let mut accepted = false;
        while step > 1e-16 {
            let tx: Vec<f64> = x.iter().zip(&gx).map(|(a, g)| a - step * sign * g).collect();
            let ty: Vec<f64> = y.iter().zip(&gy).map(|(a, g)| a - step * sign * g).collect();
            if let Some((nx, ny)) = orthonormalize(&tx, &ty) {
                let (k, ngx, ngy) = model.value_and_gradient(&nx, &ny);
                if sign * k <= f - 1e-4 * step * g2 {
                    stall = if f - sign * k <= 1e-15 * f.abs().max(1.0) { stall + 1 } else { 0 };
                    (x, y, gx, gy, f) = (nx, ny, ngx, ngy, sign * k);
                    accepted = true;
                    step *= 2.0;
                    break;
                }
            }
            step *= 0.5;
        }
        // at the rounding floor the gradient cannot shrink further
        if !accepted || stall >= 20 {
            let g = (dot(&gx, &gx) + dot(&gy, &gy)).sqrt();
            return (sign * f, Plane { x, y }, g <= cfg.tol.max(1e-6));
        }
    }
    (sign * f, Plane { x, y }, false)
}

/// Multistart search for the extremes of `K` on random planes. Starts run in
/// parallel; results are reduced in start order, so the outcome does not
/// depend on scheduling.
pub fn pinch(model: &Curvature, cfg: &PinchConfig) -> Result<PinchOutcome> {
    let n = model.dim_m();
    if n < 4 {
        return Err(Error::InvalidArgument(format!("pinching needs dim m >= 4, got {n}")));
    }
    if cfg.starts == 0 {
        return Err(Error::InvalidArgument("at least one start is required".into()));
    }
    let starts: Vec<StartOutcome> = (0..cfg.starts)
        .into_par_iter()
        .map(|s| {
            let p = random_plane(&mut rng_for(cfg.seed, s as u64), n);
            let (min, argmin, c1) = descend(model, &p, 1.0, cfg);
            let (max, argmax, c2) = descend(model, &p, -1.0, cfg);
            StartOutcome { min, max, argmin, argmax, converged: c1 && c2 }
        })
        .collect();
    let mut lo = 0;
    let mut hi = 0;
    for (i, s) in starts.iter().enumerate() {
        if s.min < starts[lo].min {
            lo = i;
        }
        if s.max > starts[hi].max {
            hi = i;
        }
    }
    Ok(PinchOutcome {
        kmin: starts[lo].min,
        kmax: starts[hi].max,
        argmin: starts[lo].argmin.clone(),
        argmax: starts[hi].argmax.clone(),
        starts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlatBudget {
    /// random vectors tried in the centralizer sweep
    pub samples: usize,
    /// local minimizations
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for FlatBudget {
    fn default() -> Self {
        Self { samples: 64, starts: 16, seed: 42, max_iter: 5000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatWitness {
    pub plane: Plane,
    pub numerator: f64,
    pub centralizer_dim: usize,
}

/// Looks for a plane with `[X, Y] = 0`: commuting basis pairs first, then
/// random vectors with a large centralizer, then local minimization of `K`
/// refined by Gauss-Newton on the bracket equations.
pub fn find_flat_plane(model: &Curvature, budget: &FlatBudget) -> Option<FlatWitness> {
    let n = model.dim_m();
    if n < 2 {
        return None;
    }
    let witness = |p: Plane| -> Option<FlatWitness> {
        let numerator = model.sec_numerator(&p.x, &p.y);
        if numerator > FLAT_TOL {
            return None;
        }
        let centralizer_dim = model.centralizer_in_m(&p.x).map(|c| c.dim).unwrap_or(0);
        Some(FlatWitness { plane: p, numerator, centralizer_dim })
    };
    if let Some(e) = model.basis_table().iter().find(|e| e.k == num_traits::Zero::zero()) {
        let (mut x, mut y) = (vec![0.0; n], vec![0.0; n]);
        x[e.i] = 1.0;
        y[e.j] = 1.0;
        return witness(Plane { x, y });
    }
    let mut rng = rng_for(budget.seed, u64::MAX);
    for _ in 0..budget.samples {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let Ok(cz) = model.centralizer_in_m(&v) else { continue };
        for u in &cz.basis {
            if let Some((x, y)) = orthonormalize(&v, u) {
                if let Some(w) = witness(polish(model, Plane { x, y })) {
                    return Some(w);
                }
            }
        }
    }
    let cfg = PinchConfig { starts: budget.starts, seed: budget.seed, max_iter: budget.max_iter, tol: 1e-9 };
    for s in 0..budget.starts {
        let p = random_plane(&mut rng_for(budget.seed, s as u64), n);
        let (k, p, _) = descend(model, &p, 1.0, &cfg);
        if k < 1e-3 {
            if let Some(w) = witness(polish(model, p)) {
                return Some(w);
            }
        }
    }
    None
}

/// Gauss-Newton with minimum-norm steps on `[X,Y] = 0`, `|X| = |Y| = 1`,
/// `X.Y = 0`.
fn polish(model: &Curvature, p: Plane) -> Plane {
    let n = model.dim_m();
    let (mut x, mut y) = (p.x, p.y);
    for _ in 0..50 {
        let b = model.bracket(&x, &y);
        let rows = b.len() + 3;
        let mut r = DVector::<f64>::zeros(rows);
        let mut j = DMatrix::<f64>::zeros(rows, 2 * n);
        for (t, v) in b.iter().enumerate() {
            r[t] = *v;
        }
        for &(a, bb, t, c) in &model.terms {
            j[(t, a)] += c * y[bb];
            j[(t, n + bb)] += c * x[a];
        }
        let m = b.len();
        r[m] = dot(&x, &x) - 1.0;
        r[m + 1] = dot(&y, &y) - 1.0;
        r[m + 2] = dot(&x, &y);
        for i in 0..n {
            j[(m, i)] = 2.0 * x[i];
            j[(m + 1, n + i)] = 2.0 * y[i];
            j[(m + 2, i)] = y[i];
            j[(m + 2, n + i)] = x[i];
        }
        if r.norm() < 1e-15 {
            break;
        }
        let Ok(dz) = j.svd(true, true).solve(&r, 1e-10) else { break };
        for i in 0..n {
            x[i] -= dz[i];
            y[i] -= dz[n + i];
        }
    }
    match orthonormalize(&x, &y) {
        Some((x, y)) => Plane { x, y },
        None => Plane { x, y },
    }
}

/// Everything the `curv` command reports about one space.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub space: String,
    pub outcome: PinchOutcome,
    pub basis_table: Vec<BasisEntry>,
    pub flat_witness: Option<FlatWitness>,
    pub einstein_defect: f64,
    pub scale: crate::rational::Q,
    pub config: PinchConfig,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    space: &'a str,
    scale: String,
    dim_m: usize,
    kmin: f64,
    kmax: f64,
    delta: f64,
    argmin: &'a Plane,
    argmax: &'a Plane,
    basis_table: &'a [BasisEntry],
    flat_witness: &'a Option<FlatWitness>,
    einstein_defect: f64,
    starts: usize,
    seed: u64,
    max_iter: usize,
    converged_starts: usize,
}

impl CurvatureReport {
    pub fn run(model: &Curvature, cfg: &PinchConfig) -> Result<Self> {
        let outcome = pinch(model, cfg)?;
        let budget = FlatBudget { seed: cfg.seed, max_iter: cfg.max_iter, ..FlatBudget::default() };
        Ok(Self {
            space: model.name().to_string(),
            outcome,
            basis_table: model.basis_table().to_vec(),
            flat_witness: find_flat_plane(model, &budget),
            einstein_defect: model.ricci().einstein_defect,
            scale: model.metric().scale(),
            config: *cfg,
        })
    }

    pub fn kmin(&self) -> f64 {
        self.outcome.kmin
    }

    pub fn kmax(&self) -> f64 {
        self.outcome.kmax
    }

    pub fn delta(&self) -> f64 {
        self.outcome.kmin / self.outcome.kmax
    }

    pub fn converged_starts(&self) -> usize {
        self.outcome.converged_starts()
    }

    pub fn fully_converged(&self) -> bool {
        self.converged_starts() == self.config.starts
    }

    pub fn dim_m(&self) -> usize {
        self.outcome.argmin.x.len()
    }

    pub fn to_json(&self) -> String {
        let j = ReportJson {
            space: &self.space,
            scale: fmt_q(&self.scale),
            dim_m: self.dim_m(),
            kmin: self.kmin(),
            kmax: self.kmax(),
            delta: self.delta(),
            argmin: &self.outcome.argmin,
            argmax: &self.outcome.argmax,
            basis_table: &self.basis_table,
            flat_witness: &self.flat_witness,
            einstein_defect: self.einstein_defect,
            starts: self.config.starts,
            seed: self.config.seed,
            max_iter: self.config.max_iter,
            converged_starts: self.converged_starts(),
        };
        serde_json::to_string_pretty(&j).expect("report serializes")
    }

    /// Smallest and largest exact basis-pair curvature.
    pub fn basis_range(&self) -> Option<(f64, f64)> {
        let vals = self.basis_table.iter().map(|e| to_f64(&e.k));
        let lo = vals.clone().fold(f64::INFINITY, f64::min);
        let hi = vals.fold(f64::NEG_INFINITY, f64::max);
        (!self.basis_table.is_empty()).then_some((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::MetricSpec;
    use crate::presets;

    fn model(name: &str) -> Curvature {
        Curvature::new(&presets::build(name).unwrap(), MetricSpec::default()).unwrap()
    }

    #[test]
    fn cp3_pinching() {
        let out = pinch(&model("cp3-sp"), &PinchConfig { starts: 16, ..Default::default() }).unwrap();
        assert!((out.kmin - 1.0 / 24.0).abs() < 1e-6, "{}", out.kmin);
        assert!((out.kmax - 2.0 / 3.0).abs() < 1e-6, "{}", out.kmax);
    }

    #[test]
    fn f6_flat() {
        let w = find_flat_plane(&model("f6"), &FlatBudget::default()).expect("flat plane");
        assert!(w.numerator <= FLAT_TOL);
        assert!(w.centralizer_dim >= 2);
    }

    #[test]
    fn small_space_rejected() {
        assert!(pinch(&model("cp1-su"), &PinchConfig::default()).is_err());
    }
}
