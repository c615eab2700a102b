use nalgebra::DMatrix;
use proptest::prelude::*;

use trisym::chevalley::{ChevalleyTable, StructureTable};
use trisym::compact::CompactAlgebra;
use trisym::curvature::{find_flat_plane, pinch, Curvature, FlatBudget, MetricSpec, PinchConfig, Plane};
use trisym::presets;
use trisym::rational::{q, to_f64, Q};
use trisym::rootsys::{DynkinType, RootSystem};
use trisym::threesym::ThreeSymSpace;

const TYPES: &[&str] = &["A2", "A3", "B2", "B3", "C3", "D4", "G2"];

fn alg(t: &str) -> CompactAlgebra {
    CompactAlgebra::from_type(t.parse().unwrap()).unwrap()
}

fn model(name: &str) -> Curvature {
    Curvature::new(&presets::build(name).unwrap(), MetricSpec::default()).unwrap()
}

fn vecs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_on_random_elements(t in prop::sample::select(TYPES), x in vecs(28), y in vecs(28), z in vecs(28)) {
        let a = alg(t);
        let n = a.dim();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        let j1 = a.bracket(&a.bracket(x, y), z);
        let j2 = a.bracket(&a.bracket(y, z), x);
        let j3 = a.bracket(&a.bracket(z, x), y);
        for k in 0..n {
            prop_assert!((j1[k] + j2[k] + j3[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn killing_form_is_invariant(t in prop::sample::select(TYPES), i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let a = alg(t);
        let n = a.dim();
        let unit = |i: usize| { let mut v = vec![0.0; n]; v[i % n] = 1.0; v };
        let (x, y, z) = (unit(i), unit(j), unit(k));
        // B([x,y],z) = B(x,[y,z])
        let lhs = a.killing_form(&a.bracket(&x, &y), &z);
        let rhs = a.killing_form(&x, &a.bracket(&y, &z));
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn torus_rotation_is_orthogonal(t in prop::sample::select(TYPES), num in -12i64..12, den in 1i64..9, node in 0usize..3) {
        let a = alg(t);
        let mut h = vec![Q::from_integer(0); a.rank()];
        h[node % a.rank()] = q(1, 1);
        let m = a.torus_adjoint(&h, q(num, den));
        let id = DMatrix::<f64>::identity(a.dim(), a.dim());
        prop_assert!((m.transpose() * &m - id).abs().max() < 1e-12);
    }

    #[test]
    fn numerator_nonnegative_and_flat_iff_commuting(p in 0usize..8, seed in vecs(40)) {
        let name = presets::NAMES[p];
        let k = model(name);
        let n = k.dim_m();
        let x: Vec<f64> = seed.iter().cycle().take(n).copied().collect();
        let y: Vec<f64> = seed.iter().rev().cycle().take(n).copied().collect();
        let num = k.sec_numerator(&x, &y);
        prop_assert!(num >= 0.0);
        let b = k.bracket(&x, &y);
        let bn = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        if num <= 1e-12 {
            prop_assert!(bn <= 1e-6);
        }
        if bn <= 1e-12 {
            prop_assert!(num <= 1e-12);
        }
    }

    #[test]
    fn curvature_scales_inversely(p in 0usize..8, num in 1i64..7, den in 1i64..7, seed in vecs(40)) {
        let name = presets::NAMES[p];
        let space = presets::build(name).unwrap();
        let c = q(num, den);
        let k0 = Curvature::new(&space, MetricSpec::default()).unwrap();
        let k1 = Curvature::new(&space, MetricSpec::new(c).unwrap()).unwrap();
        let n = k0.dim_m();
        let x: Vec<f64> = seed.iter().take(n).copied().collect();
        let y: Vec<f64> = seed.iter().skip(20).take(n).copied().collect();
        if let (Ok(a), Ok(b)) = (k0.sectional(&x, &y), k1.sectional(&x, &y)) {
            let want = a * 0.5 / to_f64(&c);
            prop_assert!((b - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }
}

#[test]
fn sigma_has_order_three_and_fixes_k() {
    for name in presets::NAMES {
        let s = presets::build(name).unwrap();
        let sigma = s.sigma();
        let n = sigma.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        assert!((&sigma * &sigma * &sigma - &id).abs().max() < 1e-12, "{name}");
        for &i in s.k_indices() {
            for r in 0..n {
                assert_eq!(sigma[(r, i)], if r == i { 1.0 } else { 0.0 }, "{name}");
            }
        }
        assert_eq!(s.k_indices().len() + s.dim_m(), s.algebra().dim());
        assert_eq!(s.dim_m() % 2, 0);
        let j = s.j_matrix();
        assert!((j.transpose() * &j - DMatrix::<f64>::identity(s.dim_m(), s.dim_m())).abs().max() < 1e-15);
    }
}

#[test]
fn quasi_kahler_checks_have_teeth() {
    let s = presets::build("s6").unwrap();
    let j = s.j_matrix();
    assert!(s.verify_quasi_kahler_with(&(-&j), 1e-10).ok());
    // flip J on one root plane only
    let mut bad = j.clone();
    for r in 0..2 {
        for c in 0..2 {
            bad[(r, c)] = -j[(r, c)];
        }
    }
    assert!(!s.verify_quasi_kahler_with(&bad, 1e-10).ok());
}

#[test]
fn centralizers_on_cp3_are_lines() {
    let k = model("cp3-sp");
    let s = presets::build("cp3-sp").unwrap();
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let v: Vec<f64> = (0..6).map(|_| rng.sample(rand_distr::StandardNormal)).collect();
        assert_eq!(k.centralizer_in_m(&v).unwrap().dim, 1);
    }
    // U^0 of the maximal root
    let rs = s.algebra().root_system();
    let mu = rs.positive_index(rs.maximal_root()).unwrap();
    let pos = s.m_position(s.algebra().u_index(mu, 0)).unwrap();
    let mut v = vec![0.0; 6];
    v[pos] = 1.0;
    assert_eq!(k.centralizer_in_m(&v).unwrap().dim, 1);
    assert!(find_flat_plane(&k, &FlatBudget::default()).is_none());
    assert!(find_flat_plane(&model("s6"), &FlatBudget::default()).is_none());
}

#[test]
fn cp_basis_table_entries() {
    for m in 2..=4i64 {
        let name = format!("cp{}-sp", 2 * m - 1);
        let s = presets::build(&name).unwrap();
        let k = Curvature::new(&s, MetricSpec::default()).unwrap();
        let alg = s.algebra();
        let rs = alg.root_system();
        let mu = rs.maximal_root();
        let mu_id = rs.positive_index(mu).unwrap();
        let pos = |root: usize, a: u8| s.m_position(alg.u_index(root, a)).unwrap();
        let lookup = |i: usize, j: usize| {
            let (i, j) = (i.min(j), i.max(j));
            k.basis_table().iter().find(|e| e.i == i && e.j == j).unwrap().k
        };
        assert_eq!(lookup(pos(mu_id, 0), pos(mu_id, 1)), q(2, m + 1), "{name}");
        for &r in s.m_roots() {
            if r == mu_id {
                continue;
            }
            let beta = &rs.positive()[r];
            let nb = rs.id_of(&beta.neg()).unwrap();
            let n2 = s.algebra().structure().get(nb, rs.id_of(mu).unwrap()).square();
            for a in 0..2 {
                assert_eq!(lookup(pos(r, a), pos(mu_id, a)), n2 / Q::from_integer(4), "{name}");
                assert_eq!(n2 / Q::from_integer(4), q(1, 8 * (m + 1)));
            }
        }
    }
}

#[test]
fn sign_convention_does_not_change_curvature() {
    for name in ["cp3-sp", "cp5-sp", "s6", "f6"] {
        let p = presets::lookup(name).unwrap();
        let rs = RootSystem::new(p.ty).unwrap();
        let flipped = ChevalleyTable::with_extraspecial_signs(&rs, |k| if k % 2 == 0 { -1 } else { 1 }).unwrap();
        let st = StructureTable::from_chevalley(&rs, flipped).unwrap();
        let s1 = ThreeSymSpace::new(CompactAlgebra::new(rs.clone(), st), p.spec).unwrap();
        let s0 = p.build().unwrap();
        let k0 = Curvature::new(&s0, MetricSpec::default()).unwrap();
        let k1 = Curvature::new(&s1, MetricSpec::default()).unwrap();
        assert_eq!(k0.basis_table(), k1.basis_table(), "{name}");
        let cfg = PinchConfig { starts: 16, ..Default::default() };
        let (o0, o1) = (pinch(&k0, &cfg).unwrap(), pinch(&k1, &cfg).unwrap());
        assert!((o0.kmin - o1.kmin).abs() <= 1e-10, "{name}");
        assert!((o0.kmax - o1.kmax).abs() <= 1e-10, "{name}");
        assert!((k0.ricci().einstein_defect - k1.ricci().einstein_defect).abs() <= 1e-10);
        assert!(s1.verify_quasi_kahler().ok());
    }
}

#[test]
fn optimizer_brackets_basis_table() {
    for name in presets::NAMES {
        let k = model(name);
        let out = pinch(&k, &PinchConfig { starts: 16, ..Default::default() }).unwrap();
        for e in k.basis_table() {
            let v = to_f64(&e.k);
            assert!(out.kmin <= v + 1e-8 && v <= out.kmax + 1e-8, "{name}: {v} outside [{}, {}]", out.kmin, out.kmax);
        }
        assert!(out.kmin >= -1e-12);
        let p = Plane::new(&out.argmax.x, &out.argmax.y).unwrap();
        assert!((k.plane_curvature(&p) - out.kmax).abs() < 1e-12);
    }
}

#[test]
fn rank_one_and_other_types_build() {
    let t: DynkinType = "A1".parse().unwrap();
    assert!(CompactAlgebra::from_type(t).is_ok());
    for t in ["E6", "E7", "E8"] {
        let rs = RootSystem::new(t.parse().unwrap()).unwrap();
        for spec in trisym::threesym::enumerate_order3(&rs, false) {
            let s = ThreeSymSpace::from_type(rs.dynkin_type(), spec).unwrap();
            s.check_reductive().unwrap();
        }
    }
}
