use braidforge::anyon::{dim_space, AnyonModel};
use braidforge::jonesrep::{braid_relation_residual, closure_bfs};
use braidforge::localize::*;
use braidforge::ring::cmat::{identity, max_abs_diff, op_norm};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn identity_solves_ybe() {
    let r = YBOperator::new(identity(4)).unwrap();
    assert_eq!(check_ybe(&r), 0.0);
    assert_eq!(r.w, 2);
}

#[test]
fn family_solves_ybe_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..2.0 * PI));
        let r = family_r(a).unwrap();
        assert!(check_ybe(&r) < 1e-12 * (1.0 + a.norm().powi(6)), "{a}: {}", check_ybe(&r));
    }
    for k in 0..20 {
        let a = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 20.0);
        let r = family_r(a).unwrap();
        assert!(check_ybe(&r) < 1e-12);
        assert!((r.r[(1, 2)] - a.conj()).norm() < 1e-15);
    }
}

#[test]
fn family_unitary_exactly_at_fourth_roots() {
    for k in 0..24 {
        let a = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 24.0);
        let fourth_root = k % 6 == 0;
        assert_eq!(unitarity_boundary(a, 1e-9).unwrap(), fourth_root, "k={k}");
    }
    assert!(!unitarity_boundary(Complex64::new(2.0, 0.0), 1e-9).unwrap());
    let a = Complex64::from_polar(1.0, PI / 3.0);
    assert!(!unitarity_boundary(a, 1e-9).unwrap());
    assert!(check_ybe(&family_r(a).unwrap()) < 1e-12);
    assert!(family_r(Complex64::new(0.0, 0.0)).is_err());
}

#[test]
fn fixture_digests() {
    assert_eq!(fixture_names(), vec!["ising", "level4"]);
    assert_eq!(fixture_digest("ising").unwrap(), "5dee96599df0942b6c3ad7b4039289696f2083bb79b8330e9f40d46430885ded");
    assert_eq!(fixture_digest("level4").unwrap(), "cb43d13c008b4cdc7ef028ed671e68e8f0e8ef9734775e4268ecd22611190584");
    assert!(load_fixture("nope").is_err());
}

#[test]
fn ising_localization_properties() {
    let r = ising_localization();
    assert_eq!(r.w, 2);
    assert!(r.unitarity_residual() <= 1e-12);
    assert!(check_ybe(&r) <= 1e-12);
    // R⁴ is scalar
    assert_eq!(projective_order(&r.r, 64, 1e-9), Some(4));
    let gens = rmatrix_generators(&r, 3).unwrap();
    assert!(braid_relation_residual(&gens) <= 1e-9);
    let report = closure_bfs(&gens, 100_000, 1e-9, true).unwrap();
    assert!(report.is_finite());
}

#[test]
fn level4_localization_properties() {
    let r = level4_localization();
    assert_eq!(r.w, 3);
    assert!(r.unitarity_residual() <= 1e-12);
    assert!(check_ybe(&r) <= 1e-9);
    for row in r.r.row_iter() {
        let n: f64 = row.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);
        assert_eq!(row.iter().filter(|z| z.norm() > 1e-9).count(), 3);
        for z in row.iter().filter(|z| z.norm() > 1e-9) {
            assert!((z.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
    }
    // entry (1,5) is the ω-free i/√3, and the printed pattern is symmetric there
    let i3 = Complex64::new(0.0, 1.0 / 3f64.sqrt());
    assert!((r.r[(0, 4)] - i3).norm() < 1e-12);
    assert!((r.r[(8, 0)] - i3).norm() < 1e-12);
    for n in 3..=4 {
        let gens = rmatrix_generators(&r, n).unwrap();
        assert!(braid_relation_residual(&gens) <= 1e-8, "n={n}");
    }
}

#[test]
fn kronecker_placement() {
    let r = ising_localization();
    assert!(max_abs_diff(&rmatrix_representation(&r, 2, 1).unwrap(), &r.r) == 0.0);
    let g1 = rmatrix_representation(&r, 4, 1).unwrap();
    let g3 = rmatrix_representation(&r, 4, 3).unwrap();
    assert_eq!(op_norm(&(&g1 * &g3 - &g3 * &g1)), 0.0);
    assert!(rmatrix_representation(&r, 15, 1).is_err());
    assert!(rmatrix_representation(&r, 4, 4).is_err());
}

#[test]
fn bratteli_examples() {
    let g = InclusionData::new(vec![vec![2, 1], vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(bratteli_dims(&g, &[1, 1, 2], 1).unwrap()[1], vec![4, 2]);
    let id = InclusionData::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
    assert!(bratteli_dims(&id, &[3, 5], 6).unwrap().iter().all(|d| d == &[3, 5]));
    assert!(bratteli_dims(&g, &[1, 1], 1).is_err());
    let fib = bratteli_dims(&InclusionData::fibonacci(), &[1, 1], 5).unwrap();
    assert_eq!(fib, vec![vec![1, 1], vec![1, 2], vec![2, 3], vec![3, 5], vec![5, 8], vec![8, 13]]);
}

#[test]
fn bratteli_matches_anyon_dimensions() {
    let m = AnyonModel::new(3).unwrap();
    let dims = bratteli_dims(&InclusionData::fibonacci(), &[0, 1], 11).unwrap();
    for (i, d) in dims.iter().enumerate() {
        let n = i + 1;
        let expect = vec![dim_space(&m, 2, n, 0).unwrap(), dim_space(&m, 2, n, 2).unwrap()];
        assert_eq!(d, &expect, "n={n}");
    }
}

#[test]
fn fibonacci_certificate() {
    for d in 2..=10u64 {
        let cert = fib_nonlocal_certificate(d, 12).unwrap();
        assert!(cert.contradiction_at.is_some(), "d={d}");
        for step in &cert.steps {
            assert!(step.contradicts());
            // the pulled-back inner product always reproduces d^n
            assert!(step.pulled_back.iter().all(|v| *v == step.target));
            for (a, b) in &step.endpoints {
                assert!(*a >= BigInt::from(1) && *b >= BigInt::from(1));
            }
        }
    }
    assert!(fib_nonlocal_certificate(2, 31).is_err());
}

#[test]
fn symmetric_inclusion_identity() {
    // ⟨(a,b), G(x,y)⟩ = ⟨G(a,b), (x,y)⟩ because G is symmetric
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f: Vec<i64> = (0..40).scan((0i64, 1i64), |s, _| {
        let out = s.0;
        *s = (s.1, s.0 + s.1);
        Some(out)
    })
    .collect();
    let g = |x: i64, y: i64| (y, x + y);
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
        let n = rng.gen_range(2..35);
        let (gx, gy) = g(f[n - 2], f[n - 1]);
        assert_eq!((gx, gy), (f[n - 1], f[n]));
        let (ga, gb) = g(a, b);
        assert_eq!(a * gx + b * gy, ga * f[n - 2] + gb * f[n - 1]);
    }
}
