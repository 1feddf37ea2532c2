use braidforge::anyon::{dim_space, AnyonModel};
use braidforge::braid::{parse_braid, BraidWord};
use braidforge::jonesrep::*;
use braidforge::ring::cmat::{c, from_rows, identity, kron, mat_pow, max_abs_diff, ComplexMatrix};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn xi() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 5.0)
}

fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn fib_rep() -> RepMatrices {
    braid_generator_matrices(&AnyonModel::new(3).unwrap(), 2, 3, 2).unwrap()
}

fn sectors(k: u32, leaf: u32, n: usize) -> Vec<u32> {
    let m = AnyonModel::new(k).unwrap();
    m.labels().into_iter().filter(|&c| dim_space(&m, leaf, n, c).unwrap() > 0).collect()
}

#[test]
fn ising_sigma_one() {
    let m = AnyonModel::new(2).unwrap();
    let a = m.params().a;
    let rep = braid_generator_matrices(&m, 1, 4, 0).unwrap();
    let labels: Vec<_> = rep.basis.iter().map(|t| t.labels.clone()).collect();
    assert_eq!(labels, vec![vec![0, 1, 0], vec![2, 1, 0]]);
    let expect = from_rows(&[vec![-a.powi(-3), c(0.0, 0.0)], vec![c(0.0, 0.0), a]]);
    assert!(max_abs_diff(&rep.generators[0], &expect) < 1e-12);
}

#[test]
fn fibonacci_generators() {
    let rep = fib_rep();
    let labels: Vec<_> = rep.basis.iter().map(|t| t.labels.clone()).collect();
    assert_eq!(labels, vec![vec![0, 2], vec![2, 2]]);
    let (x, p) = (xi(), phi());
    let z = c(0.0, 0.0);
    let s1 = from_rows(&[vec![x.powi(-2), z], vec![z, -x.inv()]]);
    let s2 = from_rows(&[
        vec![x * x / p, -x / p.sqrt()],
        vec![-x / p.sqrt(), c(-1.0 / p, 0.0)],
    ]);
    assert!(max_abs_diff(&rep.generators[0], &s1) < 1e-9);
    assert!(max_abs_diff(&rep.generators[1], &s2) < 1e-9);
}

#[test]
fn fibonacci_determinant() {
    let rep = fib_rep();
    let w = parse_braid("1 1 1 1 2", 3).unwrap();
    let u = rep.image(&w).unwrap();
    let det = u.determinant();
    // the product of the two eigenvalues is -1 for this basis normalization
    assert!((det - c(-1.0, 0.0)).norm() < 1e-9, "{det}");
    let trace = u.trace();
    let x = xi();
    let expect = (x.powi(4) - x) / phi();
    assert!((trace - expect).norm() < 1e-9);
}

#[test]
fn tl_relations_for_all_small_levels() {
    for k in 1..=4 {
        let m = AnyonModel::new(k).unwrap();
        let d = m.params().d;
        for n in 2..=8 {
            for charge in sectors(k, 1, n) {
                let us = tl_generator_matrices(&m, 1, n, charge).unwrap();
                let res = tl_relation_residual(&us, d);
                assert!(res < 1e-9, "k={k} n={n} charge={charge}: {res}");
            }
        }
    }
}

#[test]
fn colored_tl_relations() {
    let m = AnyonModel::new(3).unwrap();
    let d = loop_value(&m, 2).unwrap();
    assert!((d - phi()).abs() < 1e-12);
    for n in 2..=8 {
        for charge in sectors(3, 2, n) {
            let us = tl_generator_matrices(&m, 2, n, charge).unwrap();
            assert!(tl_relation_residual(&us, d) < 1e-9, "n={n} charge={charge}");
        }
    }
    let us = tl_generator_matrices(&m, 2, 3, 2).unwrap();
    assert_eq!(us[0].shape(), (2, 2));
}

#[test]
fn two_strand_sectors() {
    let m = AnyonModel::new(2).unwrap();
    let d = m.params().d;
    assert!((tl_generator_matrices(&m, 1, 2, 0).unwrap()[0][(0, 0)] - c(d, 0.0)).norm() < 1e-12);
    assert!(tl_generator_matrices(&m, 1, 2, 2).unwrap()[0][(0, 0)].norm() < 1e-12);
    assert!(tl_generator_matrices(&m, 1, 2, 1).is_err());
}

#[test]
fn jones_wenzl_vanishes_in_the_quotient() {
    for k in 1..=4u32 {
        let m = AnyonModel::new(k).unwrap();
        let n = (k + 1) as usize;
        for charge in sectors(k, 1, n) {
            let us = tl_generator_matrices(&m, 1, n, charge).unwrap();
            assert!(jw_vanishing_residual(&m, &us).unwrap() < 1e-9, "k={k} charge={charge}");
        }
    }
}

#[test]
fn representation_invariants() {
    for k in 1..=4 {
        for n in 2..=8 {
            for charge in sectors(k, 1, n) {
                let rep = braid_generator_matrices(&AnyonModel::new(k).unwrap(), 1, n, charge).unwrap();
                let res = braid_relation_residual(&rep.generators);
                assert!(res < 1e-9, "k={k} n={n} charge={charge}: {res}");
            }
        }
    }
    for n in 2..=8 {
        for charge in sectors(3, 2, n) {
            let rep = braid_generator_matrices(&AnyonModel::new(3).unwrap(), 2, n, charge).unwrap();
            assert!(braid_relation_residual(&rep.generators) < 1e-9);
        }
    }
}

#[test]
fn recoupled_route_agrees_at_level_two() {
    let m = AnyonModel::new(2).unwrap();
    for n in 2..=6 {
        for charge in sectors(2, 1, n) {
            let path = braid_generator_matrices(&m, 1, n, charge).unwrap();
            let fr = braid_generator_matrices_recoupled(&m, 1, n, charge).unwrap();
            for (x, y) in path.generators.iter().zip(&fr.generators) {
                // equal up to a diagonal sign gauge, so compare entrywise moduli and spectra
                for (a, b) in x.iter().zip(y.iter()) {
                    assert!((a.norm() - b.norm()).abs() < 1e-9);
                }
                assert!((x.trace() - y.trace()).norm() < 1e-9);
            }
            assert!(braid_relation_residual(&fr.generators) < 1e-9);
        }
    }
}

#[test]
fn level_one_is_one_dimensional() {
    let m = AnyonModel::new(1).unwrap();
    for n in 1..=12 {
        let total: u64 = m.labels().iter().map(|&c| dim_space(&m, 1, n, c).unwrap()).sum();
        assert_eq!(total, 1, "n={n}");
    }
    let rep = braid_generator_matrices(&m, 1, 4, 0).unwrap();
    assert_eq!(rep.dim(), 1);
}

#[test]
fn clifford_identities() {
    let m = AnyonModel::new(2).unwrap();
    for n in 3..=8 {
        for r in clifford_residuals(&m, n).unwrap() {
            assert!(r.max() < 1e-9, "n={n} charge={}: {r:?}", r.charge);
        }
        assert!(clifford_relations_check(n).unwrap());
    }
    let charges: Vec<_> = clifford_residuals(&m, 4).unwrap().iter().map(|r| r.charge).collect();
    assert_eq!(charges, vec![0, 2]);
    assert!(clifford_residuals(&AnyonModel::new(3).unwrap(), 4).is_err());
    assert!(clifford_relations_check(9).is_err());
}

#[test]
fn level_two_images_are_finite() {
    let m = AnyonModel::new(2).unwrap();
    let mut sizes = Vec::new();
    for (n, charge) in [(3, 1), (4, 0), (4, 2)] {
        let rep = braid_generator_matrices(&m, 1, n, charge).unwrap();
        let report = closure_bfs(&rep.generators, 100_000, 1e-9, true).unwrap();
        assert!(report.is_finite(), "n={n} charge={charge}");
        sizes.push(report.elements);
    }
    let again = closure_bfs(&braid_generator_matrices(&m, 1, 3, 1).unwrap().generators, 100_000, 1e-9, true).unwrap();
    assert_eq!(again.elements, sizes[0]);
    // projective Clifford group on one qubit
    assert_eq!(sizes, vec![24, 24, 24]);
}

#[test]
fn fibonacci_image_is_large() {
    let rep = fib_rep();
    let report = closure_bfs(&rep.generators, 100_000, 1e-9, true).unwrap();
    assert_eq!(report.status, ClosureStatus::Exceeded(100_000));
}

#[test]
fn closure_rejects_non_unitary() {
    let m = from_rows(&[vec![c(2.0, 0.0)]]);
    assert!(closure_bfs(&[m], 10, 1e-9, false).is_err());
    assert!(closure_bfs(&[identity(1)], 2_000_000, 1e-9, false).is_err());
}

#[test]
fn order_evidence() {
    let rep = fib_rep();
    let (s1, s2) = (&rep.generators[0], &rep.generators[1]);
    assert_eq!(infinite_order_evidence(s1, 10_000, 1e-9), OrderEvidence::Finite(10));
    assert_eq!(infinite_order_evidence(&identity(2), 10, 1e-9), OrderEvidence::Finite(1));
    // eigenphases -π/5 and -4π/5
    assert_eq!(infinite_order_evidence(&(s2 * mat_pow(s1, 4)), 10_000, 1e-9), OrderEvidence::Finite(10));
    let ev = infinite_order_evidence(&(s2 * mat_pow(s1, 9)), 10_000, 1e-9);
    assert!(ev.suggests_infinite(), "{ev:?}");
}

#[test]
fn gates() {
    let g = gate_library();
    assert!(max_abs_diff(&(&g.h * &g.h), &identity(2)) < 1e-12);
    assert!(max_abs_diff(&mat_pow(&g.t, 8), &identity(2)) < 1e-12);
    assert!(max_abs_diff(&(&g.cnot * &g.cnot), &identity(4)) < 1e-12);
    let mut ev: Vec<f64> = braidforge::ring::cmat::eigenvalues(&g.cnot).iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    assert_eq!(ev.iter().map(|x| x.round() as i32).collect::<Vec<_>>(), vec![-1, 1, 1, 1]);
    assert!(is_entangling(&g.cnot, 1e-9).unwrap());
    assert!(!is_entangling(&kron(&g.h, &g.t), 1e-9).unwrap());
    assert!(!is_entangling(&g.swap, 1e-9).unwrap());
    assert!(is_entangling(&(ComplexMatrix::zeros(4, 4)), 1e-9).is_err());
}

fn leaf_one_rep() -> impl Strategy<Value = (u32, usize, usize)> {
    (2u32..=4, 2usize..=6, 0usize..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn skein_quadratic((k, n, pick) in leaf_one_rep()) {
        let m = AnyonModel::new(k).unwrap();
        let ss = sectors(k, 1, n);
        let charge = ss[pick % ss.len()];
        let rep = braid_generator_matrices(&m, 1, n, charge).unwrap();
        let a = m.params().a;
        let id = identity(rep.dim());
        for g in &rep.generators {
            let rhs = g * (a - a.powi(-3)) + &id * a.powi(-2);
            prop_assert!(max_abs_diff(&(g * g), &rhs) < 1e-9);
        }
    }

    #[test]
    fn image_is_antihomomorphic(x in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..8),
                                y in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..8)) {
        let rep = fib_rep();
        let bx = BraidWord::new(3, x).unwrap();
        let by = BraidWord::new(3, y).unwrap();
        let lhs = rep.image(&bx.concat(&by).unwrap()).unwrap();
        let rhs = rep.image(&by).unwrap() * rep.image(&bx).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-9);
        let inv = rep.image(&bx.inverse()).unwrap() * rep.image(&bx).unwrap();
        prop_assert!(max_abs_diff(&inv, &identity(2)) < 1e-9);
    }
}
