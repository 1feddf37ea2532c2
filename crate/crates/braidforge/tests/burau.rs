use braidforge::braid::{parse_braid, random_markov_walk, underlying_permutation, BraidWord};
use braidforge::burau::*;
use braidforge::ring::{LaurentPoly, Var};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn t() -> LaurentPoly {
    LaurentPoly::var_poly(Var::T)
}

fn one() -> LaurentPoly {
    LaurentPoly::one(Var::T)
}

fn tb() -> LaurentPoly {
    LaurentPoly::monomial(Var::T, 1, -1)
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

#[test]
fn sigma_one_and_inverse() {
    let z = LaurentPoly::zero(Var::T);
    let s = unreduced_burau(&parse_braid("1", 2).unwrap());
    assert_eq!(s, LaurentMatrix::from_rows(vec![vec![&one() - &t(), t()], vec![one(), z.clone()]]));
    let si = unreduced_burau(&parse_braid("-1", 2).unwrap());
    assert_eq!(si, LaurentMatrix::from_rows(vec![vec![z, one()], vec![tb(), &one() - &tb()]]));
    assert_eq!(&s * &si, LaurentMatrix::identity(2));
}

#[test]
fn four_strand_first_row() {
    let m = unreduced_burau(&parse_braid("1 2 3", 4).unwrap());
    let omt = &one() - &t();
    let expect = vec![omt.clone(), &t() * &omt, &t().pow(2) * &omt, t().pow(3)];
    assert_eq!(m.row(0), expect.as_slice());
    for i in 1..4 {
        for j in 0..4 {
            let want = if j + 1 == i { one() } else { LaurentPoly::zero(Var::T) };
            assert_eq!(m.get(i, j), &want);
        }
    }
}

#[test]
fn gauss_braid() {
    let (t, one, tb) = (t(), one(), tb());
    let z = LaurentPoly::zero(Var::T);
    let omt = &one - &t;
    let omtb = &one - &tb;
    let expect = LaurentMatrix::from_rows(vec![
        vec![z.clone(), one.clone(), z.clone(), z.clone()],
        vec![&(&t * &tb) + &(&(&omt * &omt) * &tb), &(&t * &omtb) + &(&(&omt * &omt) * &omtb), z.clone(), &omt * &t],
        vec![z.clone(), z.clone(), tb.clone(), omtb.clone()],
        vec![&(&tb * &tb) * &omt, &(&tb * &omt) * &omtb, &omtb * &tb, &(&omtb * &omtb) + &(&tb * &t)],
    ]);
    assert_eq!(unreduced_burau(&parse_braid("-3 2 2 -3 -1", 4).unwrap()), expect);
}

#[test]
fn reduced_generator_columns() {
    // σ_1 v_1 = -t v_1 and σ_1 v_2 = t v_1 + v_2, by direct restriction
    let m = reduced_burau(&parse_braid("1", 3).unwrap()).unwrap();
    assert_eq!(m.get(0, 0), &-t());
    assert_eq!(m.get(1, 0), &LaurentPoly::zero(Var::T));
    assert_eq!(m.get(0, 1), &t());
    assert_eq!(m.get(1, 1), &one());
    assert_eq!(reduced_burau(&BraidWord::identity(4)).unwrap(), LaurentMatrix::identity(3));
}

#[test]
fn unknot_and_trefoil() {
    assert_eq!(alexander(&BraidWord::identity(1)).unwrap(), one());
    assert_eq!(alexander(&parse_braid("1", 2).unwrap()).unwrap(), one());
    assert_eq!(alexander(&parse_braid("1 2", 3).unwrap()).unwrap(), one());
    assert_eq!(alexander(&parse_braid("1 1 1", 2).unwrap()).unwrap().to_string(), "1 - t + t^2");
    assert_eq!(conway_z(&parse_braid("1 1 1", 2).unwrap()).unwrap().to_string(), "1 + z^2");
    assert_eq!(conway_z(&parse_braid("1 -2 1 -2", 3).unwrap()).unwrap().to_string(), "1 - z^2");
    assert_eq!(conway_z(&BraidWord::identity(1)).unwrap(), LaurentPoly::one(Var::Z));
}

#[test]
fn skein_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let z = LaurentPoly::from_terms2(Var::T, [(1, 1), (-1, -1)]);
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        let b = random_word(&mut rng, n, 9);
        let i = rng.gen_range(1..n as i32);
        let plus = b.concat(&BraidWord::generator(n, i).unwrap()).unwrap();
        let minus = b.concat(&BraidWord::generator(n, -i).unwrap()).unwrap();
        let lhs = &conway(&plus).unwrap() - &conway(&minus).unwrap();
        assert_eq!(lhs, &z * &conway(&b).unwrap(), "b = {b}, i = {i}");
    }
}

#[test]
fn markov_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..20 {
        let n = rng.gen_range(2..=4);
        let b = random_word(&mut rng, n, 8);
        let walked = random_markov_walk(&b, 6, k);
        assert_eq!(alexander(&b).unwrap(), alexander(&walked).unwrap(), "{b} vs {walked}");
    }
}

#[test]
fn det_lemma_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    assert!(det_lemma_check(&parse_braid("1 1 1", 2).unwrap()));
    assert!(det_lemma_check(&BraidWord::identity(3)));
    for _ in 0..20 {
        let b = random_word(&mut rng, 4, 12);
        assert!(det_lemma_check(&b), "{b}");
    }
}

#[test]
fn j_unitarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let b = random_word(&mut rng, n, 10);
        let s = Complex64::from_polar(1.0, rng.gen_range(0.1..3.0));
        let (x, j) = unitarize(&b, s).unwrap();
        assert!(j_unitarity_residual(&x, &j) < 1e-9, "{b}");
    }
    let (x, j) = unitarize(&BraidWord::identity(3), Complex64::from_polar(1.0, 0.4)).unwrap();
    assert!(j_unitarity_residual(&x, &j) < 1e-15);
    assert!(unitarize(&BraidWord::identity(3), Complex64::new(2.0, 0.0)).is_err());
}

#[test]
fn positive_range_for_three_strands() {
    use std::f64::consts::PI;
    let (lo, hi) = positive_theta_range(3, 3600).unwrap();
    assert!((lo + PI / 3.0).abs() < 0.01, "{lo}");
    assert!((hi - PI / 3.0).abs() < 0.01, "{hi}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rows_sum_to_one_and_left_invariance(n in 2usize..=6, raw in prop::collection::vec((1i32..6, any::<bool>()), 0..10)) {
        let letters: Vec<i32> = raw.into_iter().map(|(g, s)| { let g = (g - 1) % (n as i32 - 1) + 1; if s { g } else { -g } }).collect();
        let b = BraidWord::new(n, letters).unwrap();
        let m = unreduced_burau(&b);
        for i in 0..n {
            let sum = m.row(i).iter().fold(LaurentPoly::zero(Var::T), |acc, x| &acc + x);
            prop_assert_eq!(sum, one());
        }
        for j in 0..n {
            let mut acc = LaurentPoly::zero(Var::T);
            for i in 0..n {
                acc = &acc + &(&t().pow(i as u32) * m.get(i, j));
            }
            prop_assert_eq!(acc, t().pow(j as u32));
        }
        let at_one = m.eval_half(Complex64::new(1.0, 0.0));
        let perm = underlying_permutation(&b);
        let mut expect = vec![vec![0.0; n]; n];
        for (i, j) in perm.matrix_entries() {
            expect[i][j] = 1.0;
        }
        for i in 0..n {
            for j in 0..n {
                prop_assert!((at_one[(i, j)].re - expect[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn homomorphism(n in 2usize..=5, x in prop::collection::vec(-4i32..=4, 0..8), y in prop::collection::vec(-4i32..=4, 0..8)) {
        let fix = |v: Vec<i32>| -> Vec<i32> { v.into_iter().filter(|&l| l != 0).map(|l| l.signum() * ((l.abs() - 1) % (n as i32 - 1) + 1)).collect() };
        let a = BraidWord::new(n, fix(x)).unwrap();
        let b = BraidWord::new(n, fix(y)).unwrap();
        let ab = unreduced_burau(&a.concat(&b).unwrap());
        prop_assert_eq!(ab, &unreduced_burau(&a) * &unreduced_burau(&b));
        prop_assert_eq!(&unreduced_burau(&a) * &unreduced_burau(&a.inverse()), LaurentMatrix::identity(n));
    }
}
