//! Temperley-Lieb diagram algebra, the Kauffman bracket, the Jones polynomial
//! and Jones-Wenzl projectors.
//!
//! Products read top to bottom: `x · y` is `x` stacked on `y`, so the bracket
//! of the word `b1 b2` is `⟨b2⟩⟨b1⟩`.

mod diagram;
mod element;

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;

pub use diagram::{enumerate_basis, TLDiagram};
pub use element::{bracket_loop_value, generic_loop_value, Scalar, TLElement};

use crate::braid::{writhe, BraidWord};
use crate::burau::LaurentMatrix;
use crate::error::{Error, Result};
use crate::ring::{chebyshev_in, LaurentPoly, RationalFunction, Var};

fn a_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Var::A, 1, e)
}

/// Element of `TL_n` over `Z[A^{±1}]`.
pub type BracketElement = TLElement<LaurentPoly>;

/// Element of `TL_n` over `Q(d)`.
pub type GenericElement = TLElement<RationalFunction>;

pub fn compose(d1: &TLDiagram, d2: &TLDiagram) -> Result<(TLDiagram, usize)> {
    d1.compose(d2)
}

pub fn markov_trace<S: Scalar>(x: &TLElement<S>) -> S {
    x.markov_trace()
}

/// Resolves every crossing as `σ_i = A + A⁻¹u_i` and multiplies out.
pub fn kauffman_bracket(b: &BraidWord) -> BracketElement {
    let n = b.strands();
    let lv = bracket_loop_value();
    let mut x = TLElement::identity(n, lv.clone());
    let (a, a_inv) = (a_pow(1), a_pow(-1));
    for &l in b.letters() {
        let u = TLDiagram::u(n, l.unsigned_abs() as usize);
        let (c_id, c_u) = if l > 0 { (&a, &a_inv) } else { (&a_inv, &a) };
        let mut next = x.scale(c_id);
        for (d, c) in x.terms() {
            let (e, loops) = u.compose_unchecked(d);
            let mut coeff = c * c_u;
            if loops > 0 {
                coeff = &coeff * &lv.pow(loops as u32);
            }
            next.add_term(e, coeff);
        }
        x = next;
    }
    x
}

/// Jones polynomial in the Kauffman variable: `(-A^{-3})^{e} Tr⟨b⟩ / d`.
pub fn jones_in_a(b: &BraidWord) -> Result<LaurentPoly> {
    let tr = kauffman_bracket(b).markov_trace();
    let e = writhe(b);
    let unit = LaurentPoly::monomial(Var::A, if e % 2 == 0 { 1 } else { -1 }, -3 * e);
    (&unit * &tr)
        .div_exact(&bracket_loop_value())
        .map(|p| p.with_var(Var::A))
        .ok_or_else(|| Error::Numeric("trace not divisible by the loop value".into()))
}

/// Jones polynomial in `q = A^{-4}`, possibly with half-integer exponents.
pub fn jones(b: &BraidWord) -> Result<LaurentPoly> {
    let pa = jones_in_a(b)?;
    pa.substitute_power(Var::Q, -1, 4).ok_or_else(|| Error::Numeric(format!("{pa} is not a polynomial in q^(1/2)")))
}

/// Jones evaluated at a numeric `q` (principal root for half powers).
pub fn jones_numeric(b: &BraidWord, q: Complex64) -> Result<Complex64> {
    jones(b)?.eval(q)
}

/// Jones evaluated at a numeric Kauffman variable.
pub fn jones_at_a(b: &BraidWord, a: Complex64) -> Result<Complex64> {
    jones_in_a(b)?.eval(a)
}

/// Kauffman bracket of the plat closure, cups and caps on `(1,2), (3,4), ...`.
pub fn plat_bracket(b: &BraidWord) -> Result<LaurentPoly> {
    if b.strands() % 2 != 0 {
        return Err(Error::Invalid(format!("plat closure needs an even strand count, got {}", b.strands())));
    }
    Ok(kauffman_bracket(b).closure_value(TLDiagram::plat_loops).with_var(Var::A))
}

pub fn plat_bracket_at(b: &BraidWord, a: Complex64) -> Result<Complex64> {
    plat_bracket(b)?.eval(a)
}

/// `M_ij = Tr(D̄_i D_j)` over `Z[d]`, basis in [`enumerate_basis`] order.
pub fn gram_matrix(n: usize) -> Result<LaurentMatrix> {
    if n > 5 {
        return Err(Error::Cap(format!("Gram matrix supports n <= 5, got {n}")));
    }
    let basis = enumerate_basis(n)?;
    let rows = basis
        .iter()
        .map(|di| {
            let bar = di.reflect();
            basis
                .iter()
                .map(|dj| {
                    let (e, loops) = bar.compose_unchecked(dj);
                    LaurentPoly::monomial(Var::D, 1, (loops + e.trace_loops()) as i64)
                })
                .collect()
        })
        .collect();
    Ok(LaurentMatrix::from_rows(rows))
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exponent `a_{n,i}` of `Δ_i` in the Gram determinant.
pub fn gram_exponent(n: i64, i: i64) -> BigInt {
    binom(2 * n, n - i - 2) + binom(2 * n, n - i) - BigInt::from(2) * binom(2 * n, n - i - 1)
}

/// `∏ Δ_i(d)^{a_{n,i}}`.
pub fn gram_det_formula(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(Var::D);
    for i in 1..=n {
        let e: u32 = gram_exponent(n as i64, i as i64).try_into().expect("nonnegative exponent");
        acc = &acc * &chebyshev_in(i, Var::D).pow(e);
    }
    acc
}

pub fn gram_det(n: usize) -> Result<LaurentPoly> {
    Ok(gram_matrix(n)?.det().with_var(Var::D))
}

/// Brute-force Gram determinant against the product formula.
pub fn gram_det_check(n: usize) -> Result<bool> {
    Ok(gram_det(n)? == gram_det_formula(n))
}

type PolyElement = TLElement<LaurentPoly>;

fn d_poly() -> LaurentPoly {
    LaurentPoly::var_poly(Var::D)
}

/// `p_{n+1} = p_n⊗1 − (Δ_{n−1}/Δ_n)(p_n⊗1)u_n(p_n⊗1)`, kept as an element
/// over `Z[d]` with one common denominator.
fn jw_step(p: &PolyElement, den: &LaurentPoly, n: usize) -> (PolyElement, LaurentPoly) {
    let x = p.tensor(&TLElement::identity(1, d_poly()));
    let u = TLElement::u(n + 1, n, d_poly());
    let xux = x.mul(&u).unwrap().mul(&x).unwrap();
    let dn = chebyshev_in(n, Var::D);
    let dn1 = chebyshev_in(n - 1, Var::D);
    let num = x.scale(&(den * &dn)).sub(&xux.scale(&dn1));
    let new_den = &(den * den) * &dn;
    let mut g = new_den.clone();
    for (_, c) in num.terms() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_one() {
        return (num, new_den);
    }
    let reduced = num.map(d_poly(), |c| c.div_exact(&g).expect("gcd divides"));
    (reduced, new_den.div_exact(&g).expect("gcd divides"))
}

fn jw_cache() -> &'static Mutex<Vec<(PolyElement, LaurentPoly)>> {
    static CACHE: OnceLock<Mutex<Vec<(PolyElement, LaurentPoly)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![(TLElement::identity(1, d_poly()), LaurentPoly::one(Var::D))]))
}

pub(crate) fn jones_wenzl_unchecked(n: usize) -> GenericElement {
    assert!(n >= 1);
    let mut cache = jw_cache().lock().unwrap();
    while cache.len() < n {
        let k = cache.len();
        let (p, den) = &cache[k - 1];
        let next = jw_step(p, den, k);
        cache.push(next);
    }
    let (p, den) = &cache[n - 1];
    p.map(generic_loop_value(), |c| RationalFunction::new(c.clone().with_var(Var::D), den.clone()).unwrap())
}

/// Jones-Wenzl projector `p_n` over `Q(d)`.
pub fn jones_wenzl(n: usize) -> Result<GenericElement> {
    if !(1..=8).contains(&n) {
        return Err(Error::Cap(format!("Jones-Wenzl projectors supported for 1 <= n <= 8, got {n}")));
    }
    Ok(jones_wenzl_unchecked(n))
}

/// Number of diagrams with nonzero coefficient in `p_n`, and `c_n`.
pub fn jw_support(n: usize) -> Result<(usize, usize)> {
    let p = jones_wenzl(n)?;
    Ok((p.len(), enumerate_basis(n)?.len()))
}

fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RationalFunction {
    RationalFunction::new(
        LaurentPoly::from_terms(Var::D, num.iter().copied()),
        LaurentPoly::from_terms(Var::D, den.iter().copied()),
    )
    .unwrap()
}

/// `e₁ = 1 − u₁/d`, `e₂ = u₁/d` in `TL_2`.
pub fn matrix_units_tl2() -> (GenericElement, GenericElement) {
    let lv = generic_loop_value();
    let u = TLElement::u(2, 1, lv.clone());
    let e2 = u.scale(&rf(&[(0, 1)], &[(1, 1)]));
    let e1 = TLElement::identity(2, lv).sub(&e2);
    (e1, e2)
}

/// `p₃` and the unnormalized `ẽ_ij` of `TL_3`, indexed `[i-1][j-1]`.
///
/// The units compose as `ẽ_kl · ẽ_ij = δ_jk λ_j ẽ_il` in this crate's product
/// order, with `λ_1 = d` and `λ_2 = d − 1/d`. `ẽ_12` is the reflection of `ẽ_21`.
pub fn matrix_units_tl3() -> (GenericElement, [[GenericElement; 2]; 2]) {
    let lv = generic_loop_value();
    let u1 = TLElement::u(3, 1, lv.clone());
    let u2 = TLElement::u(3, 2, lv.clone());
    let u1u2 = u1.mul(&u2).unwrap();
    let u2u1 = u2.mul(&u1).unwrap();
    let inv_d = rf(&[(0, 1)], &[(1, 1)]);
    let inv_d2 = rf(&[(0, 1)], &[(2, 1)]);
    let e11 = u1.clone();
    let e21 = u1u2.sub(&u1.scale(&inv_d));
    let e12 = u2u1.sub(&u1.scale(&inv_d));
    let e22 = u2.sub(&u1u2.scale(&inv_d)).sub(&u2u1.scale(&inv_d)).add(&u1.scale(&inv_d2));
    (jones_wenzl_unchecked(3), [[e11, e12], [e21, e22]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn w(s: &str, n: usize) -> BraidWord {
        parse_braid(s, n).unwrap()
    }

    #[test]
    fn bracket_of_sigma_one() {
        let br = kauffman_bracket(&w("1", 2));
        let lv = bracket_loop_value();
        let expect = TLElement::identity(2, lv.clone())
            .scale(&a_pow(1))
            .add(&TLElement::u(2, 1, lv.clone()).scale(&a_pow(-1)));
        assert_eq!(br, expect);
        assert_eq!(kauffman_bracket(&w("1 -1", 2)), TLElement::identity(2, lv));
    }

    #[test]
    fn trace_of_sigma_one() {
        let tr = kauffman_bracket(&w("1", 2)).markov_trace();
        assert_eq!(tr, &a_pow(3).scale(&BigInt::from(-1)) * &bracket_loop_value());
    }

    #[test]
    fn trefoil_jones() {
        assert_eq!(jones(&w("1 1 1", 2)).unwrap().to_string(), "q + q^3 - q^4");
        assert_eq!(jones(&w("-1 -1 -1", 2)).unwrap().to_string(), "-q^-4 + q^-3 + q^-1");
        assert!(jones(&BraidWord::identity(1)).unwrap().is_one());
    }

    #[test]
    fn plat_small() {
        let lv = bracket_loop_value();
        assert_eq!(plat_bracket(&BraidWord::identity(2)).unwrap(), lv);
        assert_eq!(plat_bracket(&BraidWord::identity(4)).unwrap(), &lv * &lv);
        assert_eq!(plat_bracket(&w("1", 2)).unwrap(), &a_pow(-3).scale(&BigInt::from(-1)) * &lv);
        assert!(plat_bracket(&BraidWord::identity(3)).is_err());
    }

    #[test]
    fn gram_two() {
        let m = gram_matrix(2).unwrap();
        let d = |e| LaurentPoly::monomial(Var::D, 1, e);
        assert_eq!(m.get(0, 0), &d(2));
        assert_eq!(m.get(0, 1), &d(1));
        assert_eq!(gram_det(2).unwrap(), LaurentPoly::from_terms(Var::D, [(4, 1), (2, -1)]));
        assert_eq!(gram_det(1).unwrap(), d(1));
    }

    #[test]
    fn jw_two() {
        let p2 = jones_wenzl(2).unwrap();
        let lv = generic_loop_value();
        let expect = TLElement::identity(2, lv.clone()).sub(&TLElement::u(2, 1, lv).scale(&rf(&[(0, 1)], &[(1, 1)])));
        assert_eq!(p2, expect);
    }

    #[test]
    fn tl2_units() {
        let (e1, e2) = matrix_units_tl2();
        assert_eq!(e1.mul(&e1).unwrap(), e1);
        assert_eq!(e2.mul(&e2).unwrap(), e2);
        assert!(e1.mul(&e2).unwrap().is_zero());
        assert_eq!(e1.add(&e2), TLElement::identity(2, generic_loop_value()));
    }
}
