use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::laurent::{LaurentPoly, Var};
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials in the same variable.
///
/// Kept reduced: common polynomial factors and integer content are cancelled,
/// the denominator has lowest exponent 0 and a positive leading coefficient.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let var = p.var();
        RationalFunction { num: p, den: LaurentPoly::one(var) }
    }

    pub fn zero(var: Var) -> Self {
        Self::from_poly(LaurentPoly::zero(var))
    }

    pub fn one(var: Var) -> Self {
        Self::from_poly(LaurentPoly::one(var))
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(var, c))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        let var = if num.is_constant() { den.var() } else { num.var() };
        if num.is_zero() {
            return Self::zero(var);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let c = num.content().gcd(&den.content());
        if c > BigInt::from(1) {
            num = num.div_integer_exact(&c).unwrap();
            den = den.div_integer_exact(&c).unwrap();
        }
        let shift = -den.min_exp2().unwrap();
        num = num.shift2(shift);
        den = den.shift2(shift);
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num: num.with_var(var), den: den.with_var(var) }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is a unit.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        let inv = self.den.unit_inverse()?;
        Some(&self.num * &inv)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of zero".into()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = self.den.eval(z)?;
        if d.norm() < 1e-300 {
            return Err(Error::DivisionByZero("denominator vanishes".into()));
        }
        Ok(self.num.eval(z)? / d)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduced(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.var());
        }
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::recip`] to check.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero(Var::D)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::D, terms.iter().copied())
    }

    #[test]
    fn reduces_common_factor() {
        let num = d(&[(2, 1), (0, -1)]);
        let den = d(&[(1, 2), (0, 2)]);
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.numer(), &d(&[(1, 1), (0, -1)]));
        assert_eq!(r.denom(), &d(&[(0, 2)]));
    }

    #[test]
    fn field_identities() {
        let a = RationalFunction::new(d(&[(1, 1)]), d(&[(2, 1), (0, -1)])).unwrap();
        let b = RationalFunction::new(d(&[(0, 3)]), d(&[(1, 1), (0, 1)])).unwrap();
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        let one = &a * &a.recip().unwrap();
        assert_eq!(one, RationalFunction::one(Var::D));
        assert!(RationalFunction::new(d(&[(0, 1)]), LaurentPoly::zero(Var::D)).is_err());
    }
}
