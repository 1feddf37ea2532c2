use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};

/// Variable tag of a Laurent polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    A,
    D,
    X,
    Q,
    Z,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::A => "A",
            Var::D => "d",
            Var::X => "x",
            Var::Q => "q",
            Var::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Some(match s {
            "t" => Var::T,
            "A" => Var::A,
            "d" => Var::D,
            "x" => Var::X,
            "q" => Var::Q,
            "z" => Var::Z,
            _ => return None,
        })
    }
}

/// Laurent polynomial with integer coefficients in one variable.
///
/// Exponents live on the half-integer grid and are stored doubled, so the key
/// `3` means `v^{3/2}`.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, 1)
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        Self::monomial2(var, c, 0)
    }

    /// `c * v^e` for an integer exponent `e`.
    pub fn monomial(var: Var, c: impl Into<BigInt>, e: i64) -> Self {
        Self::monomial2(var, c, 2 * e)
    }

    /// `c * v^{e2/2}`.
    pub fn monomial2(var: Var, c: impl Into<BigInt>, e2: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(e2, c.into());
        p
    }

    /// The variable itself.
    pub fn var_poly(var: Var) -> Self {
        Self::monomial(var, 1, 1)
    }

    /// Builds from `(doubled exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms2<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds from `(integer exponent, coefficient)` pairs.
    pub fn from_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        Self::from_terms2(var, terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    fn add_term(&mut self, e2: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e2).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e2);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when the polynomial has no term of nonzero exponent.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(doubled exponent, coefficient)`, ascending.
    pub fn terms2(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `v^{e2/2}`.
    pub fn coeff2(&self, e2: i64) -> BigInt {
        self.terms.get(&e2).cloned().unwrap_or_default()
    }

    /// Coefficient of `v^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeff2(2 * e)
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp2(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// True when every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Multiplies by `v^{k2/2}`.
    pub fn shift2(&self, k2: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k2, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `v -> w^{num/den}` (with `w` the new variable). Fails when some
    /// exponent does not land on the half-integer grid.
    pub fn substitute_power(&self, var: Var, num: i64, den: i64) -> Option<Self> {
        let mut out = Self::zero(var);
        for (e, c) in &self.terms {
            let n = e * num;
            if n % den != 0 {
                return None;
            }
            out.add_term(n / den, c.clone());
        }
        Some(out)
    }

    /// `v -> 1/v`.
    pub fn invert_var(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse when the polynomial is a unit `±v^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some(Self::monomial2(self.var, c.clone(), -e))
        } else {
            None
        }
    }

    /// Integer gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_integer_exact(&self, c: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, x) in &self.terms {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*e, q);
        }
        Some(LaurentPoly { var: self.var, terms })
    }

    /// Exact division in the Laurent ring; `None` if the quotient is not a
    /// Laurent polynomial with integer coefficients.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.var));
        }
        let var = self.merge_var(rhs);
        let sa = self.min_exp2().unwrap();
        let sb = rhs.min_exp2().unwrap();
        let q = dense_div_exact(&self.to_dense(sa), &rhs.to_dense(sb))?;
        Some(Self::from_dense(var, &q).shift2(sa - sb))
    }

    /// Dense coefficients of `self * v^{-shift/2}` over the doubled grid,
    /// i.e. as a polynomial in `v^{1/2}`.
    fn to_dense(&self, shift: i64) -> Vec<BigInt> {
        let top = self.max_exp2().unwrap_or(shift);
        let mut v = vec![BigInt::zero(); (top - shift + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - shift) as usize] = c.clone();
        }
        v
    }

    fn from_dense(var: Var, v: &[BigInt]) -> Self {
        let mut p = Self::zero(var);
        for (i, c) in v.iter().enumerate() {
            p.add_term(i as i64, c.clone());
        }
        p
    }

    /// Gcd in the Laurent ring, normalized with lowest exponent 0, positive
    /// leading coefficient. The gcd with zero is the other argument normalized.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let var = self.merge_var(rhs);
        if self.is_zero() && rhs.is_zero() {
            return Self::zero(var);
        }
        if self.is_zero() {
            return rhs.normalized_associate().with_var(var);
        }
        if rhs.is_zero() {
            return self.normalized_associate().with_var(var);
        }
        let sa = self.min_exp2().unwrap();
        let sb = rhs.min_exp2().unwrap();
        let g = dense_gcd(&self.to_dense(sa), &rhs.to_dense(sb));
        Self::from_dense(var, &g).normalized_associate()
    }

    /// Associate with lowest exponent 0 and positive leading coefficient.
    pub fn normalized_associate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.shift2(-self.min_exp2().unwrap());
        if p.leading_coeff().unwrap().is_negative() {
            p = -p;
        }
        p
    }

    fn merge_var(&self, rhs: &Self) -> Var {
        if self.var == rhs.var {
            return self.var;
        }
        match (self.is_constant(), rhs.is_constant()) {
            (true, _) => rhs.var,
            (_, true) => self.var,
            _ => panic!(
                "mixing Laurent polynomials in {} and {}",
                self.var.name(),
                rhs.var.name()
            ),
        }
    }

    /// Evaluates with `w` standing for `v^{1/2}`, Horner style over the doubled grid.
    pub fn eval_half(&self, w: Complex64) -> Complex64 {
        let mut it = self.terms.iter().rev();
        let Some((&top, c0)) = it.next() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(big_to_f64(c0), 0.0);
        let mut prev = top;
        for (&e, c) in it {
            acc = acc * w.powi((prev - e) as i32) + big_to_f64(c);
            prev = e;
        }
        acc * w.powi(prev as i32)
    }

    /// Numeric value at `z`; half-integer powers use the principal square root.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::DivisionByZero("evaluation at 0".into()));
        }
        if self.is_integral() {
            let halved = LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, c)| (e / 2, c.clone())).collect() };
            return Ok(halved.eval_half(z));
        }
        Ok(self.eval_half(z.sqrt()))
    }

    /// JSON encoding `{"var":..,"den":2,"terms":[[e2,"c"],..]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(e, c)| json!([e, c.to_string()])).collect();
        json!({"var": self.var.name(), "den": 2, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let var = v
            .get("var")
            .and_then(Value::as_str)
            .and_then(Var::parse)
            .ok_or_else(|| Error::Invalid("missing or unknown var".into()))?;
        if v.get("den").and_then(Value::as_i64) != Some(2) {
            return invalid("den must be 2");
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("terms must be an array".into()))?;
        let mut p = Self::zero(var);
        let mut last = None;
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2);
            let (e, c) = match pair {
                Some(a) => (a[0].as_i64(), a[1].as_str().and_then(|s| s.parse::<BigInt>().ok())),
                None => (None, None),
            };
            let (Some(e), Some(c)) = (e, c) else {
                return invalid("term must be [exponent, \"coefficient\"]");
            };
            if last.is_some_and(|l| l >= e) {
                return invalid("exponents must be strictly ascending");
            }
            last = Some(e);
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    if b.len() > r.len() {
        return if r.iter().all(Zero::is_zero) { Some(vec![BigInt::zero()]) } else { None };
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(BigInt::zero());
        }
    }
    r
}

/// Primitive polynomial remainder sequence gcd over Z[v].
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let ca = a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let cb = b.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let c = ca.gcd(&cb);
    let mut a = primitive(&a);
    let mut b = primitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a.iter().map(|x| x * &c).collect()
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.var == other.var || self.is_constant())
    }
}

impl Eq for LaurentPoly {}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(Var::X, c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.var = self.merge_var(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.var = self.merge_var(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.merge_var(rhs));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

fn fmt_power(f: &mut fmt::Formatter<'_>, v: &str, e2: i64) -> fmt::Result {
    if e2 % 2 != 0 {
        write!(f, "{v}^{{{e2}/2}}")
    } else if e2 == 2 {
        write!(f, "{v}")
    } else {
        write!(f, "{v}^{}", e2 / 2)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents; half-integer powers print as `v^{k/2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                fmt_power(f, self.var.name(), e)?;
            }
        }
        Ok(())
    }
}
