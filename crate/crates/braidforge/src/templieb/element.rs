use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::diagram::TLDiagram;
use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RationalFunction, Var};

/// Coefficient ring of a Temperley-Lieb element.
pub trait Scalar: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero(Var::A)
    }
    fn one() -> Self {
        LaurentPoly::one(Var::A)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero(Var::D)
    }
    fn one() -> Self {
        RationalFunction::one(Var::D)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Formal linear combination of diagrams in `TL_n` with a fixed loop value.
#[derive(Clone, Debug)]
pub struct TLElement<S: Scalar> {
    n: usize,
    loop_value: S,
    terms: BTreeMap<TLDiagram, S>,
}

/// Loop value `-A² - A⁻²` of the bracket ring.
pub fn bracket_loop_value() -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)])
}

/// Loop value `d` of the generic ring `Q(d)`.
pub fn generic_loop_value() -> RationalFunction {
    RationalFunction::from_poly(LaurentPoly::var_poly(Var::D))
}

impl<S: Scalar> TLElement<S> {
    pub fn zero(n: usize, loop_value: S) -> Self {
        TLElement { n, loop_value, terms: BTreeMap::new() }
    }

    pub fn diagram(d: TLDiagram, loop_value: S) -> Self {
        let mut e = Self::zero(d.n(), loop_value);
        e.terms.insert(d, S::one());
        e
    }

    pub fn identity(n: usize, loop_value: S) -> Self {
        Self::diagram(TLDiagram::identity(n), loop_value)
    }

    pub fn u(n: usize, i: usize, loop_value: S) -> Self {
        Self::diagram(TLDiagram::u(n, i), loop_value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loop_value(&self) -> &S {
        &self.loop_value
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TLDiagram) -> S {
        self.terms.get(d).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, d: TLDiagram, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n, self.loop_value.clone());
        if c.is_zero() {
            return out;
        }
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.mul(c));
        }
        out
    }

    fn loop_powers(&self, max: usize) -> Vec<S> {
        let mut pw = vec![S::one()];
        for k in 1..=max {
            pw.push(pw[k - 1].mul(&self.loop_value));
        }
        pw
    }

    /// `self · rhs`, with `self` stacked on top of `rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::Invalid(format!("cannot multiply TL_{} by TL_{}", self.n, rhs.n)));
        }
        let pw = self.loop_powers(self.n);
        let mut out = Self::zero(self.n, self.loop_value.clone());
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                let (d, loops) = da.compose_unchecked(db);
                out.add_term(d, ca.mul(cb).mul(&pw[loops]));
            }
        }
        Ok(out)
    }

    /// Linear extension of `D -> d^{loops(closure of D)}`.
    pub fn closure_value(&self, loops: impl Fn(&TLDiagram) -> usize) -> S {
        let pw = self.loop_powers(2 * self.n);
        let mut acc = S::zero();
        for (d, c) in &self.terms {
            acc = acc.add(&c.mul(&pw[loops(d)]));
        }
        acc
    }

    /// Markov trace.
    pub fn markov_trace(&self) -> S {
        self.closure_value(TLDiagram::trace_loops)
    }

    /// `self ⊗ rhs` with `rhs` to the right.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.n + rhs.n, self.loop_value.clone());
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da.tensor(db), ca.mul(cb));
            }
        }
        out
    }

    /// Applies a linear map `TL_n -> TL_m` given on diagrams.
    pub fn map_diagrams(&self, m: usize, f: impl Fn(&TLDiagram) -> TLDiagram) -> Self {
        let mut out = Self::zero(m, self.loop_value.clone());
        for (d, c) in &self.terms {
            out.add_term(f(d), c.clone());
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map<T: Scalar>(&self, loop_value: T, f: impl Fn(&S) -> T) -> TLElement<T> {
        let mut out = TLElement::zero(self.n, loop_value);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }
}

impl<S: Scalar> PartialEq for TLElement<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms.iter().all(|(d, c)| other.terms.get(d).is_some_and(|x| x == c))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for TLElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){:?}", d.chords())?;
        }
        Ok(())
    }
}
