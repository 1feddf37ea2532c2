use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Var};
use crate::error::{invalid, Error, Result};

/// `[n]_q` as a Laurent polynomial in `q^{1/2}`.
pub fn quantum_int_formal(n: i64) -> LaurentPoly {
    let m = n.abs();
    let sign = if n < 0 { -1 } else { 1 };
    LaurentPoly::from_terms2(Var::Q, (0..m).map(|j| (m - 1 - 2 * j, sign)))
}

/// `[n]_q` at a numeric `q`, with `q^{1/2}` the principal square root.
pub fn quantum_int(n: i64, q: Complex64) -> Result<Complex64> {
    quantum_int_sqrt(n, q.sqrt())
}

/// `[n]_q` given `s = q^{1/2}` directly.
pub fn quantum_int_sqrt(n: i64, s: Complex64) -> Result<Complex64> {
    let den = s - s.inv();
    if den.norm() < 1e-14 {
        return Err(Error::DivisionByZero(format!("[{n}]_q at q = 1; the limit value is {n}")));
    }
    Ok((s.powi(n as i32) - s.powi(-n as i32)) / den)
}

/// Chebyshev polynomial of the second kind `Δ_n(x)`.
pub fn chebyshev(n: usize) -> LaurentPoly {
    chebyshev_in(n, Var::X)
}

pub fn chebyshev_in(n: usize, var: Var) -> LaurentPoly {
    let x = LaurentPoly::var_poly(var);
    let mut prev = LaurentPoly::one(var);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// One of the four unitary choices of `A` for a given `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `i e^{-2πi/4r}`
    A1,
    /// `i e^{2πi/4r}`
    A2,
    /// `-i e^{-2πi/4r}`
    A3,
    /// `-i e^{2πi/4r}`
    A4,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::A1, Branch::A2, Branch::A3, Branch::A4];

    /// Branch used when none is requested: `A1` for even level, `A2` for odd.
    pub fn default_for(r: u32) -> Branch {
        if (r - 2) % 2 == 0 {
            Branch::A1
        } else {
            Branch::A2
        }
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" => Ok(Branch::A1),
            "A2" => Ok(Branch::A2),
            "A3" => Ok(Branch::A3),
            "A4" => Ok(Branch::A4),
            other => invalid(format!("unknown branch {other:?} (expected A1..A4)")),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Root-of-unity specialization of the Kauffman variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryParams {
    pub r: u32,
    pub branch: Branch,
    pub a: Complex64,
    pub q: Complex64,
    pub d: f64,
    pub k: u32,
}

pub fn unitary_params(r: u32, branch: Branch) -> Result<UnitaryParams> {
    if r < 3 {
        return invalid(format!("r must be at least 3, got {r}"));
    }
    let phase = Complex64::from_polar(1.0, 2.0 * PI / (4.0 * r as f64));
    let i = Complex64::i();
    let a = match branch {
        Branch::A1 => i * phase.conj(),
        Branch::A2 => i * phase,
        Branch::A3 => -i * phase.conj(),
        Branch::A4 => -i * phase,
    };
    let d = -a * a - (a * a).inv();
    let expected = 2.0 * (PI / r as f64).cos();
    if (d.re - expected).abs() > 1e-12 || d.im.abs() > 1e-12 {
        return Err(Error::Numeric(format!("loop value {d} differs from {expected}")));
    }
    Ok(UnitaryParams { r, branch, a, q: a.powi(-4), d: expected, k: r - 2 })
}

impl UnitaryParams {
    pub fn with_default_branch(r: u32) -> Result<Self> {
        unitary_params(r, Branch::default_for(r.max(3)))
    }

    pub fn level(&self) -> u32 {
        self.k
    }
}

/// Taylor coefficients `v_0..v_order` of `p(e^h)` for `p` in `q^{1/2}`.
pub fn series_expand(p: &LaurentPoly, order: usize) -> Result<Vec<BigRational>> {
    if order > 16 {
        return invalid(format!("order {order} exceeds 16"));
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = BigInt::one();
    for i in 0..=order {
        if i > 0 {
            fact *= BigInt::from(i);
        }
        let mut s = BigRational::zero();
        for (e2, c) in p.terms2() {
            let base = BigRational::new(BigInt::from(e2), BigInt::from(2));
            let mut pw = BigRational::one();
            for _ in 0..i {
                pw *= &base;
            }
            s += pw * BigRational::from_integer(c.clone());
        }
        out.push(s / BigRational::from_integer(fact.clone()));
    }
    Ok(out)
}
