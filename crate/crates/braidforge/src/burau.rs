//! Burau representations and the Alexander polynomial.
//!
//! Matrices multiply in word order: the image of `b1 b2 ... bk` is
//! `G(b1) G(b2) ... G(bk)`. Under this order the generator block of `σ_i` is
//! `[[1-t, t], [1, 0]]`.

use std::fmt;
use std::ops::{Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Signed;
use serde_json::Value;

use crate::braid::{writhe, BraidWord};
use crate::error::{Error, Result};
use crate::ring::{ComplexMatrix, LaurentPoly, Var};

/// Dense matrix of Laurent polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![LaurentPoly::zero(Var::T); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(Var::T));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        LaurentMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Drops row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut out = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                out.push(self.get(r, c).clone());
            }
        }
        LaurentMatrix { rows: self.rows - 1, cols: self.cols - 1, entries: out }
    }

    /// Fraction-free (Bareiss) determinant; exact.
    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one(Var::T);
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = LaurentPoly::one(Var::T);
        let mut sign = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return LaurentPoly::zero(Var::T),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero(Var::T);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Numeric value with `t^{1/2} = s`.
    pub fn eval_half(&self, s: Complex64) -> ComplexMatrix {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval_half(s))
    }

    /// Rows of JSON-encoded polynomials.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows).map(|i| Value::Array(self.row(i).iter().map(LaurentPoly::to_json).collect())).collect(),
        )
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Sub for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        LaurentMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn t_poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms.iter().copied())
}

fn generator(n: usize, letter: i32) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    let i = letter.unsigned_abs() as usize - 1;
    let block = if letter > 0 {
        [t_poly(&[(0, 1), (1, -1)]), t_poly(&[(1, 1)]), t_poly(&[(0, 1)]), t_poly(&[])]
    } else {
        [t_poly(&[]), t_poly(&[(0, 1)]), t_poly(&[(-1, 1)]), t_poly(&[(0, 1), (-1, -1)])]
    };
    let [a, b, c, d] = block;
    m.set(i, i, a);
    m.set(i, i + 1, b);
    m.set(i + 1, i, c);
    m.set(i + 1, i + 1, d);
    m
}

pub fn unreduced_burau(b: &BraidWord) -> LaurentMatrix {
    let n = b.strands();
    b.letters().iter().fold(LaurentMatrix::identity(n), |acc, &l| &acc * &generator(n, l))
}

/// Coordinates in the basis `v_j = -t e_j + e_{j+1}` of the invariant subspace.
fn restrict(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    let n = m.rows();
    let t = t_poly(&[(1, 1)]);
    let mut out = LaurentMatrix::zeros(n - 1, n - 1);
    for j in 0..n - 1 {
        // w = M v_j
        let w: Vec<LaurentPoly> =
            (0..n).map(|r| m.get(r, j + 1) - &(&t * m.get(r, j))).collect();
        let mut c = vec![LaurentPoly::zero(Var::T); n - 1];
        c[n - 2] = w[n - 1].clone();
        for k in (1..n - 1).rev() {
            c[k - 1] = &w[k] + &(&t * &c[k]);
        }
        if !(&w[0] + &(&t * &c[0])).is_zero() {
            return Err(Error::Numeric("image left the invariant subspace".into()));
        }
        for (k, ck) in c.into_iter().enumerate() {
            out.set(k, j, ck);
        }
    }
    Ok(out)
}

pub fn reduced_burau(b: &BraidWord) -> Result<LaurentMatrix> {
    if b.strands() < 2 {
        return Err(Error::Invalid("reduced Burau needs at least two strands".into()));
    }
    restrict(&unreduced_burau(b))
}

fn geometric_sum(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, (0..n as i64).map(|k| (k, 1)))
}

/// `det(I - ρ(b)) / (1 + t + ... + t^{n-1})`, no unit normalization.
fn alexander_raw(b: &BraidWord) -> Result<LaurentPoly> {
    let n = b.strands();
    if n == 1 {
        return Ok(LaurentPoly::one(Var::T));
    }
    let m = &LaurentMatrix::identity(n - 1) - &reduced_burau(b)?;
    let det = m.det();
    det.div_exact(&geometric_sum(n))
        .ok_or_else(|| Error::Numeric(format!("det {det} not divisible by 1+t+...+t^{}", n - 1)))
}

/// Multiplies by `±t^k` so the lowest exponent is 0 and the constant term positive.
pub fn normalize_units(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let p = p.shift2(-p.min_exp2().unwrap());
    if p.lowest_coeff().unwrap().is_negative() {
        -p
    } else {
        p
    }
}

/// Alexander polynomial of the closure, normalized up to units.
pub fn alexander(b: &BraidWord) -> Result<LaurentPoly> {
    Ok(normalize_units(&alexander_raw(b)?))
}

/// Conway-normalized Alexander polynomial in `t^{1/2}`.
pub fn conway(b: &BraidWord) -> Result<LaurentPoly> {
    let raw = alexander_raw(b)?;
    let n = b.strands() as i64;
    if n == 1 {
        return Ok(raw);
    }
    let k = n - writhe(b) - 1;
    let unit = if k >= 0 {
        LaurentPoly::monomial2(Var::T, -1, 1).pow(k as u32)
    } else {
        LaurentPoly::monomial2(Var::T, -1, -1).pow((-k) as u32)
    };
    Ok(&unit * &raw)
}

/// Rewrites a polynomial in `s = t^{1/2}` as a polynomial in `z = s - s^{-1}`.
/// `None` when `p` is not invariant under `s -> -1/s`.
pub fn to_conway_z(p: &LaurentPoly) -> Option<LaurentPoly> {
    let mut rest = p.clone().with_var(Var::T);
    let mut out = LaurentPoly::zero(Var::Z);
    let z_in_s = LaurentPoly::from_terms2(Var::T, [(1, 1), (-1, -1)]);
    while let Some(top) = rest.max_exp2() {
        if top < 0 {
            return None;
        }
        let c = rest.coeff2(top);
        let term = z_in_s.pow(top as u32).scale(&c);
        rest = &rest - &term;
        out = &out + &LaurentPoly::monomial(Var::Z, c, top);
    }
    Some(out)
}

/// Alexander–Conway polynomial as a polynomial in `z`.
pub fn conway_z(b: &BraidWord) -> Result<LaurentPoly> {
    let c = conway(b)?;
    to_conway_z(&c).ok_or_else(|| Error::Numeric(format!("{c} is not a polynomial in z")))
}

/// Compares `det(I - ρ(b))/(1+...+t^{n-1})` with the (1,1)-minor of `I - ρ̃(b)`.
pub fn det_lemma_check(b: &BraidWord) -> bool {
    let n = b.strands();
    if n < 2 {
        return false;
    }
    let Ok(lhs) = alexander_raw(b) else { return false };
    let m = &LaurentMatrix::identity(n) - &unreduced_burau(b);
    lhs == m.minor(0, 0).det()
}

/// `J_{n-1}(s)`: tridiagonal with `s + 1/s` on the diagonal and `-1` beside it.
pub fn j_matrix(n: usize, s: Complex64) -> ComplexMatrix {
    let m = n.saturating_sub(1);
    DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            s + s.inv()
        } else if i.abs_diff(j) == 1 {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `(P ρ(b) P⁻¹, J)` at `t = s²` with `P = diag(1, s, ..., s^{n-2})`.
pub fn unitarize(b: &BraidWord, s: Complex64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if (s.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid("s must lie on the unit circle".into()));
    }
    let n = b.strands();
    if n < 2 {
        return Err(Error::Invalid("needs at least two strands".into()));
    }
    let rho = reduced_burau(b)?.eval_half(s);
    let m = n - 1;
    let p = DMatrix::from_fn(m, m, |i, j| if i == j { s.powi(i as i32) } else { Complex64::new(0.0, 0.0) });
    let p_inv = DMatrix::from_fn(m, m, |i, j| if i == j { s.powi(-(i as i32)) } else { Complex64::new(0.0, 0.0) });
    let out = &p * rho * &p_inv;
    if out.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numeric("singular specialization".into()));
    }
    Ok((out, j_matrix(n, s)))
}

/// `‖X† J X − J‖` for the pair returned by [`unitarize`].
pub fn j_unitarity_residual(x: &ComplexMatrix, j: &ComplexMatrix) -> f64 {
    crate::ring::cmat::op_norm(&(x.adjoint() * j * x - j))
}

/// Whether `J_{n-1}(e^{iθ})` is positive definite.
pub fn j_positive_definite(n: usize, theta: f64) -> bool {
    let s = Complex64::from_polar(1.0, theta);
    let j = j_matrix(n, s).map(|z| z.re);
    if j.nrows() == 0 {
        return true;
    }
    j.symmetric_eigenvalues().iter().all(|&e| e > 0.0)
}

/// Scans `θ ∈ [-π, π)` and returns the widest interval where `J` is positive definite.
pub fn positive_theta_range(n: usize, samples: usize) -> Option<(f64, f64)> {
    use std::f64::consts::PI;
    let thetas: Vec<f64> = (0..samples).map(|i| -PI + 2.0 * PI * i as f64 / samples as f64).collect();
    let mut best: Option<(f64, f64)> = None;
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for &th in &thetas {
        if j_positive_definite(n, th) {
            start.get_or_insert(th);
            last = th;
        } else if let Some(s0) = start.take() {
            if best.map_or(true, |(a, b)| last - s0 > b - a) {
                best = Some((s0, last));
            }
        }
    }
    if let Some(s0) = start {
        if best.map_or(true, |(a, b)| last - s0 > b - a) {
            best = Some((s0, last));
        }
    }
    best
}
