use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};

/// Dense complex matrix used by every numeric representation.
pub type ComplexMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn from_rows(rows: &[Vec<Complex64>]) -> ComplexMatrix {
    let r = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    ComplexMatrix::from_fn(r, cols, |i, j| rows[i][j])
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Largest singular value.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().fold(0.0, |a: f64, &b| a.max(b))
}

/// `‖U†U − I‖` in operator norm.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    op_norm(&(u.adjoint() * u - identity(u.nrows())))
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(u) <= tol
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn mat_pow(m: &ComplexMatrix, n: u64) -> ComplexMatrix {
    let mut acc = identity(m.nrows());
    let mut base = m.clone();
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

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<Complex64> {
    m.eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
}

/// Rows as `[[re, im], ...]` arrays.
pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_json(v: &Value) -> Result<ComplexMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Invalid("matrix must be an array of rows".into()))?;
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Invalid("row must be an array".into()))?;
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            let pair = e.as_array().filter(|p| p.len() == 2);
            match pair.map(|p| (p[0].as_f64(), p[1].as_f64())) {
                Some((Some(re), Some(im))) => r.push(c(re, im)),
                _ => return invalid("entry must be [re, im]"),
            }
        }
        out.push(r);
    }
    if out.iter().any(|r| r.len() != out[0].len()) {
        return invalid("ragged matrix");
    }
    Ok(from_rows(&out))
}
