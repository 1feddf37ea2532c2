//! Yang-Baxter operators, the local braid representations they generate,
//! Bratteli dimension counts and the Fibonacci non-localizability check.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::ring::cmat::{identity, kron, matrix_from_json, op_norm, unitarity_residual, ComplexMatrix};

/// A solution candidate `R` on `V ⊗ V` with `dim V = w`.
#[derive(Clone, Debug, PartialEq)]
pub struct YBOperator {
    pub w: usize,
    pub r: ComplexMatrix,
    pub ybe_residual: f64,
}

impl YBOperator {
    pub fn new(r: ComplexMatrix) -> Result<Self> {
        if !r.is_square() {
            return invalid("R must be square");
        }
        let w = (r.nrows() as f64).sqrt().round() as usize;
        if w == 0 || w * w != r.nrows() {
            return invalid(format!("size {} is not a perfect square", r.nrows()));
        }
        if w > 16 {
            return Err(Error::Cap(format!("local dimension {w} exceeds 16")));
        }
        if r.clone().try_inverse().is_none() {
            return invalid("R is not invertible");
        }
        let ybe_residual = ybe_residual(&r, w);
        Ok(YBOperator { w, r, ybe_residual })
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.r)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w,
            "ybe_residual": self.ybe_residual,
            "unitarity_residual": self.unitarity_residual(),
            "matrix": crate::ring::cmat::matrix_to_json(&self.r),
        })
    }
}

fn ybe_residual(r: &ComplexMatrix, w: usize) -> f64 {
    let id = identity(w);
    let a = kron(r, &id);
    let b = kron(&id, r);
    op_norm(&(&a * &b * &a - &b * &a * &b))
}

/// `‖(R⊗I)(I⊗R)(R⊗I) − (I⊗R)(R⊗I)(I⊗R)‖` on `V^{⊗3}`.
pub fn check_ybe(r: &YBOperator) -> f64 {
    ybe_residual(&r.r, r.w)
}

/// The 4×4 family with entries `a`, `a⁻¹`, `a − a⁻³`; on `|a| = 1`, `a⁻¹ = ā`.
pub fn family_r(a: Complex64) -> Result<YBOperator> {
    if a.norm() == 0.0 {
        return invalid("a must be nonzero");
    }
    let z = Complex64::new(0.0, 0.0);
    let b = a.inv();
    #[rustfmt::skip]
    let m = ComplexMatrix::from_row_slice(4, 4, &[
        a, z, z, z,
        z, z, b, z,
        z, b, a - b * b * b, z,
        z, z, z, a,
    ]);
    YBOperator::new(m)
}

/// Whether `family_r(a)` is unitary to `tol`.
pub fn unitarity_boundary(a: Complex64, tol: f64) -> Result<bool> {
    Ok(family_r(a)?.unitarity_residual() <= tol)
}

struct Fixture {
    name: &'static str,
    text: &'static str,
    sha256: &'static str,
}

const FIXTURES: [Fixture; 2] = [
    Fixture {
        name: "ising",
        text: include_str!("../fixtures/ising.json"),
        sha256: "5dee96599df0942b6c3ad7b4039289696f2083bb79b8330e9f40d46430885ded",
    },
    Fixture {
        name: "level4",
        text: include_str!("../fixtures/level4.json"),
        sha256: "cb43d13c008b4cdc7ef028ed671e68e8f0e8ef9734775e4268ecd22611190584",
    },
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

/// SHA-256 of the embedded fixture text, hex encoded.
pub fn fixture_digest(name: &str) -> Result<String> {
    let f = FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| Error::Invalid(format!("unknown fixture {name:?}")))?;
    Ok(format!("{:x}", Sha256::digest(f.text.as_bytes())))
}

/// Loads a fixture after checking its digest.
pub fn load_fixture(name: &str) -> Result<YBOperator> {
    let f = FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| Error::Invalid(format!("unknown fixture {name:?}")))?;
    if fixture_digest(name)? != f.sha256 {
        return Err(Error::Numeric(format!("fixture {name} does not match its digest")));
    }
    let v: Value = serde_json::from_str(f.text).map_err(|e| Error::Numeric(e.to_string()))?;
    YBOperator::new(matrix_from_json(&v["matrix"])?)
}

/// The 4×4 unitary solution localizing the level-2 representations.
pub fn ising_localization() -> YBOperator {
    load_fixture("ising").expect("embedded fixture")
}

/// The 9×9 unitary solution localizing the level-4 representations.
pub fn level4_localization() -> YBOperator {
    load_fixture("level4").expect("embedded fixture")
}

/// `I^{⊗(i-1)} ⊗ R ⊗ I^{⊗(n-i-1)}` on `V^{⊗n}`.
pub fn rmatrix_representation(r: &YBOperator, n: usize, i: usize) -> Result<ComplexMatrix> {
    if i == 0 || i >= n {
        return invalid(format!("generator {i} outside 1..{n}"));
    }
    let size = (r.w as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > 1 << 14 {
        return Err(Error::Cap(format!("w^n = {size} exceeds 2^14")));
    }
    let left = identity(r.w.pow(i as u32 - 1));
    let right = identity(r.w.pow((n - i - 1) as u32));
    Ok(kron(&kron(&left, &r.r), &right))
}

/// All generator images `ρ_R(σ_1), ..., ρ_R(σ_{n-1})`.
pub fn rmatrix_generators(r: &YBOperator, n: usize) -> Result<Vec<ComplexMatrix>> {
    (1..n).map(|i| rmatrix_representation(r, n, i)).collect()
}

/// Smallest `k <= max` with `U^k` a scalar multiple of the identity.
pub fn projective_order(u: &ComplexMatrix, max: u64, tol: f64) -> Option<u64> {
    let mut p = identity(u.nrows());
    for k in 1..=max {
        p = &p * u;
        let s = p[(0, 0)];
        if s.norm() > 0.5 && op_norm(&(&p - identity(u.nrows()) * s)) <= tol {
            return Some(k);
        }
    }
    None
}

/// Inclusion matrix `G` of a Bratteli diagram; rows index the smaller algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionData {
    pub g: Vec<Vec<u64>>,
}

impl InclusionData {
    pub fn new(g: Vec<Vec<u64>>) -> Result<Self> {
        let cols = g.first().map_or(0, Vec::len);
        if g.is_empty() || cols == 0 || g.iter().any(|row| row.len() != cols) {
            return invalid("inclusion matrix must be a nonempty rectangle");
        }
        Ok(InclusionData { g })
    }

    pub fn fibonacci() -> Self {
        InclusionData { g: vec![vec![0, 1], vec![1, 1]] }
    }

    /// `Gᵀ d`.
    pub fn push(&self, d: &[u64]) -> Result<Vec<u64>> {
        if d.len() != self.g.len() {
            return invalid(format!("vector of length {} against {} rows", d.len(), self.g.len()));
        }
        let cols = self.g[0].len();
        (0..cols)
            .map(|j| {
                self.g.iter().zip(d).try_fold(0u64, |acc, (row, &x)| {
                    row[j].checked_mul(x).and_then(|y| acc.checked_add(y)).ok_or_else(|| Error::Cap("dimension overflow".into()))
                })
            })
            .collect()
    }
}

/// `d_0, d_1 = Gᵀd_0, ..., d_steps` for a stationary diagram.
pub fn bratteli_dims(g: &InclusionData, d0: &[u64], steps: usize) -> Result<Vec<Vec<u64>>> {
    let mut out = vec![d0.to_vec()];
    for _ in 0..steps {
        let next = g.push(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

fn fib(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Positive solutions of `a f_{n-1} + b f_n = d^n` at one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibStep {
    pub n: usize,
    pub target: BigInt,
    pub solutions: BigInt,
    /// Solutions with the smallest and largest `a`.
    pub endpoints: Vec<(BigInt, BigInt)>,
    /// `⟨G(a,b), (f_{n-2}, f_{n-1})⟩` at each endpoint, to compare with `d^{n-1}`.
    pub pulled_back: Vec<BigInt>,
    pub previous: BigInt,
}

impl FibStep {
    pub fn has_solutions(&self) -> bool {
        self.solutions.is_positive()
    }

    /// No multiplicities at `n` are compatible with those at `n-1`; vacuous
    /// when there are no positive solutions at all.
    pub fn contradicts(&self) -> bool {
        self.pulled_back.iter().all(|v| *v != self.previous)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibCertificate {
    pub d: u64,
    pub n_max: usize,
    pub steps: Vec<FibStep>,
    /// First `n` with a contradiction.
    pub contradiction_at: Option<usize>,
}

impl FibCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "n_max": self.n_max,
            "contradiction_at": self.contradiction_at,
            "steps": self.steps.iter().map(|s| json!({
                "n": s.n,
                "d^n": s.target.to_string(),
                "solutions": s.solutions.to_string(),
                "endpoints": s.endpoints.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                "pulled_back": s.pulled_back.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "d^(n-1)": s.previous.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Searches for multiplicities `(a_n, b_n) ≥ 1` with `d^n = a_n f_{n-1} + b_n f_n`
/// and `G(a_n, b_n) = (a_{n-1}, b_{n-1})` for the Fibonacci inclusion `G`.
pub fn fib_nonlocal_certificate(d: u64, n_max: usize) -> Result<FibCertificate> {
    if d == 0 {
        return invalid("d must be at least 1");
    }
    if !(2..=30).contains(&n_max) {
        return Err(Error::Cap(format!("n_max must be in 2..=30, got {n_max}")));
    }
    let dd = BigInt::from(d);
    let mut steps = Vec::new();
    for n in 2..=n_max {
        let (f0, f1, f2) = (fib(n - 2), fib(n - 1), fib(n));
        let target = dd.pow(n as u32);
        let previous = dd.pow(n as u32 - 1);
        // a = a0 + f_n t, b = b0 - f_{n-1} t
        let e = f1.extended_gcd(&f2);
        debug_assert!(e.gcd.is_one());
        let (a0, b0) = (&target * &e.x, &target * &e.y);
        let t_min = div_ceil(&(BigInt::one() - &a0), &f2);
        let t_max = div_floor(&(&b0 - BigInt::one()), &f1);
        let count: BigInt = (&t_max - &t_min + BigInt::one()).max(BigInt::zero());
        let mut endpoints = Vec::new();
        if count.is_positive() {
            for t in [&t_min, &t_max] {
                let pair = (&a0 + &f2 * t, &b0 - &f1 * t);
                if !endpoints.contains(&pair) {
                    endpoints.push(pair);
                }
            }
        }
        let pulled_back = endpoints
            .iter()
            .map(|(a, b)| {
                let (ga, gb) = (b.clone(), a + b);
                ga * &f0 + gb * &f1
            })
            .collect();
        steps.push(FibStep { n, target, solutions: count, endpoints, pulled_back, previous });
    }
    let contradiction_at = steps.iter().find(|s| s.contradicts()).map(|s| s.n);
    Ok(FibCertificate { d, n_max, steps, contradiction_at })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_numbers() {
        let v: Vec<_> = (0..8).map(|n| fib(n)).collect();
        assert_eq!(v, [0, 1, 1, 2, 3, 5, 8, 13].map(BigInt::from));
    }

    #[test]
    fn rejects_non_square() {
        assert!(YBOperator::new(identity(3)).is_err());
        assert!(YBOperator::new(ComplexMatrix::zeros(4, 4)).is_err());
    }

    #[test]
    fn dimension_one_has_no_multiplicities() {
        let cert = fib_nonlocal_certificate(1, 10).unwrap();
        assert_eq!(cert.contradiction_at, Some(2));
        assert!(!cert.steps[0].has_solutions());
    }
}
