//! Level-k Temperley-Lieb-Jones anyon models.
//!
//! Labels are `0..=k`. Vertices are unnormalized Jones-Wenzl trivalent
//! vertices; θ-networks are evaluated exactly over `Q(d)` by expanding the
//! projectors, then specialized to `d = 2cos(π/r)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::ring::cmat::{self, ComplexMatrix};
use crate::ring::{chebyshev_in, unitary_params, Branch, RationalFunction, UnitaryParams, Var};
use crate::templieb::{jones_wenzl, GenericElement};

/// Largest `a + b + c` accepted by the θ evaluator.
pub const THETA_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnyonModel {
    params: UnitaryParams,
}

impl AnyonModel {
    /// Level `k` with the default branch of `A`.
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return invalid("level must be at least 1");
        }
        Self::with_branch(k, Branch::default_for(k + 2))
    }

    pub fn with_branch(k: u32, branch: Branch) -> Result<Self> {
        if k == 0 {
            return invalid("level must be at least 1");
        }
        Ok(AnyonModel { params: unitary_params(k + 2, branch)? })
    }

    pub fn params(&self) -> &UnitaryParams {
        &self.params
    }

    pub fn level(&self) -> u32 {
        self.params.k
    }

    pub fn labels(&self) -> Vec<u32> {
        (0..=self.level()).collect()
    }

    /// Physical name of a label where one is customary.
    pub fn label_name(&self, a: u32) -> Option<&'static str> {
        match (self.level(), a) {
            (_, 0) => Some("1"),
            (2, 1) => Some("σ"),
            (2, 2) => Some("ψ"),
            (3, 2) => Some("τ"),
            (4, 1) => Some("X"),
            (4, 2) => Some("Y"),
            (4, 3) => Some("X′"),
            (4, 4) => Some("Z"),
            _ => None,
        }
    }

    fn check_label(&self, a: u32) -> Result<()> {
        if a > self.level() {
            return invalid(format!("label {a} outside 0..={}", self.level()));
        }
        Ok(())
    }

    pub fn admissible_triple(&self, a: u32, b: u32, c: u32) -> Result<bool> {
        for x in [a, b, c] {
            self.check_label(x)?;
        }
        Ok(generic_admissible(a, b, c) && a + b + c <= 2 * self.level())
    }

    pub fn fusion_product(&self, a: u32, b: u32) -> Result<Vec<u32>> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(self.labels().into_iter().filter(|&c| self.admissible_triple(a, b, c).unwrap()).collect())
    }

    /// `[a+1]_q` at the unitary root, always positive.
    pub fn quantum_dim(&self, a: u32) -> Result<f64> {
        self.check_label(a)?;
        let r = self.params.r as f64;
        Ok(((a as f64 + 1.0) * std::f64::consts::PI / r).sin() / (std::f64::consts::PI / r).sin())
    }

    /// Total quantum dimension `sqrt(Σ d_a²)`.
    pub fn total_dim(&self) -> f64 {
        self.labels().iter().map(|&a| self.quantum_dim(a).unwrap().powi(2)).sum::<f64>().sqrt()
    }

    fn d(&self) -> Complex64 {
        Complex64::new(self.params.d, 0.0)
    }
}

/// Parity and triangle conditions, without the level bound.
pub fn generic_admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
}

/// Left-associated fusion tree with all leaves colored `leaf`.
///
/// `labels` are the internal edges `i_1, ..., i_{n-1}`, the last one being the
/// total charge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionTree {
    pub leaf: u32,
    pub labels: Vec<u32>,
}

impl FusionTree {
    pub fn n(&self) -> usize {
        self.labels.len() + 1
    }

    pub fn charge(&self) -> u32 {
        *self.labels.last().unwrap_or(&self.leaf)
    }

    /// `[leaf, i_1, ..., i_{n-1}]`.
    pub fn path(&self) -> Vec<u32> {
        std::iter::once(self.leaf).chain(self.labels.iter().copied()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"leaf": self.leaf, "labels": self.labels})
    }
}

/// Upper bound on explicitly enumerated trees.
pub const TREE_CAP: u64 = 1 << 20;

fn check_tree_args(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<()> {
    model.check_label(leaf)?;
    model.check_label(charge)?;
    if n == 0 {
        return invalid("need at least one leaf");
    }
    Ok(())
}

/// Number of admissible trees, by transfer over the label set.
pub fn dim_space(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<u64> {
    check_tree_args(model, leaf, n, charge)?;
    if n > 128 {
        return Err(Error::Cap(format!("n = {n} exceeds 128")));
    }
    let k = model.level() as usize;
    let mut counts = vec![0u64; k + 1];
    counts[leaf as usize] = 1;
    for _ in 1..n {
        let mut next = vec![0u64; k + 1];
        for (x, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for y in model.fusion_product(x as u32, leaf)? {
                next[y as usize] = next[y as usize]
                    .checked_add(c)
                    .ok_or_else(|| Error::Cap("dimension overflows u64".into()))?;
            }
        }
        counts = next;
    }
    Ok(counts[charge as usize])
}

/// All admissible trees in lexicographic order of their internal labels.
pub fn enumerate_trees(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<Vec<FusionTree>> {
    let dim = dim_space(model, leaf, n, charge)?;
    if dim > TREE_CAP {
        return Err(Error::Cap(format!("space of dimension {dim} exceeds {TREE_CAP}")));
    }
    // reach[j][x]: whether label x at depth j can still end at `charge`
    let k = model.level() as usize;
    let mut reach = vec![vec![false; k + 1]; n];
    reach[n - 1][charge as usize] = true;
    for j in (0..n - 1).rev() {
        for x in 0..=k {
            reach[j][x] = model.fusion_product(x as u32, leaf)?.iter().any(|&y| reach[j + 1][y as usize]);
        }
    }
    let mut out = Vec::with_capacity(dim as usize);
    let mut path = vec![leaf];
    fn walk(
        model: &AnyonModel,
        leaf: u32,
        reach: &[Vec<bool>],
        path: &mut Vec<u32>,
        out: &mut Vec<FusionTree>,
    ) {
        let depth = path.len();
        if depth == reach.len() {
            out.push(FusionTree { leaf, labels: path[1..].to_vec() });
            return;
        }
        for y in model.fusion_product(*path.last().unwrap(), leaf).unwrap() {
            if reach[depth][y as usize] {
                path.push(y);
                walk(model, leaf, reach, path, out);
                path.pop();
            }
        }
    }
    if reach[0][leaf as usize] {
        walk(model, leaf, &reach, &mut path, &mut out);
    }
    Ok(out)
}

fn theta_cache() -> &'static Mutex<HashMap<(u32, u32, u32), RationalFunction>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), RationalFunction>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Δ_n(d)` as an element of `Q(d)`.
pub fn delta_generic(n: u32) -> RationalFunction {
    RationalFunction::from_poly(chebyshev_in(n as usize, Var::D))
}

/// θ-network with edges `a, b, c`, exact in `Q(d)`.
pub fn theta_generic(a: u32, b: u32, c: u32) -> Result<RationalFunction> {
    if !generic_admissible(a, b, c) {
        return invalid(format!("({a},{b},{c}) is not an admissible triple"));
    }
    if a + b + c > THETA_CAP {
        return Err(Error::Cap(format!("a+b+c = {} exceeds {THETA_CAP}", a + b + c)));
    }
    if let Some(v) = theta_cache().lock().unwrap().get(&(a, b, c)) {
        return Ok(v.clone());
    }
    let value = if a == 0 || b == 0 || c == 0 {
        delta_generic(a.max(b).max(c))
    } else {
        // p_a ⊗ p_b on top of p_c with m arcs joining the a and b sides
        let m = (a + b - c) / 2;
        let pa = jones_wenzl(a as usize)?;
        let pb = jones_wenzl(b as usize)?;
        let pc = jones_wenzl(c as usize)?;
        let top: GenericElement = pa.tensor(&pb);
        let mid = pc.map_diagrams((a + b) as usize, |d| d.insert_arcs((a - m) as usize, m as usize));
        top.mul(&mid)?.markov_trace()
    };
    theta_cache().lock().unwrap().insert((a, b, c), value.clone());
    Ok(value)
}

/// θ(a, b, c) at the model's loop value.
pub fn theta_symbol(model: &AnyonModel, a: u32, b: u32, c: u32) -> Result<f64> {
    if !model.admissible_triple(a, b, c)? {
        return invalid(format!("({a},{b},{c}) is not admissible at level {}", model.level()));
    }
    Ok(theta_generic(a, b, c)?.eval(model.d())?.re)
}

fn delta_at(model: &AnyonModel, n: u32) -> f64 {
    chebyshev_in(n as usize, Var::D).eval(model.d()).unwrap().re
}

/// `R^{ab}_c = (-1)^{(a+b-c)/2} A^{-(a(a+2) + b(b+2) - c(c+2))/2}`.
pub fn r_symbol(model: &AnyonModel, a: u32, b: u32, c: u32) -> Result<Complex64> {
    if !model.admissible_triple(a, b, c)? {
        return invalid(format!("({a},{b},{c}) is not admissible at level {}", model.level()));
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let sign = if ((a + b - c) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let e = -(a * (a + 2) + b * (b + 2) - c * (c + 2)) / 2;
    Ok(model.params.a.powi(e as i32) * sign)
}

/// Change of basis `e^{(ab)c}_{d,m} = Σ_n F_{nm} e^{a(bc)}_{d,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix {
    /// Channels `n` of `b ⊗ c`, indexing rows.
    pub rows: Vec<u32>,
    /// Channels `m` of `a ⊗ b`, indexing columns.
    pub cols: Vec<u32>,
    pub matrix: ComplexMatrix,
}

impl FMatrix {
    pub fn to_json(&self) -> Value {
        json!({"rows": self.rows, "cols": self.cols, "matrix": cmat::matrix_to_json(&self.matrix)})
    }
}

/// `F^{abc}_d` in orthonormal bases.
///
/// One-dimensional spaces get the gauge `F = (1)`. Two-dimensional spaces are
/// solved by closing the defining relation vertically and horizontally, which
/// needs `a = b = c = d`; other cases are reported as unsupported.
pub fn f_matrix(model: &AnyonModel, a: u32, b: u32, c: u32, d: u32) -> Result<FMatrix> {
    for x in [a, b, c, d] {
        model.check_label(x)?;
    }
    let cols: Vec<u32> =
        model.fusion_product(a, b)?.into_iter().filter(|&m| model.admissible_triple(m, c, d).unwrap()).collect();
    let rows: Vec<u32> =
        model.fusion_product(b, c)?.into_iter().filter(|&n| model.admissible_triple(a, n, d).unwrap()).collect();
    if rows.len() != cols.len() {
        return Err(Error::Numeric(format!("channel counts differ: {} vs {}", rows.len(), cols.len())));
    }
    match rows.len() {
        0 => invalid(format!("Hom({d}, {a}⊗{b}⊗{c}) is zero")),
        1 => Ok(FMatrix { rows, cols, matrix: cmat::identity(1) }),
        2 if a == b && b == c && c == d => {
            let ch = rows.clone();
            if ch[0] != 0 {
                return Err(Error::Numeric("vacuum channel missing".into()));
            }
            let theta: Vec<f64> = ch.iter().map(|&x| theta_symbol(model, a, a, x)).collect::<Result<_>>()?;
            let delta: Vec<f64> = ch.iter().map(|&x| delta_at(model, x)).collect();
            let da = delta_at(model, a);
            // unnormalized: vertical closure gives F_0x, horizontal gives F_cx
            let mut naive = [[0.0; 2]; 2];
            for x in 0..2 {
                naive[0][x] = theta[x] / (da * da);
                let vac = if x == 0 { da * da } else { 0.0 };
                naive[1][x] = (vac - naive[0][x] * theta[0]) / theta[1];
            }
            let norm: Vec<f64> = (0..2).map(|x| theta[x] / delta[x].sqrt()).collect();
            let matrix = ComplexMatrix::from_fn(2, 2, |y, x| Complex64::new(naive[y][x] * norm[y] / norm[x], 0.0));
            Ok(FMatrix { rows, cols, matrix })
        }
        2 => Err(Error::Unsupported(format!(
            "F^{{{a}{b}{c}}}_{d}: two-dimensional trace method needs equal labels"
        ))),
        k => Err(Error::Unsupported(format!("F^{{{a}{b}{c}}}_{d} has multiplicity {k}"))),
    }
}

/// All `R^{ab}_c` of the model, keyed `"a,b,c"`.
pub fn r_table(model: &AnyonModel) -> Value {
    let mut out = serde_json::Map::new();
    for a in model.labels() {
        for b in model.labels() {
            for c in model.fusion_product(a, b).unwrap() {
                let r = r_symbol(model, a, b, c).unwrap();
                out.insert(format!("{a},{b},{c}"), json!([r.re, r.im]));
            }
        }
    }
    Value::Object(out)
}

/// Every `F^{abc}_d` the trace method supports, keyed `"a,b,c,d"`.
pub fn f_table(model: &AnyonModel, labels: &[u32]) -> Value {
    let mut out = serde_json::Map::new();
    for &a in labels {
        for &b in labels {
            for &c in labels {
                for &d in labels {
                    if let Ok(f) = f_matrix(model, a, b, c, d) {
                        out.insert(format!("{a},{b},{c},{d}"), f.to_json());
                    }
                }
            }
        }
    }
    Value::Object(out)
}
