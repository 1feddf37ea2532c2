//! Jones representations on fusion-tree bases, their images, and small
//! quantum-gate utilities.
//!
//! Leaf `1` uses the path model: `U_j` acts on the label between strands `j`
//! and `j+1` when its neighbours agree on `c`, with entries
//! `sqrt(d_x d_y) / d_c`. Colored leaves use `R`-symbols on the first pair and
//! `F⁻¹ diag(R) F` further along the tree.

use std::collections::{HashMap, HashSet, VecDeque};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::anyon::{enumerate_trees, f_matrix, r_symbol, AnyonModel, FusionTree};
use crate::braid::BraidWord;
use crate::error::{invalid, Error, Result};
use crate::ring::cmat::{self, identity, op_norm, unitarity_residual, ComplexMatrix};
use crate::ring::{chebyshev_in, Var};

fn zeros(n: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(n, n)
}

fn basis_index(basis: &[FusionTree]) -> HashMap<Vec<u32>, usize> {
    basis.iter().enumerate().map(|(i, t)| (t.labels.clone(), i)).collect()
}

fn nonempty_basis(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<Vec<FusionTree>> {
    let basis = enumerate_trees(model, leaf, n, charge)?;
    if basis.is_empty() {
        return invalid(format!(
            "V(level {}, leaf {leaf}, n {n}, charge {charge}) is empty",
            model.level()
        ));
    }
    Ok(basis)
}

/// Applies a block acting on the label between strands `j` and `j+1`, `j >= 2`.
///
/// `block(x, m, y)` returns the channels `m'` and amplitudes `<m'|B|m>` given
/// the neighbouring labels `x` (left) and `y` (right).
fn local_operator(
    basis: &[FusionTree],
    j: usize,
    mut block: impl FnMut(u32, u32, u32) -> Result<Vec<(u32, Complex64)>>,
) -> Result<ComplexMatrix> {
    let index = basis_index(basis);
    let mut m = zeros(basis.len());
    for (col, t) in basis.iter().enumerate() {
        let p = t.path();
        let (x, mid, y) = (p[j - 2], p[j - 1], p.get(j).copied());
        let Some(y) = y else { return Err(Error::Numeric("generator index past the tree".into())) };
        for (m2, amp) in block(x, mid, y)? {
            let mut labels = t.labels.clone();
            labels[j - 2] = m2;
            if let Some(&row) = index.get(&labels) {
                m[(row, col)] += amp;
            }
        }
    }
    Ok(m)
}

fn path_model(model: &AnyonModel, basis: &[FusionTree], n: usize) -> Result<Vec<ComplexMatrix>> {
    let k = model.level();
    let dim = |a: u32| model.quantum_dim(a).unwrap();
    let index = basis_index(basis);
    let mut out = Vec::with_capacity(n - 1);
    for j in 1..n {
        let mut m = zeros(basis.len());
        for (col, t) in basis.iter().enumerate() {
            // full path y_0 = 0, y_1 = 1, y_2.. = internal labels
            let full: Vec<u32> = std::iter::once(0).chain(t.path()).collect();
            let c = full[j - 1];
            if full[j + 1] != c {
                continue;
            }
            let x = full[j];
            for y in [c.wrapping_sub(1), c + 1] {
                if y > k {
                    continue;
                }
                let amp = (dim(x) * dim(y)).sqrt() / dim(c);
                if j == 1 {
                    if y == 1 {
                        m[(col, col)] += Complex64::new(amp, 0.0);
                    }
                    continue;
                }
                let mut labels = t.labels.clone();
                labels[j - 2] = y;
                if let Some(&row) = index.get(&labels) {
                    m[(row, col)] += Complex64::new(amp, 0.0);
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `F⁻¹ diag(v) F` over the channels of `F^{x a a}_y`, as a block callback.
fn recoupled_block(
    model: &AnyonModel,
    a: u32,
    x: u32,
    mid: u32,
    y: u32,
    diag: impl Fn(u32) -> Result<Complex64>,
) -> Result<Vec<(u32, Complex64)>> {
    let f = f_matrix(model, x, a, a, y)?;
    let f_inv = f.matrix.clone().try_inverse().ok_or_else(|| Error::Numeric("singular F-matrix".into()))?;
    let d = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        f.rows.len(),
        f.rows.iter().map(|&n| diag(n)).collect::<Result<Vec<_>>>()?,
    ));
    let b = &f_inv * d * &f.matrix;
    let col = f.cols.iter().position(|&m| m == mid).ok_or_else(|| Error::Numeric("channel not found".into()))?;
    Ok(f.cols.iter().enumerate().map(|(row, &m2)| (m2, b[(row, col)])).collect())
}

fn colored_generators(
    model: &AnyonModel,
    basis: &[FusionTree],
    leaf: u32,
    n: usize,
    diag: impl Fn(u32) -> Result<Complex64> + Copy,
) -> Result<Vec<ComplexMatrix>> {
    let mut out = Vec::with_capacity(n - 1);
    for j in 1..n {
        let m = if j == 1 {
            let mut m = zeros(basis.len());
            for (i, t) in basis.iter().enumerate() {
                m[(i, i)] = diag(t.labels[0])?;
            }
            m
        } else {
            local_operator(basis, j, |x, mid, y| recoupled_block(model, leaf, x, mid, y, diag))?
        };
        out.push(m);
    }
    Ok(out)
}

/// Loop value of the TL action on `leaf`-colored strands.
pub fn loop_value(model: &AnyonModel, leaf: u32) -> Result<f64> {
    model.quantum_dim(leaf)
}

/// Images `U_1, ..., U_{n-1}` of the TL generators on `V(k, leaf^n, charge)`.
pub fn tl_generator_matrices(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<Vec<ComplexMatrix>> {
    let basis = nonempty_basis(model, leaf, n, charge)?;
    if leaf == 1 {
        return path_model(model, &basis, n);
    }
    tl_generators_recoupled(model, &basis, leaf, n)
}

fn tl_generators_recoupled(model: &AnyonModel, basis: &[FusionTree], leaf: u32, n: usize) -> Result<Vec<ComplexMatrix>> {
    let da = Complex64::new(model.quantum_dim(leaf)?, 0.0);
    colored_generators(model, basis, leaf, n, move |c| Ok(if c == 0 { da } else { Complex64::new(0.0, 0.0) }))
}

/// Generator images of the braid group on a fusion-tree basis.
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub model: AnyonModel,
    pub n: usize,
    pub leaf: u32,
    pub charge: u32,
    pub basis: Vec<FusionTree>,
    /// `ρ(σ_1), ..., ρ(σ_{n-1})`.
    pub generators: Vec<ComplexMatrix>,
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `ρ(b)`, letters applied in word order to column vectors.
    pub fn image(&self, b: &BraidWord) -> Result<ComplexMatrix> {
        if b.strands() != self.n {
            return invalid(format!("word on {} strands, representation on {}", b.strands(), self.n));
        }
        let mut acc = identity(self.dim());
        let inverses: Vec<ComplexMatrix> = self.generators.iter().map(|g| g.adjoint()).collect();
        for &l in b.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let g = if l > 0 { &self.generators[i] } else { &inverses[i] };
            acc = g * acc;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.model.level(),
            "n": self.n,
            "leaf": self.leaf,
            "charge": self.charge,
            "basis": self.basis.iter().map(|t| json!(t.labels)).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(cmat::matrix_to_json).collect::<Vec<_>>(),
        })
    }
}

/// Braid generator images: `A + A⁻¹U` for leaf `1`, the `R`/`F` route otherwise.
pub fn braid_generator_matrices(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<RepMatrices> {
    if leaf != 1 {
        return braid_generator_matrices_recoupled(model, leaf, n, charge);
    }
    let basis = nonempty_basis(model, leaf, n, charge)?;
    let a = model.params().a;
    let us = path_model(model, &basis, n)?;
    let generators = us.iter().map(|u| identity(basis.len()) * a + u * a.inv()).collect();
    Ok(RepMatrices { model: *model, n, leaf, charge, basis, generators })
}

/// Generator images from `R`-symbols and `F`-moves, for any supported leaf.
pub fn braid_generator_matrices_recoupled(
    model: &AnyonModel,
    leaf: u32,
    n: usize,
    charge: u32,
) -> Result<RepMatrices> {
    let basis = nonempty_basis(model, leaf, n, charge)?;
    let generators = colored_generators(model, &basis, leaf, n, |c| r_symbol(model, leaf, leaf, c))?;
    Ok(RepMatrices { model: *model, n, leaf, charge, basis, generators })
}

/// Largest violation of `U_i² = dU_i`, `U_iU_{i±1}U_i = U_i`, far
/// commutativity and `U_i = U_i†`.
pub fn tl_relation_residual(us: &[ComplexMatrix], d: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, u) in us.iter().enumerate() {
        worst = worst.max(op_norm(&(u * u - u * Complex64::new(d, 0.0))));
        worst = worst.max(op_norm(&(u - u.adjoint())));
        for (j, v) in us.iter().enumerate() {
            if i.abs_diff(j) == 1 {
                worst = worst.max(op_norm(&(u * v * u - u)));
            } else if i.abs_diff(j) >= 2 {
                worst = worst.max(op_norm(&(u * v - v * u)));
            }
        }
    }
    worst
}

/// Largest violation of the braid relations, far commutativity and unitarity.
pub fn braid_relation_residual(gens: &[ComplexMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, g) in gens.iter().enumerate() {
        worst = worst.max(unitarity_residual(g));
        for (j, h) in gens.iter().enumerate() {
            if j == i + 1 {
                worst = worst.max(op_norm(&(g * h * g - h * g * h)));
            } else if i.abs_diff(j) >= 2 {
                worst = worst.max(op_norm(&(g * h - h * g)));
            }
        }
    }
    worst
}

/// `‖p_{r-1}(U_1, ..., U_{r-2})‖` via the Jones-Wenzl recursion at `d`.
///
/// Needs at least `r - 1` strands.
pub fn jw_vanishing_residual(model: &AnyonModel, us: &[ComplexMatrix]) -> Result<f64> {
    let r = model.params().r as usize;
    if us.len() + 1 < r - 1 {
        return invalid(format!("need at least {} strands", r - 1));
    }
    let d = Complex64::new(model.params().d, 0.0);
    let delta = |n: usize| chebyshev_in(n, Var::D).eval(d).unwrap();
    let mut p = identity(us.first().map_or(1, |u| u.nrows()));
    for j in 1..=r - 2 {
        let u = &us[j - 1];
        p = &p - (&p * u * &p) * (delta(j - 1) / delta(j));
    }
    Ok(op_norm(&p))
}

/// Residuals of the level-2 Clifford identities on one charge sector.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordResiduals {
    pub charge: u32,
    pub conjugation: f64,
    pub anticommutation: f64,
    pub order_sixteen: f64,
}

impl CliffordResiduals {
    pub fn max(&self) -> f64 {
        self.conjugation.max(self.anticommutation).max(self.order_sixteen)
    }
}

/// `g_i g_j² g_i⁻¹ = i g_i² g_j²` for `|i-j| = 1`, `g_i²g_{i+1}² + g_{i+1}²g_i² = 0`
/// and `g_i^16 = 1`, with `g_i = -A⁻¹ρ(σ_i)` at level 2.
pub fn clifford_residuals(model: &AnyonModel, n: usize) -> Result<Vec<CliffordResiduals>> {
    if model.level() != 2 {
        return invalid(format!("Clifford identities need level 2, got {}", model.level()));
    }
    if !(2..=8).contains(&n) {
        return Err(Error::Cap(format!("n must be in 2..=8, got {n}")));
    }
    let a = model.params().a;
    let mut out = Vec::new();
    for charge in model.labels() {
        let Ok(rep) = braid_generator_matrices(model, 1, n, charge) else { continue };
        let g: Vec<ComplexMatrix> = rep.generators.iter().map(|x| x * (-a.inv())).collect();
        let sq: Vec<ComplexMatrix> = g.iter().map(|x| x * x).collect();
        let i = Complex64::i();
        let mut res = CliffordResiduals { charge, conjugation: 0.0, anticommutation: 0.0, order_sixteen: 0.0 };
        for (p, gp) in g.iter().enumerate() {
            let inv = gp.adjoint();
            for q in 0..g.len() {
                if p.abs_diff(q) != 1 {
                    continue;
                }
                let lhs = gp * &sq[q] * &inv;
                let rhs = &sq[p] * &sq[q] * i;
                res.conjugation = res.conjugation.max(op_norm(&(lhs - rhs)));
            }
            if p + 1 < g.len() {
                let s = &sq[p] * &sq[p + 1] + &sq[p + 1] * &sq[p];
                res.anticommutation = res.anticommutation.max(op_norm(&s));
            }
            res.order_sixteen = res.order_sixteen.max(op_norm(&(cmat::mat_pow(gp, 16) - identity(gp.nrows()))));
        }
        out.push(res);
    }
    Ok(out)
}

/// Whether every level-2 Clifford identity holds to `1e-9` on every sector.
pub fn clifford_relations_check(n: usize) -> Result<bool> {
    let model = AnyonModel::new(2)?;
    Ok(clifford_residuals(&model, n)?.iter().all(|r| r.max() <= 1e-9))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Finite(usize),
    Exceeded(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupClosureReport {
    pub generators: usize,
    pub elements: usize,
    pub status: ClosureStatus,
    pub projective: bool,
    pub tol: f64,
}

impl GroupClosureReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.status, ClosureStatus::Finite(_))
    }

    pub fn to_json(&self) -> Value {
        let (status, size) = match self.status {
            ClosureStatus::Finite(s) => ("finite", s),
            ClosureStatus::Exceeded(b) => ("exceeded", b),
        };
        json!({
            "generators": self.generators,
            "elements": self.elements,
            "status": status,
            "size_or_bound": size,
            "projective": self.projective,
            "tol": self.tol,
        })
    }
}

/// Hash key: entries rounded to six decimals, after fixing the global phase
/// so the first nonzero entry is positive real when `projective`.
fn bucket(m: &ComplexMatrix, projective: bool) -> Vec<i64> {
    let mut phase = Complex64::new(1.0, 0.0);
    if projective {
        if let Some(z) = m.iter().find(|z| z.norm() > 1e-6) {
            phase = z.conj() / z.norm();
        }
    }
    let round = |x: f64| {
        let v = (x * 1e6).round() as i64;
        if v == 0 {
            0
        } else {
            v
        }
    };
    m.iter().flat_map(|z| {
        let w = z * phase;
        [round(w.re), round(w.im)]
    })
    .collect()
}

/// Breadth-first closure of the group generated by `gens`.
pub fn closure_bfs(gens: &[ComplexMatrix], bound: usize, tol: f64, projective: bool) -> Result<GroupClosureReport> {
    if bound > 1_000_000 {
        return Err(Error::Cap(format!("bound {bound} exceeds 10^6")));
    }
    let Some(first) = gens.first() else { return invalid("no generators") };
    let dim = first.nrows();
    for g in gens {
        if g.nrows() != dim || !g.is_square() {
            return invalid("generators must be square and of equal size");
        }
        if unitarity_residual(g) > tol {
            return invalid(format!("non-unitary generator (residual {:e})", unitarity_residual(g)));
        }
    }
    let start = identity(dim);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(bucket(&start, projective));
    let mut queue = VecDeque::from([start]);
    let report = |elements: usize, status| GroupClosureReport { generators: gens.len(), elements, status, projective, tol };
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(bucket(&y, projective)) {
                if seen.len() > bound {
                    return Ok(report(seen.len(), ClosureStatus::Exceeded(bound)));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(report(seen.len(), ClosureStatus::Finite(seen.len())))
}

/// Numerical evidence about the order of a unitary.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderEvidence {
    /// `U^k = I` for this smallest `k`.
    Finite(u64),
    /// No `k <= checked` with `U^k = I`. `rational_phases` lists eigenphases
    /// (as multiples of π) that have a small-denominator convergent.
    NoSmallOrder { checked: u64, phases_over_pi: Vec<f64>, rational_phases: Vec<(i64, i64)> },
}

impl OrderEvidence {
    /// No small order, and some eigenphase has no small-denominator convergent.
    pub fn suggests_infinite(&self) -> bool {
        match self {
            OrderEvidence::Finite(_) => false,
            OrderEvidence::NoSmallOrder { phases_over_pi, rational_phases, .. } => {
                rational_phases.len() < phases_over_pi.len()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            OrderEvidence::Finite(k) => json!({"kind": "finite", "order": k}),
            OrderEvidence::NoSmallOrder { checked, phases_over_pi, rational_phases } => json!({
                "kind": "evidence",
                "checked_orders": checked,
                "phases_over_pi": phases_over_pi,
                "rational_phases": rational_phases,
                "suggests_infinite": self.suggests_infinite(),
            }),
        }
    }
}

/// Largest denominator tried by the continued-fraction test.
pub const MAX_DENOMINATOR: i64 = 10_000;

/// Convergent `p/q` with `q <= max_den` within `tol` of `x`, if any.
pub fn small_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i64;
        let (h2, k2) = (ai.checked_mul(h1)?.checked_add(h0)?, ai.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// Checks `U^k ≠ I` for `k <= max_order`, then tests each eigenphase for a
/// small-denominator rational. Floating point cannot prove infinite order.
pub fn infinite_order_evidence(u: &ComplexMatrix, max_order: u64, tol: f64) -> OrderEvidence {
    let id = identity(u.nrows());
    let mut p = id.clone();
    for k in 1..=max_order {
        p = &p * u;
        if op_norm(&(&p - &id)) <= tol.max(1e-12 * k as f64) {
            return OrderEvidence::Finite(k);
        }
    }
    let phases: Vec<f64> = cmat::eigenvalues(u).iter().map(|z| z.arg() / std::f64::consts::PI).collect();
    let rational = phases.iter().filter_map(|&x| small_rational(x, MAX_DENOMINATOR, 1e-11)).collect();
    OrderEvidence::NoSmallOrder { checked: max_order, phases_over_pi: phases, rational_phases: rational }
}

/// Realignment `R[(i1 j1), (i2 j2)] = U[(i1 i2), (j1 j2)]` of a two-qubit operator.
fn realign(u: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |r, c| {
        let (i1, j1, i2, j2) = (r / 2, r % 2, c / 2, c % 2);
        u[(2 * i1 + i2, 2 * j1 + j2)]
    })
}

/// Operator-Schmidt rank of a two-qubit operator.
pub fn schmidt_rank(u: &ComplexMatrix, tol: f64) -> usize {
    realign(u).singular_values().iter().filter(|&&s| s > tol).count()
}

/// True unless `U` or `SWAP·U` is a product `A ⊗ B`.
pub fn is_entangling(u: &ComplexMatrix, tol: f64) -> Result<bool> {
    if u.shape() != (4, 4) {
        return invalid("expected a 4×4 matrix");
    }
    if unitarity_residual(u) > tol {
        return invalid("matrix is not unitary");
    }
    let swapped = gate_library().swap * u;
    Ok(schmidt_rank(u, tol) > 1 && schmidt_rank(&swapped, tol) > 1)
}

#[derive(Clone, Debug)]
pub struct Gates {
    pub h: ComplexMatrix,
    pub t: ComplexMatrix,
    pub cnot: ComplexMatrix,
    pub swap: ComplexMatrix,
}

pub fn gate_library() -> Gates {
    let r = |x: f64| Complex64::new(x, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = ComplexMatrix::from_row_slice(2, 2, &[r(s), r(s), r(s), r(-s)]);
    let t = ComplexMatrix::from_row_slice(
        2,
        2,
        &[r(1.0), r(0.0), r(0.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
    );
    let perm = |p: [usize; 4]| ComplexMatrix::from_fn(4, 4, |i, j| if p[i] == j { r(1.0) } else { r(0.0) });
    Gates { h, t, cnot: perm([0, 1, 3, 2]), swap: perm([0, 2, 1, 3]) }
}
