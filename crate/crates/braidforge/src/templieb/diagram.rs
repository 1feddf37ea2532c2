use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Noncrossing perfect matching of `2n` boundary points.
///
/// Points are indexed in cyclic order: bottom `0..n` left to right, then top
/// right to left, so top point `i` has index `2n-1-i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    pair: Vec<u8>,
}

impl TLDiagram {
    pub fn from_pairing(n: usize, pair: Vec<u8>) -> Result<Self> {
        if pair.len() != 2 * n {
            return Err(Error::Invalid("pairing length must be 2n".into()));
        }
        for (k, &p) in pair.iter().enumerate() {
            let p = p as usize;
            if p >= 2 * n || p == k || pair[p] as usize != k {
                return Err(Error::Invalid("pairing is not a fixed-point-free involution".into()));
            }
        }
        let d = TLDiagram { n, pair };
        if d.chords().iter().any(|&(a, b)| d.chords().iter().any(|&(c, e)| a < c && c < b && b < e)) {
            return Err(Error::Invalid("chords cross".into()));
        }
        Ok(d)
    }

    /// Builds from chords `(a, b)` over the cyclic indices.
    pub fn from_chords(n: usize, chords: &[(usize, usize)]) -> Result<Self> {
        let mut pair = vec![u8::MAX; 2 * n];
        for &(a, b) in chords {
            if a >= 2 * n || b >= 2 * n {
                return Err(Error::Invalid("chord endpoint out of range".into()));
            }
            pair[a] = b as u8;
            pair[b] = a as u8;
        }
        Self::from_pairing(n, pair)
    }

    pub fn identity(n: usize) -> Self {
        TLDiagram { n, pair: (0..2 * n).map(|k| (2 * n - 1 - k) as u8).collect() }
    }

    /// `u_i` for `1 <= i < n`.
    pub fn u(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "u_{i} undefined in TL_{n}");
        let mut d = Self::identity(n);
        let (b0, b1) = (i - 1, i);
        let (t0, t1) = (2 * n - i, 2 * n - 1 - i);
        d.pair[b0] = b1 as u8;
        d.pair[b1] = b0 as u8;
        d.pair[t0] = t1 as u8;
        d.pair[t1] = t0 as u8;
        d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, k: usize) -> usize {
        self.pair[k] as usize
    }

    pub fn pairing(&self) -> &[u8] {
        &self.pair
    }

    /// Chords as sorted index pairs, ascending.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n).filter(|&k| (self.pair[k] as usize) > k).map(|k| (k, self.pair[k] as usize)).collect()
    }

    /// Reflection across the horizontal midline.
    pub fn reflect(&self) -> Self {
        let m = 2 * self.n - 1;
        let mut pair = vec![0u8; 2 * self.n];
        for k in 0..2 * self.n {
            pair[m - k] = (m - self.pair[k] as usize) as u8;
        }
        TLDiagram { n: self.n, pair }
    }

    /// Number of through-strands.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&k| self.pair[k] as usize >= self.n).count()
    }

    /// `self` stacked on top of `below`; returns the result and the number of
    /// closed loops removed.
    pub fn compose(&self, below: &TLDiagram) -> Result<(TLDiagram, usize)> {
        if self.n != below.n {
            return Err(Error::Invalid(format!("cannot compose TL_{} with TL_{}", self.n, below.n)));
        }
        Ok(self.compose_unchecked(below))
    }

    pub(crate) fn compose_unchecked(&self, below: &TLDiagram) -> (TLDiagram, usize) {
        let n = self.n;
        let m = 2 * n - 1;
        let mut pair = vec![u8::MAX; 2 * n];
        // middle point i: bottom i of `self`, top i of `below` (index m - i)
        let mut seen_mid = vec![false; n];
        // Walk from a boundary point; `in_top` tells which diagram we are in.
        let walk = |start: usize, start_top: bool, seen_mid: &mut Vec<bool>| -> usize {
            let mut in_top = start_top;
            let mut k = start;
            loop {
                let p = if in_top { self.pair[k] as usize } else { below.pair[k] as usize };
                if in_top {
                    if p < n {
                        seen_mid[p] = true;
                        in_top = false;
                        k = m - p;
                        continue;
                    }
                    return p;
                } else {
                    if p >= n {
                        let i = m - p;
                        seen_mid[i] = true;
                        in_top = true;
                        k = i;
                        continue;
                    }
                    return p;
                }
            }
        };
        // terminals keep their index: bottom of `below`, top of `self`
        for k in 0..2 * n {
            if pair[k] != u8::MAX {
                continue;
            }
            let end = walk(k, k >= n, &mut seen_mid);
            pair[k] = end as u8;
            pair[end] = k as u8;
        }
        // remaining middle points lie on closed loops
        let mut loops = 0;
        for s in 0..n {
            if seen_mid[s] {
                continue;
            }
            loops += 1;
            let mut i = s;
            loop {
                seen_mid[i] = true;
                // from middle i go down through `below`
                let p = below.pair[m - i] as usize;
                let j = m - p;
                seen_mid[j] = true;
                // and back up through `self`
                let q = self.pair[j] as usize;
                if q == s {
                    break;
                }
                i = q;
            }
        }
        (TLDiagram { n, pair }, loops)
    }

    /// Number of loops when the diagram is closed by the involution `closure`.
    pub fn closure_loops(&self, closure: &[u8]) -> usize {
        let len = 2 * self.n;
        let mut seen = vec![false; len];
        let mut loops = 0;
        for s in 0..len {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut k = s;
            loop {
                seen[k] = true;
                let p = self.pair[k] as usize;
                seen[p] = true;
                k = closure[p] as usize;
                if k == s {
                    break;
                }
            }
        }
        loops
    }

    /// Loops of the trace closure (top `i` joined to bottom `i`).
    pub fn trace_loops(&self) -> usize {
        self.closure_loops(&trace_closure(self.n))
    }

    /// Loops of the plat closure (adjacent pairs capped above and below).
    pub fn plat_loops(&self) -> usize {
        self.closure_loops(&plat_closure(self.n))
    }

    /// `self ⊗ other`: `other` placed to the right.
    pub fn tensor(&self, other: &TLDiagram) -> TLDiagram {
        let (a, b) = (self.n, other.n);
        let n = a + b;
        let to_new_self = |k: usize| if k < a { k } else { 2 * n - 1 - (2 * a - 1 - k) };
        let to_new_other = |k: usize| if k < b { a + k } else { 2 * n - 1 - (a + (2 * b - 1 - k)) };
        let mut pair = vec![0u8; 2 * n];
        for k in 0..2 * a {
            pair[to_new_self(k)] = to_new_self(self.pair[k] as usize) as u8;
        }
        for k in 0..2 * b {
            pair[to_new_other(k)] = to_new_other(other.pair[k] as usize) as u8;
        }
        TLDiagram { n, pair }
    }
}

impl TLDiagram {
    /// Inserts `m` nested cups below and caps above, starting at strand `pos`.
    pub fn insert_arcs(&self, pos: usize, m: usize) -> TLDiagram {
        let c = self.n;
        assert!(pos <= c);
        let n = c + 2 * m;
        let shift = |i: usize| if i < pos { i } else { i + 2 * m };
        let map = |k: usize| if k < c { shift(k) } else { 2 * n - 1 - shift(2 * c - 1 - k) };
        let mut pair = vec![0u8; 2 * n];
        for k in 0..2 * c {
            pair[map(k)] = map(self.pair[k] as usize) as u8;
        }
        for j in 0..m {
            let (lo, hi) = (pos + j, pos + 2 * m - 1 - j);
            pair[lo] = hi as u8;
            pair[hi] = lo as u8;
            let (tlo, thi) = (2 * n - 1 - lo, 2 * n - 1 - hi);
            pair[tlo] = thi as u8;
            pair[thi] = tlo as u8;
        }
        TLDiagram { n, pair }
    }
}

pub(crate) fn trace_closure(n: usize) -> Vec<u8> {
    (0..2 * n).map(|k| (2 * n - 1 - k) as u8).collect()
}

pub(crate) fn plat_closure(n: usize) -> Vec<u8> {
    (0..2 * n).map(|k| (k ^ 1) as u8).collect()
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL{}{:?}", self.n, self.chords())
    }
}

fn catalan_matchings(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>, acc: &mut Vec<(usize, usize)>) {
    if points.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = points[0];
    for j in (1..points.len()).step_by(2) {
        acc.push((first, points[j]));
        let inner: Vec<usize> = points[1..j].to_vec();
        let outer: Vec<usize> = points[j + 1..].to_vec();
        let mut inner_out = Vec::new();
        catalan_matchings(&inner, &mut inner_out, &mut Vec::new());
        for im in inner_out {
            let mark = acc.len();
            acc.extend(im);
            catalan_matchings(&outer, out, acc);
            acc.truncate(mark);
        }
        acc.pop();
    }
}

fn build_basis(n: usize) -> Vec<TLDiagram> {
    let points: Vec<usize> = (0..2 * n).collect();
    let mut all = Vec::new();
    catalan_matchings(&points, &mut all, &mut Vec::new());
    let mut diagrams: Vec<TLDiagram> = all
        .into_iter()
        .map(|chords| {
            let mut pair = vec![0u8; 2 * n];
            for (a, b) in chords {
                pair[a] = b as u8;
                pair[b] = a as u8;
            }
            TLDiagram { n, pair }
        })
        .collect();
    diagrams.sort();
    diagrams
}

/// All `c_n` diagrams, sorted lexicographically by pairing.
pub fn enumerate_basis(n: usize) -> Result<Arc<Vec<TLDiagram>>> {
    if !(1..=10).contains(&n) {
        return Err(Error::Cap(format!("basis enumeration supports 1 <= n <= 10, got {n}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<TLDiagram>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return Ok(b.clone());
    }
    let basis = Arc::new(build_basis(n));
    cache.lock().unwrap().insert(n, basis.clone());
    Ok(basis)
}
