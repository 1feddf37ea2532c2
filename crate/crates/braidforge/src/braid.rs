//! Braid words and Markov moves.
//!
//! A word `b1 b2 ... bk` is read left to right as bottom-to-top stacking.
//! Letter `j > 0` is the right-handed crossing `σ_j`, `-j` its inverse.

use std::fmt;
use std::ops::Mul;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return invalid("a braid needs at least one strand");
        }
        for &l in &letters {
            if l == 0 {
                return invalid("letter 0 is not a generator");
            }
            if l.unsigned_abs() as usize >= strands {
                return invalid(format!("letter {l} out of range for {strands} strands"));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// `σ_i^{±1}` as a one-letter word.
    pub fn generator(strands: usize, letter: i32) -> Result<Self> {
        Self::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word product `self · other` (other stacked on top).
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return invalid(format!("strand mismatch: {} vs {}", self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Mirror image: every crossing flipped.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Same word viewed on more strands.
    pub fn widen(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return invalid("cannot narrow a braid");
        }
        Ok(BraidWord { strands, letters: self.letters.clone() })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        match tok.parse::<i32>() {
            Ok(l) => letters.push(l),
            Err(_) => return invalid(format!("malformed token {tok:?}")),
        }
    }
    BraidWord::new(strands, letters)
}

pub fn writhe(b: &BraidWord) -> i64 {
    b.letters.iter().map(|l| l.signum() as i64).sum()
}

/// `g · b · g⁻¹`.
pub fn conjugate(b: &BraidWord, g: &BraidWord) -> Result<BraidWord> {
    g.concat(b)?.concat(&g.inverse())
}

/// Adds a strand and appends `σ_n^{sign}`.
pub fn stabilize(b: &BraidWord, sign: i32) -> BraidWord {
    let n = b.strands as i32;
    let mut letters = b.letters.clone();
    letters.push(if sign < 0 { -n } else { n });
    BraidWord { strands: b.strands + 1, letters }
}

/// Inverse of [`stabilize`] up to cyclic rotation: legal when the top generator
/// occurs exactly once. Returns `None` otherwise.
pub fn destabilize(b: &BraidWord) -> Option<BraidWord> {
    if b.strands < 2 {
        return None;
    }
    let top = (b.strands - 1) as i32;
    let hits: Vec<usize> = (0..b.letters.len()).filter(|&i| b.letters[i].abs() == top).collect();
    if hits.len() != 1 {
        return None;
    }
    let p = hits[0];
    let mut letters = b.letters[p + 1..].to_vec();
    letters.extend_from_slice(&b.letters[..p]);
    Some(BraidWord { strands: b.strands - 1, letters })
}

/// Permutation of `{1..n}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return invalid("not a bijection on 1..n");
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0/1 matrix with a one at `(i, π(i))`, 0-based.
    pub fn matrix_entries(&self) -> Vec<(usize, usize)> {
        self.images.iter().enumerate().map(|(i, &j)| (i, j - 1)).collect()
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if !seen[s] {
                cycles += 1;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i] - 1;
                }
            }
        }
        cycles
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    /// `(self * other)(i) = other(self(i))`: the left factor acts first, matching
    /// bottom-to-top stacking of braid words.
    fn mul(self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.apply(i)).collect() }
    }
}

pub fn underlying_permutation(b: &BraidWord) -> Permutation {
    let mut images: Vec<usize> = (1..=b.strands).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        // post-compose with the transposition (i, i+1)
        for img in images.iter_mut() {
            if *img == i {
                *img = i + 1;
            } else if *img == i + 1 {
                *img = i;
            }
        }
    }
    Permutation { images }
}

/// Number of components of the trace closure.
pub fn component_count(b: &BraidWord) -> usize {
    underlying_permutation(b).cycle_count()
}

/// Seeded random sequence of Markov moves.
pub fn random_markov_walk(b: &BraidWord, steps: usize, rng_seed: u64) -> BraidWord {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut w = b.clone();
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 if w.strands >= 2 => {
                let i = rng.gen_range(1..w.strands as i32);
                let g = BraidWord { strands: w.strands, letters: vec![if rng.gen_bool(0.5) { i } else { -i }] };
                w = conjugate(&w, &g).expect("same strand count");
            }
            1 if w.strands < 6 => {
                w = stabilize(&w, if rng.gen_bool(0.5) { 1 } else { -1 });
            }
            2 | 3 => {
                if let Some(d) = destabilize(&w) {
                    w = d;
                } else if !w.letters.is_empty() {
                    let k = rng.gen_range(0..w.letters.len());
                    w.letters.rotate_left(k);
                }
            }
            _ => {}
        }
    }
    w
}
