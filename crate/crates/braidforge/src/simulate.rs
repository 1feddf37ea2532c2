//! Plat-closure amplitudes, the sampled additive estimator, and bit
//! encodings of fusion trees.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::anyon::{enumerate_trees, AnyonModel, FusionTree};
use crate::braid::BraidWord;
use crate::error::{invalid, Error, Result};
use crate::jonesrep::{braid_generator_matrices, RepMatrices};
use crate::ring::Branch;

#[derive(Clone, Debug, PartialEq)]
pub struct PlatJob {
    pub word: BraidWord,
    pub r: u32,
    pub branch: Branch,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
}

impl PlatJob {
    pub fn new(word: BraidWord, r: u32, branch: Branch, epsilon: f64, delta: f64, seed: u64) -> Result<Self> {
        if word.strands() == 0 || word.strands() % 2 != 0 {
            return invalid(format!("plat closure needs an even strand count, got {}", word.strands()));
        }
        if r < 3 {
            return invalid(format!("r must be at least 3, got {r}"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return invalid(format!("epsilon must lie in (0, 1), got {epsilon}"));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return invalid(format!("delta must lie in (0, 1), got {delta}"));
        }
        Ok(PlatJob { word, r, branch, epsilon, delta, seed })
    }

    /// Default branch for `r`.
    pub fn with_defaults(word: BraidWord, r: u32, epsilon: f64, delta: f64, seed: u64) -> Result<Self> {
        Self::new(word, r, Branch::default_for(r), epsilon, delta, seed)
    }

    pub fn model(&self) -> Result<AnyonModel> {
        AnyonModel::with_branch(self.r - 2, self.branch)
    }

    /// Number of cup pairs.
    pub fn m(&self) -> usize {
        self.word.strands() / 2
    }

    /// Hoeffding sample count `⌈ln(2/δ) / (2ε²)⌉`.
    pub fn samples(&self) -> u64 {
        ((2.0 / self.delta).ln() / (2.0 * self.epsilon * self.epsilon)).ceil() as u64
    }
}

/// Unit vector on the tree `(0, 1, 0, 1, ..., 0)` of `V(k, 1^{2m}, 0)`,
/// with the representation it lives in.
pub fn cup_state(model: &AnyonModel, m: usize) -> Result<(RepMatrices, DVector<Complex64>)> {
    if m == 0 {
        return invalid("need at least one cup");
    }
    let rep = braid_generator_matrices(model, 1, 2 * m, 0)?;
    let labels: Vec<u32> = (0..2 * m - 1).map(|j| (j % 2) as u32).collect();
    let idx = rep
        .basis
        .iter()
        .position(|t| t.labels == labels)
        .ok_or_else(|| Error::Numeric("nested vacuum tree missing from basis".into()))?;
    let mut v = DVector::zeros(rep.dim());
    v[idx] = Complex64::new(1.0, 0.0);
    Ok((rep, v))
}

/// `⟨cap| ρ(b) |cup⟩`.
pub fn plat_amplitude(job: &PlatJob) -> Result<Complex64> {
    let (rep, cup) = cup_state(&job.model()?, job.m())?;
    let out = rep.image(&job.word)? * &cup;
    Ok(cup.dotc(&out))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub amplitude: Complex64,
    pub p: f64,
    pub z: f64,
    pub samples: u64,
}

impl SampleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "amplitude": [self.amplitude.re, self.amplitude.im],
            "p": self.p,
            "Z": self.z,
            "samples": self.samples,
        })
    }
}

/// Mean of `n` Bernoulli(`p`) draws from a ChaCha8 stream seeded with `seed`.
pub fn sample_mean(p: f64, n: u64, seed: u64) -> Result<f64> {
    let dist = Bernoulli::new(p.clamp(0.0, 1.0)).map_err(|e| Error::Numeric(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..n).filter(|_| dist.sample(&mut rng)).count();
    Ok(hits as f64 / n as f64)
}

pub fn run_job(job: &PlatJob) -> Result<SampleReport> {
    let amplitude = plat_amplitude(job)?;
    let p = amplitude.norm_sqr().min(1.0);
    let samples = job.samples();
    let z = sample_mean(p, samples, job.seed)?;
    Ok(SampleReport { amplitude, p, z, samples })
}

/// Sampled estimate of `|⟨cap|ρ(b)|cup⟩|²`.
pub fn estimate_z(job: &PlatJob) -> Result<f64> {
    Ok(run_job(job)?.z)
}

/// Outcome of decoding a bitstring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Tree(FusionTree),
    NonComputational,
}

fn check_encodable(model: &AnyonModel, leaf: u32) -> Result<()> {
    match (model.level(), leaf) {
        (2, 1) | (3, 1) | (3, 2) => Ok(()),
        (k, a) => Err(Error::Unsupported(format!("bit encoding for level {k}, leaf {a}"))),
    }
}

/// Parity forced on internal label `i_j` (1-based).
fn slot_parity(leaf: u32, j: usize) -> u32 {
    if leaf % 2 == 0 {
        0
    } else {
        ((j + 1) % 2) as u32
    }
}

/// Width of the encoding: one bit per internal label `i_1, ..., i_{n-2}`.
pub fn encoding_width(n: usize) -> usize {
    n.saturating_sub(2)
}

/// One bit per internal label: `bit = i_j div 2`.
pub fn encode_tree_bits(model: &AnyonModel, tree: &FusionTree) -> Result<Vec<bool>> {
    check_encodable(model, tree.leaf)?;
    let width = encoding_width(tree.n());
    Ok(tree.labels[..width].iter().map(|&x| x / 2 == 1).collect())
}

/// Inverse of [`encode_tree_bits`] for trees of total charge `charge`.
pub fn decode_tree_bits(model: &AnyonModel, leaf: u32, charge: u32, bits: &[bool]) -> Result<Decoded> {
    check_encodable(model, leaf)?;
    let mut labels: Vec<u32> =
        bits.iter().enumerate().map(|(i, &b)| 2 * b as u32 + slot_parity(leaf, i + 1)).collect();
    labels.push(charge);
    let mut prev = leaf;
    for &x in &labels {
        if x > model.level() || !model.admissible_triple(prev, leaf, x)? {
            return Ok(Decoded::NonComputational);
        }
        prev = x;
    }
    Ok(Decoded::Tree(FusionTree { leaf, labels }))
}

/// Every admissible tree of `V(k, leaf^n, charge)` with its bitstring.
pub fn encoding_table(model: &AnyonModel, leaf: u32, n: usize, charge: u32) -> Result<Vec<(FusionTree, Vec<bool>)>> {
    enumerate_trees(model, leaf, n, charge)?
        .into_iter()
        .map(|t| encode_tree_bits(model, &t).map(|b| (t, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_count() {
        let job = PlatJob::with_defaults(BraidWord::identity(2), 5, 0.01, 0.01, 0).unwrap();
        assert_eq!(job.samples(), 26492);
    }

    #[test]
    fn rejects_bad_jobs() {
        assert!(PlatJob::with_defaults(BraidWord::identity(3), 5, 0.1, 0.1, 0).is_err());
        assert!(PlatJob::with_defaults(BraidWord::identity(2), 5, 0.0, 0.1, 0).is_err());
        assert!(PlatJob::with_defaults(BraidWord::identity(2), 5, 0.1, 1.0, 0).is_err());
    }

    #[test]
    fn zero_probability_is_exact() {
        assert_eq!(sample_mean(0.0, 1000, 3).unwrap(), 0.0);
        assert_eq!(sample_mean(1.0, 1000, 3).unwrap(), 1.0);
    }
}
