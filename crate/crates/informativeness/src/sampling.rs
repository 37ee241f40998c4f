//! Seeded random generators for experiments, kernels, and priors.
//!
//! All samplers take an explicit RNG so that audits and tests are
//! reproducible from a single seed. Interior samples are clipped away from
//! the boundary (`INTERIOR_CLIP`) and renormalized.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Prior;
use crate::error::Error;
use crate::experiment::{Experiment, StochasticMatrix};
use crate::tol::{Tol, INTERIOR_CLIP};
use crate::Result;

/// The RNG used throughout the crate.
pub type Rand = ChaCha8Rng;

/// Constructs the crate RNG from a seed.
pub fn rng_from_seed(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rejection cap for the MLRP sampler.
pub const MLRP_REJECTION_CAP: usize = 10_000;

/// A uniform (Dirichlet(1)) point of the interior of the simplex,
/// clipped away from the boundary.
pub fn random_row(rng: &mut Rand, m: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..m)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let sum: f64 = row.iter().sum();
    for v in &mut row {
        *v = (*v / sum).max(INTERIOR_CLIP);
    }
    let sum: f64 = row.iter().sum();
    for v in &mut row {
        *v /= sum;
    }
    row
}

/// An interior experiment with independent uniform rows.
pub fn random_experiment(rng: &mut Rand, n: usize, m: usize) -> Experiment {
    Experiment::new((0..n).map(|_| random_row(rng, m)).collect())
        .expect("sampled rows are valid")
}

/// An interior MLRP experiment.
///
/// Proposal: row 0 is uniform on the simplex; each next row reweights the
/// previous one by a sorted positive ratio vector, which makes every
/// likelihood ratio monotone by construction (and spans the full dimension
/// of the MLRP region). Columns are then sorted by likelihood ratio as a
/// safeguard and the result is rejected and resampled if interior clipping
/// broke a minor, with a hard cap on rejections.
pub fn random_mlrp(rng: &mut Rand, n: usize, m: usize, tol: &Tol) -> Result<Experiment> {
    for _ in 0..MLRP_REJECTION_CAP {
        let mut rows = vec![random_row(rng, m)];
        for _ in 1..n {
            let mut ratios: Vec<f64> = (0..m).map(|_| 0.25 + 1.5 * rng.gen::<f64>()).collect();
            ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let prev = rows.last().unwrap();
            let mut next: Vec<f64> = prev.iter().zip(&ratios).map(|(&v, &r)| v * r).collect();
            let sum: f64 = next.iter().sum();
            for v in &mut next {
                *v = (*v / sum).max(INTERIOR_CLIP);
            }
            let sum: f64 = next.iter().sum();
            for v in &mut next {
                *v /= sum;
            }
            rows.push(next);
        }
        let f = Experiment::new(rows).expect("sampled rows are valid");
        let f = sort_columns_by_likelihood_ratio(&f);
        if f.is_mlrp(tol) {
            return Ok(f);
        }
    }
    Err(Error::IterationCap(format!(
        "no MLRP sample within {MLRP_REJECTION_CAP} proposals for {n} x {m}"
    )))
}

/// Sorts signal columns by the likelihood ratio of the last state to the
/// first (a necessary ordering for MLRP).
pub fn sort_columns_by_likelihood_ratio(f: &Experiment) -> Experiment {
    let mut idx: Vec<usize> = (0..f.signals()).collect();
    idx.sort_by(|&a, &b| {
        let ra = crate::order::ratio(f.get(f.states() - 1, a), f.get(0, a));
        let rb = crate::order::ratio(f.get(f.states() - 1, b), f.get(0, b));
        ra.partial_cmp(&rb).unwrap()
    });
    f.permute(&idx).expect("index sort is a permutation")
}

/// An interior binary MLRP experiment: sorted high-signal probabilities.
pub fn random_binary_mlrp(rng: &mut Rand, n: usize) -> Experiment {
    let mut v: Vec<f64> = (0..n)
        .map(|_| INTERIOR_CLIP + (1.0 - 2.0 * INTERIOR_CLIP) * rng.gen::<f64>())
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crate::order::binary_from_vector(&v).expect("sampled vector is valid")
}

/// A random garbling kernel with uniform rows.
pub fn random_garbling(rng: &mut Rand, m: usize, mp: usize) -> StochasticMatrix {
    StochasticMatrix::new((0..m).map(|_| random_row(rng, mp)).collect())
        .expect("sampled rows are valid")
}

/// A uniformly random permutation of `0..m`.
pub fn random_permutation(rng: &mut Rand, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// A random full-support prior.
pub fn random_prior(rng: &mut Rand, n: usize) -> Prior {
    Prior::new(random_row(rng, n)).expect("sampled row is a valid prior")
}
