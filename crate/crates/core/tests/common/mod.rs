//! Brute-force reference implementations and random instances for tests.
//!
//! The oracle recomputes every split from scratch: it derives the candidate
//! thresholds, partitions the raw samples by direct comparison and evaluates
//! the entropy / MSE of each side with plain two-pass formulas. It shares no
//! code with the histogram path.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitscore::{FeatureMatrix, Target};

/// Losses within this relative distance of the minimum count as tied.
pub const ORACLE_TIE: f64 = 1e-9;

pub fn oracle_thresholds(column: &[f64], bins: usize) -> Vec<f64> {
    let lo = column.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Vec::new();
    }
    (1..bins)
        .map(|b| lo + (b as f64 / bins as f64) * (hi - lo))
        .collect()
}

fn entropy_nats_to_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.ln();
        }
    }
    h / std::f64::consts::LN_2
}

pub fn oracle_dft_loss(column: &[f64], labels: &[usize], n_classes: usize, threshold: f64) -> f64 {
    let mut left = vec![0usize; n_classes];
    let mut right = vec![0usize; n_classes];
    for (&x, &l) in column.iter().zip(labels) {
        if x < threshold {
            left[l] += 1;
        } else {
            right[l] += 1;
        }
    }
    let nl: usize = left.iter().sum();
    let nr: usize = right.iter().sum();
    (nl as f64 * entropy_nats_to_bits(&left) + nr as f64 * entropy_nats_to_bits(&right))
        / (nl + nr) as f64
}

fn side_sq_error(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum()
}

pub fn oracle_rft_loss(column: &[f64], y: &[f64], threshold: f64) -> f64 {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (&x, &v) in column.iter().zip(y) {
        if x < threshold {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    (side_sq_error(&left) + side_sq_error(&right)) / y.len() as f64
}

pub fn population_variance(y: &[f64]) -> f64 {
    side_sq_error(y) / y.len() as f64
}

/// `(optimal loss, argmin threshold)` over a list of `(threshold, loss)`,
/// smallest threshold among near-ties.
pub fn oracle_optimum(curve: &[(f64, f64)]) -> (f64, f64) {
    let min = curve.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let scale = curve.iter().map(|c| c.1.abs()).fold(0.0, f64::max);
    let t = curve
        .iter()
        .find(|c| c.1 <= min + ORACLE_TIE * scale)
        .unwrap()
        .0;
    (min, t)
}

/// `None` for constant features.
pub fn oracle_dft(
    column: &[f64],
    labels: &[usize],
    n_classes: usize,
    bins: usize,
) -> Option<(f64, f64)> {
    let ts = oracle_thresholds(column, bins);
    if ts.is_empty() {
        return None;
    }
    let curve: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t, oracle_dft_loss(column, labels, n_classes, t)))
        .collect();
    Some(oracle_optimum(&curve))
}

pub fn oracle_rft(column: &[f64], y: &[f64], bins: usize) -> Option<(f64, f64)> {
    let ts = oracle_thresholds(column, bins);
    if ts.is_empty() {
        return None;
    }
    let curve: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t, oracle_rft_loss(column, y, t)))
        .collect();
    Some(oracle_optimum(&curve))
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300) || (a - b).abs() <= 1e-15
}

/// A small random dataset with a few column styles: continuous, coarse
/// integer grids (many ties and exact threshold hits) and constants.
pub struct Instance {
    pub matrix: FeatureMatrix,
    pub labels: Target,
    pub y: Target,
    pub bins: usize,
}

pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_p: usize, max_c: usize) -> Instance {
    let n_classes = rng.random_range(2..=max_c);
    let n = rng.random_range(n_classes.max(4)..=max_n);
    let p = rng.random_range(1..=max_p);
    let bins = [2, 4, 8, 16][rng.random_range(0..4)];
    let columns: Vec<Vec<f64>> = (0..p)
        .map(|_| match rng.random_range(0..10) {
            0 => vec![rng.random_range(-5.0..5.0); n],
            1..=3 => (0..n).map(|_| rng.random_range(0..8) as f64).collect(),
            _ => {
                let scale = 10f64.powf(rng.random_range(-2.0..3.0));
                (0..n)
                    .map(|_| rng.random_range(-1.0..1.0) * scale)
                    .collect()
            }
        })
        .collect();
    let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n_classes)).collect();
    for (c, l) in labels.iter_mut().take(n_classes).enumerate() {
        *l = c;
    }
    let offset = rng.random_range(-100.0..100.0);
    let y: Vec<f64> = (0..n)
        .map(|i| {
            offset + rng.random_range(-10.0..10.0) + columns[0][i] * rng.random_range(0.0..2.0)
        })
        .collect();
    Instance {
        matrix: FeatureMatrix::from_columns(columns).unwrap(),
        labels: Target::categorical(labels, n_classes).unwrap(),
        y: Target::continuous(y).unwrap(),
        bins,
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
