//! Discriminant feature test: how well one threshold on a single feature
//! separates the classes.
//!
//! For every candidate threshold the samples are split in two and the loss
//! is the sample-weighted average of the two subsets' class entropies (in
//! bits). A feature's score is the lowest loss over all candidates, so
//! `0` means some threshold separates the classes perfectly and `log2(C)`
//! means no threshold helps at all.

use rayon::prelude::*;
use serde::Serialize;

use crate::binning::{build_histogram, BinHistogram, BinningConfig};
use crate::data::{FeatureMatrix, Target};
use crate::error::{Error, Result};
use crate::split::{CurvePoint, SplitScore};

pub type DftScore = SplitScore;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DftOptions {
    /// Reweight classes to equal total mass before computing entropies.
    pub class_balanced: bool,
}

/// Shannon entropy in bits of a class-count vector. Zero counts contribute
/// nothing; an empty subset has entropy 0.
pub fn subset_entropy(class_counts: &[f64]) -> Result<f64> {
    Ok(mass_and_entropy(class_counts)?.1)
}

/// Total mass and entropy, both summed in ascending count order so the
/// result does not depend on how classes are numbered.
fn mass_and_entropy(class_counts: &[f64]) -> Result<(f64, f64)> {
    if let Some(&bad) = class_counts.iter().find(|c| c.is_nan() || **c < 0.0) {
        return Err(Error::NegativeCount(bad));
    }
    let mut counts: Vec<f64> = class_counts.iter().copied().filter(|&c| c > 0.0).collect();
    counts.sort_by(f64::total_cmp);
    let total: f64 = counts.iter().sum();
    if total == 0.0 {
        return Ok((0.0, 0.0));
    }
    let h = counts
        .iter()
        .map(|&c| {
            let p = c / total;
            -p * p.log2()
        })
        .sum::<f64>();
    Ok((total, h.max(0.0)))
}

fn weighted_split_entropy(left: &[f64], right: &[f64]) -> f64 {
    // counts are validated non-negative upstream
    let (n_left, h_left) = mass_and_entropy(left).unwrap_or((0.0, 0.0));
    let (n_right, h_right) = mass_and_entropy(right).unwrap_or((0.0, 0.0));
    (n_left * h_left + n_right * h_right) / (n_left + n_right)
}

fn class_weights(totals: &[u64], options: DftOptions) -> Vec<f64> {
    if !options.class_balanced {
        return vec![1.0; totals.len()];
    }
    let n: u64 = totals.iter().sum();
    let c = totals.len() as f64;
    totals
        .iter()
        .map(|&t| {
            if t == 0 {
                0.0
            } else {
                n as f64 / (c * t as f64)
            }
        })
        .collect()
}

fn split_entropy_at(left: &[u64], totals: &[u64], weights: &[f64]) -> f64 {
    let l: Vec<f64> = left
        .iter()
        .zip(weights)
        .map(|(&c, w)| c as f64 * w)
        .collect();
    let r: Vec<f64> = left
        .iter()
        .zip(totals)
        .zip(weights)
        .map(|((&c, &t), w)| (t - c) as f64 * w)
        .collect();
    weighted_split_entropy(&l, &r)
}

/// Weighted entropy of the split at boundary `b` (threshold
/// `min + b/B * range`), for `1 <= b <= B - 1`.
pub fn dft_loss_at(histogram: &BinHistogram, boundary: usize) -> Result<f64> {
    dft_loss_at_with(histogram, boundary, DftOptions::default())
}

pub fn dft_loss_at_with(
    histogram: &BinHistogram,
    boundary: usize,
    options: DftOptions,
) -> Result<f64> {
    if !matches!(histogram, BinHistogram::Categorical { .. }) {
        return Err(Error::HistogramKind("dft needs a categorical histogram"));
    }
    histogram.check_boundary(boundary)?;
    let (prefixes, totals) = histogram.class_prefix_counts()?;
    let weights = class_weights(&totals, options);
    Ok(split_entropy_at(&prefixes[boundary - 1], &totals, &weights))
}

fn categorical(target: &Target) -> Result<usize> {
    target.n_classes().ok_or(Error::TargetKind {
        method: "dft",
        expected: "categorical",
    })
}

pub fn dft_score(column: &[f64], target: &Target, config: BinningConfig) -> Result<DftScore> {
    dft_score_with(column, target, config, DftOptions::default())
}

pub fn dft_score_with(
    column: &[f64],
    target: &Target,
    config: BinningConfig,
    options: DftOptions,
) -> Result<DftScore> {
    score_feature(0, column, target, config, options)
}

fn score_feature(
    feature_index: usize,
    column: &[f64],
    target: &Target,
    config: BinningConfig,
    options: DftOptions,
) -> Result<DftScore> {
    let n_classes = categorical(target)?;
    let histogram = build_histogram(column, target, config)?;
    let candidates = histogram.candidates();
    if candidates.is_degenerate() {
        return Ok(SplitScore::degenerate(
            feature_index,
            (n_classes as f64).log2(),
            candidates.feature_min,
        ));
    }
    let (prefixes, totals) = histogram.class_prefix_counts()?;
    let weights = class_weights(&totals, options);
    let curve = candidates
        .thresholds
        .iter()
        .zip(&prefixes)
        .map(|(&threshold, left)| CurvePoint {
            threshold,
            loss: split_entropy_at(left, &totals, &weights),
        })
        .collect();
    Ok(SplitScore::from_curve(feature_index, curve))
}

/// Scores every feature. The result is indexed by feature.
pub fn dft_score_all(
    matrix: &FeatureMatrix,
    target: &Target,
    config: BinningConfig,
) -> Result<Vec<DftScore>> {
    dft_score_all_with(matrix, target, config, DftOptions::default())
}

pub fn dft_score_all_with(
    matrix: &FeatureMatrix,
    target: &Target,
    config: BinningConfig,
    options: DftOptions,
) -> Result<Vec<DftScore>> {
    categorical(target)?;
    target.check_len(matrix.n_samples())?;
    (0..matrix.n_features())
        .into_par_iter()
        .map(|i| score_feature(i, matrix.column(i), target, config, options))
        .collect()
}
