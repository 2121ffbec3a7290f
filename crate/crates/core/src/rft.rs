//! Relevant feature test: how much one threshold on a single feature
//! reduces squared error when each side is predicted by its target mean.
//!
//! The loss at a threshold is `(N_L * mse_L + N_R * mse_R) / N`, the total
//! squared error of the two-mean predictor divided by `N`. The feature score
//! is the minimum over the candidate thresholds and never exceeds the
//! population variance of the target.

use rayon::prelude::*;

use crate::binning::{build_histogram_shifted, BinHistogram, BinningConfig, MomentSums};
use crate::data::{FeatureMatrix, Target};
use crate::error::{Error, Result};
use crate::split::{CurvePoint, SplitScore};

pub type RftScore = SplitScore;

/// Mean squared deviation from the mean of a side, from its moment sums:
/// `sumsq / n - (sum / n)^2`, clamped at zero. Empty and single-sample
/// sides have zero error.
pub fn side_mse(count: u64, sum: f64, sumsq: f64) -> f64 {
    if count <= 1 {
        return 0.0;
    }
    let n = count as f64;
    let mean = sum / n;
    (sumsq / n - mean * mean).max(0.0)
}

fn split_loss(left: MomentSums, right: MomentSums) -> f64 {
    let n_left = left.count as f64;
    let n_right = right.count as f64;
    let weighted = n_left * side_mse(left.count, left.sum, left.sumsq)
        + n_right * side_mse(right.count, right.sum, right.sumsq);
    weighted / (n_left + n_right)
}

/// Weighted side MSE of the split at boundary `b`, `1 <= b <= B - 1`.
pub fn rft_loss_at(histogram: &BinHistogram, boundary: usize) -> Result<f64> {
    if !matches!(histogram, BinHistogram::Continuous { .. }) {
        return Err(Error::HistogramKind("rft needs a continuous histogram"));
    }
    histogram.check_boundary(boundary)?;
    let (left, right) = histogram.moment_splits()?[boundary - 1];
    Ok(split_loss(left, right))
}

fn continuous(target: &Target) -> Result<&[f64]> {
    target.values().ok_or(Error::TargetKind {
        method: "rft",
        expected: "continuous",
    })
}

/// Mean and population variance (divide by `N`).
pub(crate) fn mean_and_population_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Population variance of a target vector: the loss of predicting every
/// sample by the overall mean.
pub fn population_variance(values: &[f64]) -> f64 {
    mean_and_population_variance(values).1
}

pub fn rft_score(column: &[f64], target: &Target, config: BinningConfig) -> Result<RftScore> {
    let y = continuous(target)?;
    let (mean, variance) = mean_and_population_variance(y);
    score_feature(0, column, target, config, mean, variance)
}

fn score_feature(
    feature_index: usize,
    column: &[f64],
    target: &Target,
    config: BinningConfig,
    target_mean: f64,
    target_variance: f64,
) -> Result<RftScore> {
    let histogram = build_histogram_shifted(column, target, config, target_mean)?;
    let candidates = histogram.candidates();
    if candidates.is_degenerate() {
        return Ok(SplitScore::degenerate(
            feature_index,
            target_variance,
            candidates.feature_min,
        ));
    }
    let curve = candidates
        .thresholds
        .iter()
        .zip(histogram.moment_splits()?)
        .map(|(&threshold, (left, right))| CurvePoint {
            threshold,
            loss: split_loss(left, right),
        })
        .collect();
    Ok(SplitScore::from_curve(feature_index, curve))
}

/// Scores every feature. The result is indexed by feature.
pub fn rft_score_all(
    matrix: &FeatureMatrix,
    target: &Target,
    config: BinningConfig,
) -> Result<Vec<RftScore>> {
    let y = continuous(target)?;
    target.check_len(matrix.n_samples())?;
    let (mean, variance) = mean_and_population_variance(y);
    (0..matrix.n_features())
        .into_par_iter()
        .map(|i| score_feature(i, matrix.column(i), target, config, mean, variance))
        .collect()
}
