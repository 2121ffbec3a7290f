//! Candidate thresholds and per-feature bin histograms.
//!
//! A feature's range `[min, max]` is cut into `B` uniform segments and the
//! `B - 1` interior cut points are the candidate split thresholds. Samples
//! are accumulated once into `B` bins; the statistics of the left subset of
//! the split at threshold `b` are then the sum over bins `0..b`.
//!
//! Split rule: `x < threshold` goes left, everything else goes right. Bin
//! assignment starts from the clamped floor rule and is then reconciled
//! against the thresholds themselves, so a prefix of bins is exactly the set
//! of samples strictly below a threshold even when the floor computation
//! rounds across a boundary.

use serde::Serialize;

use crate::data::Target;
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinningConfig {
    n_bins: usize,
}

impl BinningConfig {
    pub fn new(n_bins: usize) -> Result<Self> {
        if n_bins < 2 {
            return Err(Error::TooFewBins(n_bins));
        }
        Ok(Self { n_bins })
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }
}

impl Default for BinningConfig {
    fn default() -> Self {
        Self {
            n_bins: DEFAULT_BINS,
        }
    }
}

/// The `B - 1` uniformly spaced split points of one feature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateThresholds {
    pub thresholds: Vec<f64>,
    pub feature_min: f64,
    pub feature_max: f64,
}

impl CandidateThresholds {
    pub fn is_degenerate(&self) -> bool {
        self.thresholds.is_empty()
    }

    /// Threshold of boundary `b` (1-based, as in `f_min + b/B * range`).
    pub fn at_boundary(&self, b: usize) -> f64 {
        self.thresholds[b - 1]
    }
}

/// Computes `min + (b / B) * (max - min)` for `b = 1..B-1`; empty when the
/// range is zero.
pub fn candidate_thresholds(
    feature_min: f64,
    feature_max: f64,
    config: BinningConfig,
) -> Result<CandidateThresholds> {
    if !(feature_min.is_finite() && feature_max.is_finite() && feature_min <= feature_max) {
        return Err(Error::InvalidArgument(format!(
            "invalid feature range [{feature_min}, {feature_max}]"
        )));
    }
    let bins = config.n_bins();
    let range = feature_max - feature_min;
    let thresholds = if range == 0.0 {
        Vec::new()
    } else {
        (1..bins)
            .map(|b| feature_min + (b as f64 / bins as f64) * range)
            .collect()
    };
    Ok(CandidateThresholds {
        thresholds,
        feature_min,
        feature_max,
    })
}

fn column_range(column: &[f64]) -> (f64, f64) {
    column
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Candidate thresholds for a feature column's observed range.
pub fn column_thresholds(column: &[f64], config: BinningConfig) -> Result<CandidateThresholds> {
    if column.is_empty() {
        return Err(Error::Empty);
    }
    let (lo, hi) = column_range(column);
    candidate_thresholds(lo, hi, config)
}

/// Bin of `x`: bins `0..b` hold exactly the values below threshold `b`.
/// Degenerate (constant) features put everything in the top bin.
pub fn bin_index(x: f64, candidates: &CandidateThresholds, n_bins: usize) -> usize {
    let t = &candidates.thresholds;
    if t.is_empty() {
        return n_bins - 1;
    }
    let range = candidates.feature_max - candidates.feature_min;
    let raw = (n_bins as f64 * (x - candidates.feature_min) / range).floor();
    let mut idx = if raw.is_nan() || raw < 0.0 {
        0
    } else {
        (raw as usize).min(n_bins - 1)
    };
    // bin idx spans [t[idx-1], t[idx]); nudge across any rounding mismatch
    while idx > 0 && x < t[idx - 1] {
        idx -= 1;
    }
    while idx < n_bins - 1 && x >= t[idx] {
        idx += 1;
    }
    idx
}

/// Per-bin sufficient statistics of one feature against a target.
#[derive(Debug, Clone, PartialEq)]
pub enum BinHistogram {
    Categorical {
        candidates: CandidateThresholds,
        n_classes: usize,
        /// `counts[bin * n_classes + class]`
        counts: Vec<u64>,
    },
    Continuous {
        candidates: CandidateThresholds,
        counts: Vec<u64>,
        /// Per-bin sum of `y - shift`.
        sums: Vec<f64>,
        /// Per-bin sum of `(y - shift)^2`.
        sumsqs: Vec<f64>,
        /// Offset subtracted from every target before accumulation.
        shift: f64,
    },
}

/// Accumulates a histogram of `column` against `target` in one pass.
pub fn build_histogram(
    column: &[f64],
    target: &Target,
    config: BinningConfig,
) -> Result<BinHistogram> {
    build_histogram_shifted(column, target, config, 0.0)
}

/// As [`build_histogram`], but continuous targets are accumulated as
/// `y - shift`. Centering on the target mean keeps the `sumsq - sum^2 / n`
/// identity well conditioned.
pub fn build_histogram_shifted(
    column: &[f64],
    target: &Target,
    config: BinningConfig,
    shift: f64,
) -> Result<BinHistogram> {
    target.check_len(column.len())?;
    if column.len() < 2 {
        return Err(Error::TooFewSamples(column.len()));
    }
    let candidates = column_thresholds(column, config)?;
    let bins = config.n_bins();
    match target {
        Target::Categorical {
            labels, n_classes, ..
        } => {
            let mut counts = vec![0u64; bins * n_classes];
            for (&x, &label) in column.iter().zip(labels) {
                counts[bin_index(x, &candidates, bins) * n_classes + label] += 1;
            }
            Ok(BinHistogram::Categorical {
                candidates,
                n_classes: *n_classes,
                counts,
            })
        }
        Target::Continuous { values } => {
            let mut counts = vec![0u64; bins];
            let mut sums = vec![0.0; bins];
            let mut sumsqs = vec![0.0; bins];
            for (&x, &y) in column.iter().zip(values) {
                let b = bin_index(x, &candidates, bins);
                let centered = y - shift;
                counts[b] += 1;
                sums[b] += centered;
                sumsqs[b] += centered * centered;
            }
            Ok(BinHistogram::Continuous {
                candidates,
                counts,
                sums,
                sumsqs,
                shift,
            })
        }
    }
}

/// Count, sum and sum of squares of (shifted) targets on one side of a split.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentSums {
    pub count: u64,
    pub sum: f64,
    pub sumsq: f64,
}

impl MomentSums {
    fn add(self, count: u64, sum: f64, sumsq: f64) -> Self {
        Self {
            count: self.count + count,
            sum: self.sum + sum,
            sumsq: self.sumsq + sumsq,
        }
    }
}

impl BinHistogram {
    pub fn candidates(&self) -> &CandidateThresholds {
        match self {
            BinHistogram::Categorical { candidates, .. }
            | BinHistogram::Continuous { candidates, .. } => candidates,
        }
    }

    pub fn n_bins(&self) -> usize {
        match self {
            BinHistogram::Categorical {
                counts, n_classes, ..
            } => counts.len() / n_classes,
            BinHistogram::Continuous { counts, .. } => counts.len(),
        }
    }

    pub fn n_samples(&self) -> u64 {
        match self {
            BinHistogram::Categorical { counts, .. } | BinHistogram::Continuous { counts, .. } => {
                counts.iter().sum()
            }
        }
    }

    /// Samples in bin `b`.
    pub fn bin_count(&self, b: usize) -> u64 {
        match self {
            BinHistogram::Categorical {
                counts, n_classes, ..
            } => counts[b * n_classes..(b + 1) * n_classes].iter().sum(),
            BinHistogram::Continuous { counts, .. } => counts[b],
        }
    }

    pub(crate) fn check_boundary(&self, boundary: usize) -> Result<()> {
        let max = self.n_bins() - 1;
        if boundary == 0 || boundary > max {
            return Err(Error::BoundaryOutOfRange { boundary, max });
        }
        Ok(())
    }

    /// Class counts of the left subset (`x < threshold b`) for every
    /// boundary `b = 1..B-1`, followed by the per-class totals.
    pub fn class_prefix_counts(&self) -> Result<(Vec<Vec<u64>>, Vec<u64>)> {
        let BinHistogram::Categorical {
            counts, n_classes, ..
        } = self
        else {
            return Err(Error::HistogramKind("expected a categorical histogram"));
        };
        let bins = self.n_bins();
        let mut running = vec![0u64; *n_classes];
        let mut prefixes = Vec::with_capacity(bins - 1);
        for bin in counts.chunks_exact(*n_classes).take(bins - 1) {
            for (acc, &c) in running.iter_mut().zip(bin) {
                *acc += c;
            }
            prefixes.push(running.clone());
        }
        let mut totals = running;
        for (acc, &c) in totals.iter_mut().zip(&counts[(bins - 1) * n_classes..]) {
            *acc += c;
        }
        Ok((prefixes, totals))
    }

    /// Left and right moment sums for every boundary `b = 1..B-1`. Left
    /// sides accumulate from the bottom bin up, right sides from the top bin
    /// down.
    pub fn moment_splits(&self) -> Result<Vec<(MomentSums, MomentSums)>> {
        let BinHistogram::Continuous {
            counts,
            sums,
            sumsqs,
            ..
        } = self
        else {
            return Err(Error::HistogramKind("expected a continuous histogram"));
        };
        let bins = counts.len();
        let mut left = Vec::with_capacity(bins - 1);
        let mut acc = MomentSums::default();
        for b in 0..bins - 1 {
            acc = acc.add(counts[b], sums[b], sumsqs[b]);
            left.push(acc);
        }
        let mut right = vec![MomentSums::default(); bins - 1];
        let mut acc = MomentSums::default();
        for b in (1..bins).rev() {
            acc = acc.add(counts[b], sums[b], sumsqs[b]);
            right[b - 1] = acc;
        }
        Ok(left.into_iter().zip(right).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(b: usize) -> BinningConfig {
        BinningConfig::new(b).unwrap()
    }

    #[test]
    fn thresholds_follow_uniform_cut_points() {
        assert_eq!(
            candidate_thresholds(0.0, 3.0, cfg(4)).unwrap().thresholds,
            vec![0.75, 1.5, 2.25]
        );
        let t = candidate_thresholds(0.0, 8.0, cfg(16)).unwrap().thresholds;
        assert_eq!(t.len(), 15);
        for (k, v) in t.iter().enumerate() {
            assert_eq!(*v, 0.5 * (k + 1) as f64);
        }
        assert!(candidate_thresholds(5.0, 5.0, cfg(16))
            .unwrap()
            .thresholds
            .is_empty());
    }

    #[test]
    fn rejects_bad_config_and_range() {
        assert!(matches!(BinningConfig::new(1), Err(Error::TooFewBins(1))));
        assert!(BinningConfig::new(0).is_err());
        assert_eq!(BinningConfig::default().n_bins(), 16);
        assert!(candidate_thresholds(2.0, 1.0, cfg(4)).is_err());
        assert!(candidate_thresholds(f64::NAN, 1.0, cfg(4)).is_err());
    }

    #[test]
    fn categorical_histogram_hand_example() {
        let target = Target::categorical(vec![0, 0, 1, 1], 2).unwrap();
        let h = build_histogram(&[0.0, 1.0, 2.0, 3.0], &target, cfg(4)).unwrap();
        let BinHistogram::Categorical { counts, .. } = &h else {
            panic!("wrong kind")
        };
        assert_eq!(counts, &[1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(h.n_samples(), 4);
    }

    #[test]
    fn continuous_histogram_hand_example() {
        let target = Target::continuous(vec![0.0, 2.0, 10.0, 12.0]).unwrap();
        let h = build_histogram(&[0.0, 1.0, 2.0, 3.0], &target, cfg(4)).unwrap();
        let BinHistogram::Continuous {
            counts,
            sums,
            sumsqs,
            ..
        } = &h
        else {
            panic!("wrong kind")
        };
        assert_eq!(counts, &[1, 1, 1, 1]);
        assert_eq!(sums, &[0.0, 2.0, 10.0, 12.0]);
        assert_eq!(sumsqs, &[0.0, 4.0, 100.0, 144.0]);
    }

    #[test]
    fn constant_feature_fills_top_bin() {
        let target = Target::categorical(vec![0, 1, 0], 2).unwrap();
        let h = build_histogram(&[5.0, 5.0, 5.0], &target, cfg(16)).unwrap();
        assert_eq!(h.bin_count(15), 3);
        assert!(h.candidates().is_degenerate());
    }

    #[test]
    fn threshold_ties_go_right_and_max_is_clamped() {
        let c = candidate_thresholds(0.0, 3.0, cfg(4)).unwrap();
        assert_eq!(bin_index(1.5, &c, 4), 2);
        assert_eq!(bin_index(0.75, &c, 4), 1);
        assert_eq!(bin_index(3.0, &c, 4), 3);
        assert_eq!(bin_index(0.0, &c, 4), 0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let target = Target::categorical(vec![0, 1, 1], 2).unwrap();
        assert!(matches!(
            build_histogram(&[0.0, 1.0], &target, cfg(4)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn prefix_views_reject_wrong_kind() {
        let cat = Target::categorical(vec![0, 1], 2).unwrap();
        let h = build_histogram(&[0.0, 1.0], &cat, cfg(2)).unwrap();
        assert!(h.moment_splits().is_err());
        let (prefix, totals) = h.class_prefix_counts().unwrap();
        assert_eq!(prefix, vec![vec![1, 0]]);
        assert_eq!(totals, vec![1, 1]);
    }
}
