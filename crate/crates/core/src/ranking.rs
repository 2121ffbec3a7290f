//! Ordering features by score, locating elbows on the ordered curve, and
//! picking the top `k`.
//!
//! Split-loss tests rank ascending (lower loss is better); filter baselines
//! rank descending. [`RankedFeatures`] records which, and the elbow detector
//! flips descending curves so it always sees a non-decreasing curve.
//!
//! The elbow detector min-max normalizes the ranked curve to `[0, 1]`,
//! takes discrete second differences at the interior ranks and reports two
//! cut-offs:
//!
//! * late elbow: the rank with the largest second difference,
//! * early elbow: the first rank whose second difference reaches
//!   [`EARLY_FRACTION`] of that maximum.
//!
//! Both are 1-based counts of selected features. The 0.5 fraction is a
//! convention; pass an explicit `k` to [`select_top_k`] to override.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub const EARLY_FRACTION: f64 = 0.5;

/// Second differences at or below this are treated as flat.
const FLAT_CURVATURE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    LossAscending,
    ScoreDescending,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedFeatures {
    pub method: String,
    /// Feature indices, most important first.
    pub order: Vec<usize>,
    /// Scores aligned with `order`.
    pub sorted_values: Vec<f64>,
    pub polarity: Polarity,
}

impl RankedFeatures {
    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = method.into();
        self
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Stable sort of feature indices by value; equal values keep index order.
pub fn rank(values: &[f64], polarity: Polarity) -> Result<RankedFeatures> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::InvalidArgument(format!(
            "score of feature {i} is NaN"
        )));
    }
    if polarity == Polarity::LossAscending && values.iter().any(|v| v.is_infinite()) {
        return Err(Error::InvalidArgument("losses must be finite".into()));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    match polarity {
        Polarity::LossAscending => order.sort_by(|&a, &b| values[a].total_cmp(&values[b])),
        Polarity::ScoreDescending => order.sort_by(|&a, &b| values[b].total_cmp(&values[a])),
    }
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    Ok(RankedFeatures {
        method: String::new(),
        order,
        sorted_values,
        polarity,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ElbowOptions {
    /// Centered moving-average window applied before differencing. `None`
    /// or a window of 1 disables smoothing.
    pub smoothing_window: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElbowReport {
    /// Number of features before the early elbow (1-based rank).
    pub early_index: usize,
    /// Number of features before the late elbow (1-based rank).
    pub late_index: usize,
    /// Second difference at ranks `2..=P-1` of the normalized curve.
    pub curvature_profile: Vec<f64>,
    /// No bend found (constant or straight curve); both indices equal `P`.
    pub degenerate: bool,
}

pub fn detect_elbow(ranked: &RankedFeatures) -> Result<ElbowReport> {
    detect_elbow_with(ranked, ElbowOptions::default())
}

pub fn detect_elbow_with(ranked: &RankedFeatures, options: ElbowOptions) -> Result<ElbowReport> {
    let p = ranked.sorted_values.len();
    if p < 3 {
        return Err(Error::TooFew {
            what: "ranked features for elbow detection",
            needed: 3,
            actual: p,
        });
    }
    let curve = normalized_curve(ranked);
    let Some(curve) = curve else {
        return Ok(ElbowReport {
            early_index: p,
            late_index: p,
            curvature_profile: vec![0.0; p - 2],
            degenerate: true,
        });
    };
    let curve = match options.smoothing_window {
        Some(w) if w > 1 => moving_average(&curve, w),
        _ => curve,
    };
    let profile: Vec<f64> = curve.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();

    // first maximum wins ties
    let (late_pos, max) =
        profile
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
    if max <= FLAT_CURVATURE {
        return Ok(ElbowReport {
            early_index: p,
            late_index: p,
            curvature_profile: profile,
            degenerate: true,
        });
    }
    let early_pos = profile
        .iter()
        .position(|&v| v >= EARLY_FRACTION * max)
        .unwrap_or(late_pos);
    // profile[0] sits at rank 2
    Ok(ElbowReport {
        early_index: early_pos + 2,
        late_index: late_pos + 2,
        curvature_profile: profile,
        degenerate: false,
    })
}

/// Ascending curve scaled to `[0, 1]`; `None` if it is constant.
fn normalized_curve(ranked: &RankedFeatures) -> Option<Vec<f64>> {
    let oriented: Vec<f64> = match ranked.polarity {
        Polarity::LossAscending => ranked.sorted_values.clone(),
        Polarity::ScoreDescending => ranked.sorted_values.iter().map(|v| -v).collect(),
    };
    let finite_min = oriented
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min);
    if !finite_min.is_finite() {
        return None;
    }
    // unbounded scores (flipped to -inf) sit level with the best finite one
    let oriented: Vec<f64> = oriented.iter().map(|&v| v.max(finite_min)).collect();
    let lo = oriented[0];
    let hi = oriented[oriented.len() - 1];
    let range = hi - lo;
    if !range.is_finite() || range <= 0.0 {
        return None;
    }
    Some(oriented.iter().map(|v| (v - lo) / range).collect())
}

fn moving_average(curve: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..curve.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + window - half).min(curve.len());
            curve[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

/// The first `k` ranked features, in rank order and as a set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub ordered: Vec<usize>,
    pub set: BTreeSet<usize>,
}

pub fn select_top_k(ranked: &RankedFeatures, k: usize) -> Result<Selection> {
    if k == 0 || k > ranked.len() {
        return Err(Error::KOutOfRange {
            k,
            max: ranked.len(),
        });
    }
    let ordered = ranked.order[..k].to_vec();
    let set = ordered.iter().copied().collect();
    Ok(Selection { ordered, set })
}
