//! Result type shared by the two split-loss tests, and the argmin rule.

use serde::Serialize;

/// Losses within this fraction of the curve's largest loss count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub threshold: f64,
    pub loss: f64,
}

/// Optimized binary-split loss of one feature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitScore {
    pub feature_index: usize,
    /// Minimum loss over the candidate thresholds.
    pub optimal_loss: f64,
    /// Smallest candidate threshold attaining `optimal_loss` (up to
    /// [`TIE_TOLERANCE`]); the feature minimum for degenerate features.
    pub optimal_threshold: f64,
    /// Loss at every candidate threshold, in increasing threshold order.
    pub loss_curve: Vec<CurvePoint>,
    /// Set when the feature is constant and admits no split.
    pub degenerate: bool,
}

impl SplitScore {
    pub(crate) fn from_curve(feature_index: usize, loss_curve: Vec<CurvePoint>) -> Self {
        let (optimal_loss, optimal_threshold) = pick_optimum(&loss_curve);
        Self {
            feature_index,
            optimal_loss,
            optimal_threshold,
            loss_curve,
            degenerate: false,
        }
    }

    pub(crate) fn degenerate(feature_index: usize, loss: f64, feature_min: f64) -> Self {
        Self {
            feature_index,
            optimal_loss: loss,
            optimal_threshold: feature_min,
            loss_curve: Vec::new(),
            degenerate: true,
        }
    }
}

/// Minimum loss of a non-empty curve, and the smallest threshold whose loss
/// is tied with it.
pub fn pick_optimum(curve: &[CurvePoint]) -> (f64, f64) {
    let min = curve.iter().map(|p| p.loss).fold(f64::INFINITY, f64::min);
    let scale = curve.iter().map(|p| p.loss.abs()).fold(0.0, f64::max);
    let tol = TIE_TOLERANCE * scale;
    let threshold = curve
        .iter()
        .find(|p| p.loss <= min + tol)
        .map_or(f64::NAN, |p| p.threshold);
    (min, threshold)
}
