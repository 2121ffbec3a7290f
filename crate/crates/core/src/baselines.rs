//! Classic filter scores used as comparison points. Higher means more
//! important, the opposite polarity of the split-loss tests.

use serde::Serialize;

use crate::data::{FeatureMatrix, Target};
use crate::error::{Error, Result};

/// Stand-in for an unbounded ANOVA F (zero within-class spread). Finite so
/// that it sorts first and serializes without NaN or null.
pub const SCORE_INFINITY: f64 = f64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineMethod {
    AnovaF,
    AbsCorr,
    Variance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineScore {
    pub feature_index: usize,
    pub method: BaselineMethod,
    pub score: f64,
    pub degenerate: bool,
}

impl BaselineScore {
    fn new(method: BaselineMethod, score: f64, degenerate: bool) -> Self {
        Self {
            feature_index: 0,
            method,
            score,
            degenerate,
        }
    }
}

fn is_constant(column: &[f64]) -> bool {
    column.windows(2).all(|w| w[0] == w[1])
}

/// One-way ANOVA F statistic of a feature grouped by class.
pub fn anova_f(column: &[f64], target: &Target) -> Result<BaselineScore> {
    let Target::Categorical {
        labels, n_classes, ..
    } = target
    else {
        return Err(Error::TargetKind {
            method: "anova",
            expected: "categorical",
        });
    };
    target.check_len(column.len())?;
    let n = column.len();
    let c = *n_classes;
    if n <= c {
        return Err(Error::TooFew {
            what: "samples for anova (more than the class count)",
            needed: c + 1,
            actual: n,
        });
    }
    if is_constant(column) {
        return Ok(BaselineScore::new(BaselineMethod::AnovaF, 0.0, true));
    }

    let mut sums = vec![0.0; c];
    let mut counts = vec![0usize; c];
    for (&x, &l) in column.iter().zip(labels) {
        sums[l] += x;
        counts[l] += 1;
    }
    let grand_mean = column.iter().sum::<f64>() / n as f64;
    let class_means: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &k)| if k == 0 { 0.0 } else { s / k as f64 })
        .collect();
    let ss_between: f64 = class_means
        .iter()
        .zip(&counts)
        .map(|(&m, &k)| k as f64 * (m - grand_mean).powi(2))
        .sum();
    let ss_within: f64 = column
        .iter()
        .zip(labels)
        .map(|(&x, &l)| (x - class_means[l]).powi(2))
        .sum();
    let ss_total = ss_between + ss_within;

    let score = if ss_within <= 1e-24 * ss_total {
        SCORE_INFINITY
    } else {
        (ss_between / (c - 1) as f64) / (ss_within / (n - c) as f64)
    };
    Ok(BaselineScore::new(BaselineMethod::AnovaF, score, false))
}

/// Absolute Pearson correlation between a feature and the target values.
pub fn abs_corr(column: &[f64], target_values: &[f64]) -> Result<BaselineScore> {
    if column.len() != target_values.len() {
        return Err(Error::LengthMismatch {
            expected: column.len(),
            actual: target_values.len(),
        });
    }
    if column.len() < 2 {
        return Err(Error::TooFewSamples(column.len()));
    }
    if is_constant(column) || is_constant(target_values) {
        return Ok(BaselineScore::new(BaselineMethod::AbsCorr, 0.0, true));
    }
    let n = column.len() as f64;
    let mx = column.iter().sum::<f64>() / n;
    let my = target_values.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in column.iter().zip(target_values) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(BaselineScore::new(
        BaselineMethod::AbsCorr,
        r.abs().min(1.0),
        false,
    ))
}

/// Unbiased sample variance of the feature; ignores the target.
pub fn variance_score(column: &[f64]) -> Result<BaselineScore> {
    if column.len() < 2 {
        return Err(Error::TooFewSamples(column.len()));
    }
    if is_constant(column) {
        return Ok(BaselineScore::new(BaselineMethod::Variance, 0.0, true));
    }
    let n = column.len() as f64;
    let mean = column.iter().sum::<f64>() / n;
    let var = column.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(BaselineScore::new(BaselineMethod::Variance, var, false))
}

/// Scores every feature of `matrix` with one baseline. Correlation against
/// a categorical target uses the class ids as reals.
pub fn score_all(
    method: BaselineMethod,
    matrix: &FeatureMatrix,
    target: &Target,
) -> Result<Vec<BaselineScore>> {
    target.check_len(matrix.n_samples())?;
    let reals = target.as_reals();
    matrix
        .columns()
        .enumerate()
        .map(|(i, column)| {
            let score = match method {
                BaselineMethod::AnovaF => anova_f(column, target),
                BaselineMethod::AbsCorr => abs_corr(column, &reals),
                BaselineMethod::Variance => variance_score(column),
            }?;
            Ok(BaselineScore {
                feature_index: i,
                ..score
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class() -> Target {
        Target::categorical(vec![0, 0, 1, 1], 2).unwrap()
    }

    #[test]
    fn anova_examples() {
        let s = anova_f(&[0.0, 1.0, 1.0, 2.0], &two_class()).unwrap();
        assert!((s.score - 2.0).abs() < 1e-12);
        let s = anova_f(&[0.0, 0.0, 1.0, 1.0], &two_class()).unwrap();
        assert_eq!(s.score, SCORE_INFINITY);
        assert!(!s.degenerate);
        let s = anova_f(&[3.0; 4], &two_class()).unwrap();
        assert_eq!((s.score, s.degenerate), (0.0, true));
    }

    #[test]
    fn anova_needs_more_samples_than_classes() {
        let t = Target::categorical(vec![0, 1], 2).unwrap();
        assert!(matches!(
            anova_f(&[0.0, 1.0], &t),
            Err(Error::TooFew { .. })
        ));
        let y = Target::continuous(vec![0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            anova_f(&[0.0, 1.0, 2.0], &y),
            Err(Error::TargetKind { .. })
        ));
    }

    #[test]
    fn corr_examples() {
        let x = [0.0, 1.0, 2.0, 3.0];
        assert!((abs_corr(&x, &x).unwrap().score - 1.0).abs() < 1e-12);
        assert!((abs_corr(&x, &[3.0, 2.0, 1.0, 0.0]).unwrap().score - 1.0).abs() < 1e-12);
        assert_eq!(
            abs_corr(&[0.0, 1.0, 0.0, 1.0], &[1.0, 1.0, -1.0, -1.0])
                .unwrap()
                .score,
            0.0
        );
        let s = abs_corr(&[1.0; 4], &x).unwrap();
        assert_eq!((s.score, s.degenerate), (0.0, true));
        let s = abs_corr(&x, &[2.0; 4]).unwrap();
        assert!(s.degenerate);
    }

    #[test]
    fn variance_examples() {
        assert!((variance_score(&[0.0, 1.0, 2.0, 3.0]).unwrap().score - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(variance_score(&[-1.0, 1.0]).unwrap().score, 2.0);
        let s = variance_score(&[4.0; 3]).unwrap();
        assert_eq!((s.score, s.degenerate), (0.0, true));
    }

    #[test]
    fn score_all_sets_indices() {
        let m =
            FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 1.0, 2.0], vec![0.0, 0.0, 1.0, 1.0]])
                .unwrap();
        let s = score_all(BaselineMethod::AnovaF, &m, &two_class()).unwrap();
        assert_eq!(s[1].feature_index, 1);
        assert!(s[1].score > s[0].score);
        let s = score_all(BaselineMethod::AbsCorr, &m, &two_class()).unwrap();
        assert!((s[1].score - 1.0).abs() < 1e-12);
    }
}
