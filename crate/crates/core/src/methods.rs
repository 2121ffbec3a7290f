//! One entry point over all scorers, normalizing their polarity.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::baselines::{self, BaselineMethod};
use crate::binning::BinningConfig;
use crate::data::{FeatureMatrix, Target, TargetKind};
use crate::dft::dft_score_all;
use crate::error::{Error, Result};
use crate::ranking::{rank, Polarity, RankedFeatures};
use crate::rft::rft_score_all;
use crate::split::SplitScore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dft,
    Rft,
    Anova,
    Corr,
    Var,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Dft,
        Method::Rft,
        Method::Anova,
        Method::Corr,
        Method::Var,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dft => "dft",
            Method::Rft => "rft",
            Method::Anova => "anova",
            Method::Corr => "corr",
            Method::Var => "var",
        }
    }

    pub fn polarity(self) -> Polarity {
        match self {
            Method::Dft | Method::Rft => Polarity::LossAscending,
            Method::Anova | Method::Corr | Method::Var => Polarity::ScoreDescending,
        }
    }

    /// Target kind the method needs, or `None` if it accepts either.
    pub fn required_target(self) -> Option<TargetKind> {
        match self {
            Method::Dft | Method::Anova => Some(TargetKind::Categorical),
            Method::Rft => Some(TargetKind::Continuous),
            Method::Corr | Method::Var => None,
        }
    }

    /// Whether scores come with a per-threshold loss curve.
    pub fn has_threshold(self) -> bool {
        matches!(self, Method::Dft | Method::Rft)
    }

    pub fn check_target(self, target: &Target) -> Result<()> {
        match self.required_target() {
            Some(kind) if kind != target.kind() => Err(Error::TargetKind {
                method: self.name(),
                expected: match kind {
                    TargetKind::Categorical => "categorical",
                    TargetKind::Continuous => "continuous",
                },
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// Per-feature output of one method, index-aligned with the matrix columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodScores {
    pub method: Method,
    pub polarity: Polarity,
    pub values: Vec<f64>,
    /// Optimal split threshold (split-loss methods only).
    pub thresholds: Vec<Option<f64>>,
    pub degenerate: Vec<bool>,
    /// Full split results (split-loss methods only).
    #[serde(skip)]
    pub splits: Option<Vec<SplitScore>>,
}

impl MethodScores {
    pub fn rank(&self) -> Result<RankedFeatures> {
        Ok(rank(&self.values, self.polarity)?.with_method(self.method.name()))
    }

    fn from_splits(method: Method, splits: Vec<SplitScore>) -> Self {
        Self {
            method,
            polarity: method.polarity(),
            values: splits.iter().map(|s| s.optimal_loss).collect(),
            thresholds: splits.iter().map(|s| Some(s.optimal_threshold)).collect(),
            degenerate: splits.iter().map(|s| s.degenerate).collect(),
            splits: Some(splits),
        }
    }
}

/// Scores every feature with `method`. `config` only affects split-loss
/// methods.
pub fn score_features(
    method: Method,
    matrix: &FeatureMatrix,
    target: &Target,
    config: BinningConfig,
) -> Result<MethodScores> {
    method.check_target(target)?;
    let baseline = match method {
        Method::Dft => {
            return Ok(MethodScores::from_splits(
                method,
                dft_score_all(matrix, target, config)?,
            ))
        }
        Method::Rft => {
            return Ok(MethodScores::from_splits(
                method,
                rft_score_all(matrix, target, config)?,
            ))
        }
        Method::Anova => BaselineMethod::AnovaF,
        Method::Corr => BaselineMethod::AbsCorr,
        Method::Var => BaselineMethod::Variance,
    };
    let scores = baselines::score_all(baseline, matrix, target)?;
    Ok(MethodScores {
        method,
        polarity: method.polarity(),
        values: scores.iter().map(|s| s.score).collect(),
        thresholds: vec![None; scores.len()],
        degenerate: scores.iter().map(|s| s.degenerate).collect(),
        splits: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("xgb".parse::<Method>().is_err());
    }

    #[test]
    fn target_compatibility() {
        let cat = Target::categorical(vec![0, 1, 0, 1], 2).unwrap();
        let cont = Target::continuous(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let m = FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 2.0, 3.0]]).unwrap();
        let cfg = BinningConfig::default();
        assert_eq!(
            score_features(Method::Rft, &m, &cat, cfg)
                .unwrap_err()
                .to_string(),
            "rft requires continuous target"
        );
        assert!(score_features(Method::Dft, &m, &cont, cfg).is_err());
        assert!(score_features(Method::Anova, &m, &cont, cfg).is_err());
        for method in [Method::Corr, Method::Var] {
            assert!(score_features(method, &m, &cat, cfg).is_ok());
            assert!(score_features(method, &m, &cont, cfg).is_ok());
        }
    }

    #[test]
    fn ranks_with_method_polarity() {
        let cat = Target::categorical(vec![0, 0, 1, 1], 2).unwrap();
        let m =
            FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 0.0, 1.0], vec![0.0, 1.0, 2.0, 3.0]])
                .unwrap();
        for method in [Method::Dft, Method::Anova, Method::Corr] {
            let scores = score_features(method, &m, &cat, BinningConfig::default()).unwrap();
            let ranked = scores.rank().unwrap();
            assert_eq!(ranked.order[0], 1, "{method}");
            assert_eq!(ranked.method, method.name());
        }
    }
}
