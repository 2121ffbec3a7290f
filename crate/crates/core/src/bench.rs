//! Side-by-side comparison of feature selectors on a train/test pair.
//!
//! Each method ranks the features on the training data, the early and late
//! elbows of its ranked curve pick two subset sizes, and each subset is
//! scored downstream on the test data: nearest-centroid accuracy for
//! classification, least-squares MSE for regression. The whole comparison
//! is repeated on a copy of both sets perturbed with Gaussian noise.

use serde::Serialize;

use crate::binning::BinningConfig;
use crate::data::{add_gaussian_noise, TargetKind};
use crate::error::Result;
use crate::eval::{least_squares_eval, nearest_centroid_eval, Dataset, Metric};
use crate::methods::{score_features, Method};
use crate::ranking::{detect_elbow, select_top_k, RankedFeatures};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub bins: BinningConfig,
    /// Standard deviation of the noise added to the noisy copy.
    pub noise_sigma: f64,
    pub seed: u64,
    /// Methods to compare; empty means every method compatible with the
    /// target.
    pub methods: Vec<Method>,
}

/// Subset size and downstream metric under one condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchCell {
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    /// `early` or `late`.
    pub selection: &'static str,
    pub clean: BenchCell,
    pub noisy: BenchCell,
}

/// Fraction of the known informative features found in a method's top
/// `n_informative`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recovery {
    pub method: Method,
    pub clean: f64,
    pub noisy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub metric: Metric,
    pub n_features: usize,
    pub noise_sigma: f64,
    /// Metric using every feature.
    pub all_features: BenchCell,
    pub all_features_noisy: BenchCell,
    pub rows: Vec<BenchRow>,
    pub recovery: Vec<Recovery>,
}

fn default_methods(kind: TargetKind) -> Vec<Method> {
    match kind {
        TargetKind::Categorical => vec![Method::Dft, Method::Anova, Method::Corr, Method::Var],
        TargetKind::Continuous => vec![Method::Rft, Method::Corr, Method::Var],
    }
}

fn evaluate(train: &Dataset, test: &Dataset, selected: &[usize]) -> Result<f64> {
    let result = match train.target.kind() {
        TargetKind::Categorical => nearest_centroid_eval(train, test, selected)?,
        TargetKind::Continuous => least_squares_eval(train, test, selected)?,
    };
    Ok(result.value)
}

/// Elbow sizes `(early, late)`; curves too short for elbow detection keep
/// every feature.
pub fn elbow_sizes(ranked: &RankedFeatures) -> Result<(usize, usize)> {
    if ranked.len() < 3 {
        return Ok((ranked.len(), ranked.len()));
    }
    let elbow = detect_elbow(ranked)?;
    Ok((elbow.early_index, elbow.late_index))
}

struct Condition {
    train: Dataset,
    test: Dataset,
}

impl Condition {
    fn run(&self, method: Method, bins: BinningConfig) -> Result<(RankedFeatures, [BenchCell; 2])> {
        let ranked =
            score_features(method, &self.train.matrix, &self.train.target, bins)?.rank()?;
        let (early, late) = elbow_sizes(&ranked)?;
        let mut cells = [BenchCell { k: 0, value: 0.0 }; 2];
        for (cell, k) in cells.iter_mut().zip([early, late]) {
            let chosen = select_top_k(&ranked, k)?;
            *cell = BenchCell {
                k,
                value: evaluate(&self.train, &self.test, &chosen.ordered)?,
            };
        }
        Ok((ranked, cells))
    }

    fn all_features(&self) -> Result<BenchCell> {
        let p = self.train.matrix.n_features();
        let all: Vec<usize> = (0..p).collect();
        Ok(BenchCell {
            k: p,
            value: evaluate(&self.train, &self.test, &all)?,
        })
    }
}

fn recall(ranked: &RankedFeatures, informative: &[usize]) -> f64 {
    if informative.is_empty() {
        return 0.0;
    }
    let top = &ranked.order[..informative.len().min(ranked.len())];
    let hits = informative.iter().filter(|i| top.contains(i)).count();
    hits as f64 / informative.len() as f64
}

/// Runs the comparison. `informative` lists the truly informative features
/// when known (synthetic data) and enables the recovery table.
pub fn run_bench(
    train: &Dataset,
    test: &Dataset,
    informative: Option<&[usize]>,
    config: &BenchConfig,
) -> Result<BenchReport> {
    let kind = train.target.kind();
    let methods = if config.methods.is_empty() {
        default_methods(kind)
    } else {
        config.methods.clone()
    };
    let clean = Condition {
        train: train.clone(),
        test: test.clone(),
    };
    let noisy = Condition {
        train: Dataset::new(
            add_gaussian_noise(&train.matrix, config.noise_sigma, config.seed)?,
            train.target.clone(),
        )?,
        test: Dataset::new(
            add_gaussian_noise(
                &test.matrix,
                config.noise_sigma,
                config.seed.wrapping_add(1),
            )?,
            test.target.clone(),
        )?,
    };

    let mut rows = Vec::new();
    let mut recovery = Vec::new();
    for method in methods {
        let (ranked_clean, clean_cells) = clean.run(method, config.bins)?;
        let (ranked_noisy, noisy_cells) = noisy.run(method, config.bins)?;
        for (i, selection) in ["early", "late"].into_iter().enumerate() {
            rows.push(BenchRow {
                method,
                selection,
                clean: clean_cells[i],
                noisy: noisy_cells[i],
            });
        }
        if let Some(informative) = informative {
            recovery.push(Recovery {
                method,
                clean: recall(&ranked_clean, informative),
                noisy: recall(&ranked_noisy, informative),
            });
        }
    }

    Ok(BenchReport {
        metric: match kind {
            TargetKind::Categorical => Metric::Accuracy,
            TargetKind::Continuous => Metric::Mse,
        },
        n_features: train.matrix.n_features(),
        noise_sigma: config.noise_sigma,
        all_features: clean.all_features()?,
        all_features_noisy: noisy.all_features()?,
        rows,
        recovery,
    })
}
