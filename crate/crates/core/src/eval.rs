//! Downstream checks for a selected feature subset, and seeded synthetic
//! data to run them on.
//!
//! Random draws use ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, with standard normals from `rand_distr`.
//! Samples are drawn row by row, features left to right.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::data::{FeatureMatrix, Target};
use crate::error::{Error, Result};

/// Ridge term added to the normal equations.
pub const RIDGE_JITTER: f64 = 1e-8;

/// A feature matrix with its target.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub matrix: FeatureMatrix,
    pub target: Target,
}

impl Dataset {
    pub fn new(matrix: FeatureMatrix, target: Target) -> Result<Self> {
        target.check_len(matrix.n_samples())?;
        Ok(Self { matrix, target })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        Self::new(
            self.matrix.select_rows(rows)?,
            self.target.select_rows(rows)?,
        )
    }
}

/// Two balanced Gaussian classes. Informative features come first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSpec {
    pub n_per_class: usize,
    pub n_informative: usize,
    pub n_noise: usize,
    /// Distance between the class means on each informative feature, in
    /// units of the within-class standard deviation.
    pub separation: f64,
    pub seed: u64,
}

/// Linear target over the informative features plus unit Gaussian noise.
/// Informative features come first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionSpec {
    pub n_samples: usize,
    /// One coefficient per informative feature.
    pub coefficients: Vec<f64>,
    pub n_noise: usize,
    pub seed: u64,
}

impl RegressionSpec {
    pub fn n_informative(&self) -> usize {
        self.coefficients.len()
    }
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Rows alternate between class 0 and class 1. Informative features are
/// `N(-separation/2, 1)` for class 0 and `N(+separation/2, 1)` for class 1;
/// noise features are `N(0, 1)` for both.
pub fn generate_classification(spec: &ClassificationSpec) -> Result<Dataset> {
    let p = spec.n_informative + spec.n_noise;
    if p == 0 {
        return Err(Error::NoFeatures);
    }
    if spec.n_per_class == 0 {
        return Err(Error::TooFewSamples(0));
    }
    if !spec.separation.is_finite() {
        return Err(Error::InvalidArgument("separation must be finite".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = 2 * spec.n_per_class;
    let mut columns = vec![Vec::with_capacity(n); p];
    let mut labels = Vec::with_capacity(n);
    for row in 0..n {
        let class = row % 2;
        let shift = if class == 0 { -0.5 } else { 0.5 } * spec.separation;
        for (j, column) in columns.iter_mut().enumerate() {
            let z = normal(&mut rng);
            column.push(if j < spec.n_informative { z + shift } else { z });
        }
        labels.push(class);
    }
    Dataset::new(
        FeatureMatrix::from_columns(columns)?,
        Target::categorical(labels, 2)?,
    )
}

/// `y = sum_j coefficients[j] * x_j + eps`, every feature and `eps` i.i.d.
/// `N(0, 1)`.
pub fn generate_regression(spec: &RegressionSpec) -> Result<Dataset> {
    let n_inf = spec.n_informative();
    let p = n_inf + spec.n_noise;
    if p == 0 {
        return Err(Error::NoFeatures);
    }
    if spec.coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("coefficients must be finite".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_samples;
    let mut columns = vec![Vec::with_capacity(n); p];
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let mut acc = 0.0;
        for (j, column) in columns.iter_mut().enumerate() {
            let x = normal(&mut rng);
            if j < n_inf {
                acc += spec.coefficients[j] * x;
            }
            column.push(x);
        }
        y.push(acc + normal(&mut rng));
    }
    Dataset::new(
        FeatureMatrix::from_columns(columns)?,
        Target::continuous(y)?,
    )
}

/// Shuffled train/test split. Categorical targets are split per class so
/// both sides contain every class.
pub fn holdout_split(data: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = data.matrix.n_samples();
    let groups: Vec<Vec<usize>> = match &data.target {
        Target::Categorical {
            labels, n_classes, ..
        } => (0..*n_classes)
            .map(|c| (0..n).filter(|&i| labels[i] == c).collect())
            .collect(),
        Target::Continuous { .. } => vec![(0..n).collect()],
    };
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for mut group in groups {
        group.shuffle(&mut rng);
        let n_test = ((group.len() as f64 * test_fraction).round() as usize)
            .clamp(1, group.len().saturating_sub(1).max(1));
        if group.len() < 2 {
            return Err(Error::TooFew {
                what: "samples per group for a holdout split",
                needed: 2,
                actual: group.len(),
            });
        }
        test.extend_from_slice(&group[..n_test]);
        train.extend_from_slice(&group[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((data.select_rows(&train)?, data.select_rows(&test)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Accuracy,
    Mse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub metric: Metric,
    pub value: f64,
    pub n_features_used: usize,
    pub split: Split,
}

/// Column means and standard deviations of the training data; constant
/// columns get a unit scale.
struct Standardizer {
    means: Vec<f64>,
    scales: Vec<f64>,
}

impl Standardizer {
    fn fit(matrix: &FeatureMatrix, selected: &[usize]) -> Self {
        let n = matrix.n_samples() as f64;
        let (means, scales) = selected
            .iter()
            .map(|&i| {
                let col = matrix.column(i);
                let mean = col.iter().sum::<f64>() / n;
                let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
                let sd = var.sqrt();
                (mean, if sd > 0.0 { sd } else { 1.0 })
            })
            .unzip();
        Self { means, scales }
    }

    fn row(&self, matrix: &FeatureMatrix, selected: &[usize], row: usize) -> Vec<f64> {
        selected
            .iter()
            .enumerate()
            .map(|(k, &i)| (matrix.get(row, i) - self.means[k]) / self.scales[k])
            .collect()
    }
}

fn check_selection(selected: &[usize], train: &Dataset, test: &Dataset) -> Result<()> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("empty feature selection".into()));
    }
    let p = train.matrix.n_features();
    if test.matrix.n_features() != p {
        return Err(Error::LengthMismatch {
            expected: p,
            actual: test.matrix.n_features(),
        });
    }
    if let Some(&bad) = selected.iter().find(|&&i| i >= p) {
        return Err(Error::FeatureOutOfRange {
            index: bad,
            n_features: p,
        });
    }
    Ok(())
}

/// Test accuracy of a nearest-class-centroid classifier on the selected
/// features, standardized with training statistics. Distance ties go to the
/// lower class id.
pub fn nearest_centroid_eval(
    train: &Dataset,
    test: &Dataset,
    selected: &[usize],
) -> Result<EvalResult> {
    check_selection(selected, train, test)?;
    let (Some(train_labels), Some(test_labels)) = (train.target.labels(), test.target.labels())
    else {
        return Err(Error::TargetKind {
            method: "nearest-centroid evaluation",
            expected: "categorical",
        });
    };
    let n_classes = train.target.n_classes().unwrap_or(0);
    let standardizer = Standardizer::fit(&train.matrix, selected);

    let k = selected.len();
    let mut centroids = vec![vec![0.0; k]; n_classes];
    let mut counts = vec![0usize; n_classes];
    for (row, &label) in train_labels.iter().enumerate() {
        let z = standardizer.row(&train.matrix, selected, row);
        for (acc, v) in centroids[label].iter_mut().zip(z) {
            *acc += v;
        }
        counts[label] += 1;
    }
    for (centroid, &count) in centroids.iter_mut().zip(&counts) {
        if count > 0 {
            centroid.iter_mut().for_each(|v| *v /= count as f64);
        }
    }
    if let Some(&missing) = test_labels
        .iter()
        .find(|&&l| l >= n_classes || counts[l] == 0)
    {
        return Err(Error::ClassAbsentFromTrain(missing));
    }

    let correct = test_labels
        .iter()
        .enumerate()
        .filter(|&(row, &label)| {
            let z = standardizer.row(&test.matrix, selected, row);
            let mut best = (f64::INFINITY, 0);
            for (class, centroid) in centroids.iter().enumerate() {
                if counts[class] == 0 {
                    continue;
                }
                let d: f64 = centroid.iter().zip(&z).map(|(c, v)| (c - v).powi(2)).sum();
                if d < best.0 {
                    best = (d, class);
                }
            }
            best.1 == label
        })
        .count();
    Ok(EvalResult {
        metric: Metric::Accuracy,
        value: correct as f64 / test_labels.len() as f64,
        n_features_used: selected.len(),
        split: Split::Test,
    })
}

/// Test MSE of ordinary least squares with an intercept on the selected
/// features. Features are standardized with training statistics and the
/// normal equations carry a [`RIDGE_JITTER`] ridge.
pub fn least_squares_eval(
    train: &Dataset,
    test: &Dataset,
    selected: &[usize],
) -> Result<EvalResult> {
    check_selection(selected, train, test)?;
    let (Some(y_train), Some(y_test)) = (train.target.values(), test.target.values()) else {
        return Err(Error::TargetKind {
            method: "least-squares evaluation",
            expected: "continuous",
        });
    };
    let n = train.matrix.n_samples();
    let k = selected.len();
    if n <= k + 1 {
        return Err(Error::TooFew {
            what: "training samples for least squares (more than features + 1)",
            needed: k + 2,
            actual: n,
        });
    }
    let standardizer = Standardizer::fit(&train.matrix, selected);
    let design = |data: &Dataset| {
        let rows = data.matrix.n_samples();
        DMatrix::from_fn(rows, k + 1, |r, c| {
            if c == 0 {
                1.0
            } else {
                let i = selected[c - 1];
                (data.matrix.get(r, i) - standardizer.means[c - 1]) / standardizer.scales[c - 1]
            }
        })
    };
    let x = design(train);
    let y = DVector::from_column_slice(y_train);
    let mut gram = x.transpose() * &x;
    for d in 0..=k {
        gram[(d, d)] += RIDGE_JITTER;
    }
    let rhs = x.transpose() * y;
    let beta = gram.cholesky().ok_or(Error::SingularDesign)?.solve(&rhs);
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::SingularDesign);
    }

    let predictions = design(test) * beta;
    let mse = predictions
        .iter()
        .zip(y_test)
        .map(|(p, y)| (p - y).powi(2))
        .sum::<f64>()
        / y_test.len() as f64;
    Ok(EvalResult {
        metric: Metric::Mse,
        value: mse,
        n_features_used: k,
        split: Split::Test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_spec(separation: f64, n_noise: usize, seed: u64) -> ClassificationSpec {
        ClassificationSpec {
            n_per_class: 500,
            n_informative: 5,
            n_noise,
            separation,
            seed,
        }
    }

    #[test]
    fn classification_generator_is_seeded() {
        let a = generate_classification(&class_spec(6.0, 45, 3)).unwrap();
        let b = generate_classification(&class_spec(6.0, 45, 3)).unwrap();
        assert_eq!(a, b);
        let c = generate_classification(&class_spec(6.0, 45, 4)).unwrap();
        assert_ne!(a, c);
        assert_eq!(a.matrix.n_features(), 50);
        assert_eq!(a.matrix.n_samples(), 1000);
        assert_eq!(a.target.class_counts(), Some(vec![500, 500]));
    }

    #[test]
    fn informative_means_are_shifted() {
        let d = generate_classification(&class_spec(6.0, 1, 1)).unwrap();
        let labels = d.target.labels().unwrap();
        let mean_of = |col: &[f64], class: usize| {
            let v: Vec<f64> = col
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == class)
                .map(|(x, _)| *x)
                .collect();
            v.iter().sum::<f64>() / v.len() as f64
        };
        assert!((mean_of(d.matrix.column(0), 0) + 3.0).abs() < 0.2);
        assert!((mean_of(d.matrix.column(0), 1) - 3.0).abs() < 0.2);
        assert!(mean_of(d.matrix.column(5), 1).abs() < 0.2);
    }

    #[test]
    fn generator_rejects_empty_feature_set() {
        let spec = ClassificationSpec {
            n_informative: 0,
            n_noise: 0,
            ..class_spec(1.0, 0, 0)
        };
        assert!(matches!(
            generate_classification(&spec),
            Err(Error::NoFeatures)
        ));
        let spec = RegressionSpec {
            n_samples: 10,
            coefficients: vec![],
            n_noise: 0,
            seed: 0,
        };
        assert!(generate_regression(&spec).is_err());
    }

    #[test]
    fn nearest_centroid_on_training_blobs() {
        let m = FeatureMatrix::from_rows(&[
            vec![0.0, 5.0],
            vec![0.1, 5.0],
            vec![10.0, 5.0],
            vec![10.1, 5.0],
        ])
        .unwrap();
        let d = Dataset::new(m, Target::categorical(vec![0, 0, 1, 1], 2).unwrap()).unwrap();
        let r = nearest_centroid_eval(&d, &d, &[0, 1]).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.metric, Metric::Accuracy);
        assert!(nearest_centroid_eval(&d, &d, &[]).is_err());
    }

    #[test]
    fn nearest_centroid_separated_vs_noise() {
        let train = generate_classification(&class_spec(6.0, 45, 10)).unwrap();
        let test = generate_classification(&class_spec(6.0, 45, 11)).unwrap();
        let all: Vec<usize> = (0..50).collect();
        let noise: Vec<usize> = (5..50).collect();
        assert!(nearest_centroid_eval(&train, &test, &all).unwrap().value >= 0.99);
        let chance = nearest_centroid_eval(&train, &test, &noise).unwrap().value;
        assert!((chance - 0.5).abs() <= 0.05, "{chance}");
    }

    #[test]
    fn class_absent_from_train_is_an_error() {
        let m = FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 2.0, 3.0]]).unwrap();
        let train =
            Dataset::new(m.clone(), Target::categorical(vec![0, 1, 0, 1], 2).unwrap()).unwrap();
        let test = Dataset::new(m, Target::categorical(vec![0, 1, 2, 2], 3).unwrap()).unwrap();
        assert!(matches!(
            nearest_centroid_eval(&train, &test, &[0]),
            Err(Error::ClassAbsentFromTrain(2))
        ));
    }

    #[test]
    fn least_squares_exact_fit() {
        let spec = RegressionSpec {
            n_samples: 200,
            coefficients: vec![2.0, -1.0],
            n_noise: 1,
            seed: 5,
        };
        let d = generate_regression(&spec).unwrap();
        // replace y by the noiseless linear part
        let y: Vec<f64> = (0..200)
            .map(|r| 3.0 + 2.0 * d.matrix.get(r, 0) - d.matrix.get(r, 1))
            .collect();
        let exact = Dataset::new(d.matrix.clone(), Target::continuous(y).unwrap()).unwrap();
        let (train, test) = holdout_split(&exact, 0.25, 1).unwrap();
        let r = least_squares_eval(&train, &test, &[0, 1]).unwrap();
        assert!(r.value <= 1e-10, "{}", r.value);
    }

    #[test]
    fn least_squares_noise_dims_give_target_variance() {
        let spec = RegressionSpec {
            n_samples: 2000,
            coefficients: vec![1.0; 5],
            n_noise: 10,
            seed: 8,
        };
        let train = generate_regression(&spec).unwrap();
        let test = generate_regression(&RegressionSpec { seed: 9, ..spec }).unwrap();
        let y = test.target.values().unwrap();
        let var = crate::rft::population_variance(y);
        let noise_only: Vec<usize> = (5..15).collect();
        let mse = least_squares_eval(&train, &test, &noise_only)
            .unwrap()
            .value;
        assert!((mse / var - 1.0).abs() < 0.05, "{mse} vs {var}");

        let sufficient: Vec<usize> = (0..5).collect();
        let padded: Vec<usize> = (0..15).collect();
        let a = least_squares_eval(&train, &test, &sufficient)
            .unwrap()
            .value;
        let b = least_squares_eval(&train, &test, &padded).unwrap().value;
        assert!(((b - a) / a).abs() < 0.10);
    }

    #[test]
    fn least_squares_preconditions() {
        let m =
            FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0]]).unwrap();
        let d = Dataset::new(m, Target::continuous(vec![0.0, 1.0, 2.0]).unwrap()).unwrap();
        assert!(matches!(
            least_squares_eval(&d, &d, &[0, 1]),
            Err(Error::TooFew { .. })
        ));
        assert!(least_squares_eval(&d, &d, &[0]).is_ok());
        assert!(least_squares_eval(&d, &d, &[]).is_err());
    }

    #[test]
    fn stratified_holdout_keeps_classes() {
        let d = generate_classification(&class_spec(1.0, 2, 0)).unwrap();
        let (train, test) = holdout_split(&d, 0.2, 7).unwrap();
        assert_eq!(test.target.class_counts(), Some(vec![100, 100]));
        assert_eq!(train.target.class_counts(), Some(vec![400, 400]));
        let again = holdout_split(&d, 0.2, 7).unwrap();
        assert_eq!(again.0, train);
    }
}
