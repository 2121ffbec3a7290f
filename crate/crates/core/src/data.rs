//! Dataset representation, CSV ingestion and validation.
//!
//! A [`FeatureMatrix`] stores `N` samples by `P` features column-major, so
//! that per-feature scoring reads one contiguous slice. A [`Target`] is either
//! dense categorical class ids or finite regression values. Both are
//! validated on construction and immutable afterwards.

use std::collections::HashMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense `N x P` table of finite values, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n_samples: usize,
    n_features: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    /// Builds a matrix from feature columns. Every column must have the same
    /// length `N >= 2` and contain only finite values.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let n_features = columns.len();
        if n_features == 0 {
            return Err(Error::NoFeatures);
        }
        let n_samples = columns[0].len();
        let mut values = Vec::with_capacity(n_samples * n_features);
        for (col, column) in columns.into_iter().enumerate() {
            if column.len() != n_samples {
                return Err(Error::LengthMismatch {
                    expected: n_samples,
                    actual: column.len(),
                });
            }
            if let Some(row) = column.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            values.extend(column);
        }
        Self::from_column_major(n_samples, n_features, values)
    }

    /// Builds a matrix from sample rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_samples = rows.len();
        let n_features = rows.first().map_or(0, Vec::len);
        if n_features == 0 {
            return Err(Error::NoFeatures);
        }
        let mut columns = vec![Vec::with_capacity(n_samples); n_features];
        for row in rows {
            if row.len() != n_features {
                return Err(Error::LengthMismatch {
                    expected: n_features,
                    actual: row.len(),
                });
            }
            for (column, &v) in columns.iter_mut().zip(row) {
                column.push(v);
            }
        }
        Self::from_columns(columns)
    }

    fn from_column_major(n_samples: usize, n_features: usize, values: Vec<f64>) -> Result<Self> {
        if n_features == 0 {
            return Err(Error::NoFeatures);
        }
        if n_samples < 2 {
            return Err(Error::TooFewSamples(n_samples));
        }
        if values.len() != n_samples * n_features {
            return Err(Error::LengthMismatch {
                expected: n_samples * n_features,
                actual: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos % n_samples,
                col: pos / n_samples,
            });
        }
        Ok(Self {
            n_samples,
            n_features,
            values,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// The `N` values of feature `i` in row order.
    ///
    /// Panics if `i >= n_features()`.
    pub fn column(&self, i: usize) -> &[f64] {
        assert!(i < self.n_features, "feature index {i} out of range");
        &self.values[i * self.n_samples..(i + 1) * self.n_samples]
    }

    pub fn columns(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.n_samples)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.column(col)[row]
    }

    /// New matrix holding only the listed features, in the listed order.
    pub fn select_features(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::NoFeatures);
        }
        let mut values = Vec::with_capacity(indices.len() * self.n_samples);
        for &i in indices {
            if i >= self.n_features {
                return Err(Error::FeatureOutOfRange {
                    index: i,
                    n_features: self.n_features,
                });
            }
            values.extend_from_slice(self.column(i));
        }
        Self::from_column_major(self.n_samples, indices.len(), values)
    }

    /// New matrix holding only the listed samples, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.n_features);
        for column in self.columns() {
            for &r in rows {
                if r >= self.n_samples {
                    return Err(Error::LengthMismatch {
                        expected: self.n_samples,
                        actual: r + 1,
                    });
                }
                values.push(column[r]);
            }
        }
        Self::from_column_major(rows.len(), self.n_features, values)
    }

    /// Applies `f(feature_index, value)` to every entry.
    pub fn map_columns(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(pos, &v)| f(pos / self.n_samples, v))
            .collect();
        Self::from_column_major(self.n_samples, self.n_features, values)
    }
}

/// Whether a label column holds class names or regression values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Categorical,
    Continuous,
}

impl FromStr for TargetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "categorical" => Ok(TargetKind::Categorical),
            "continuous" => Ok(TargetKind::Continuous),
            other => Err(Error::InvalidArgument(format!(
                "unknown target kind {other:?}"
            ))),
        }
    }
}

/// Supervision signal paired with a [`FeatureMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Categorical {
        labels: Vec<usize>,
        n_classes: usize,
        /// Original label text for each class id, when known.
        class_names: Vec<String>,
    },
    Continuous {
        values: Vec<f64>,
    },
}

impl Target {
    /// Categorical target from dense ids in `[0, n_classes)`. Every class
    /// must occur at least once.
    pub fn categorical(labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        let class_names = (0..n_classes).map(|c| c.to_string()).collect();
        Self::categorical_named(labels, n_classes, class_names)
    }

    fn categorical_named(
        labels: Vec<usize>,
        n_classes: usize,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::TooFewSamples(labels.len()));
        }
        if n_classes < 2 {
            return Err(Error::TooFewClasses(n_classes));
        }
        let mut counts = vec![0usize; n_classes];
        for &id in &labels {
            if id >= n_classes {
                return Err(Error::ClassOutOfRange { id, n_classes });
            }
            counts[id] += 1;
        }
        if let Some(empty) = counts.iter().position(|&c| c == 0) {
            return Err(Error::EmptyClass(empty));
        }
        Ok(Target::Categorical {
            labels,
            n_classes,
            class_names,
        })
    }

    /// Categorical target from arbitrary label text. Ids are assigned in
    /// order of first appearance.
    pub fn from_label_strings<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut ids = HashMap::new();
        let mut class_names = Vec::new();
        let dense = labels
            .iter()
            .map(|label| {
                let label = label.as_ref();
                *ids.entry(label.to_owned()).or_insert_with(|| {
                    class_names.push(label.to_owned());
                    class_names.len() - 1
                })
            })
            .collect::<Vec<_>>();
        if labels.len() >= 2 && class_names.len() < 2 {
            return Err(Error::TooFewClasses(class_names.len()));
        }
        let n_classes = class_names.len();
        Self::categorical_named(dense, n_classes, class_names)
    }

    pub fn continuous(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewSamples(values.len()));
        }
        if let Some(row) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row, col: 0 });
        }
        Ok(Target::Continuous { values })
    }

    pub fn len(&self) -> usize {
        match self {
            Target::Categorical { labels, .. } => labels.len(),
            Target::Continuous { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> TargetKind {
        match self {
            Target::Categorical { .. } => TargetKind::Categorical,
            Target::Continuous { .. } => TargetKind::Continuous,
        }
    }

    pub fn n_classes(&self) -> Option<usize> {
        match self {
            Target::Categorical { n_classes, .. } => Some(*n_classes),
            Target::Continuous { .. } => None,
        }
    }

    pub fn labels(&self) -> Option<&[usize]> {
        match self {
            Target::Categorical { labels, .. } => Some(labels),
            Target::Continuous { .. } => None,
        }
    }

    pub fn values(&self) -> Option<&[f64]> {
        match self {
            Target::Continuous { values } => Some(values),
            Target::Categorical { .. } => None,
        }
    }

    pub fn class_names(&self) -> Option<&[String]> {
        match self {
            Target::Categorical { class_names, .. } => Some(class_names),
            Target::Continuous { .. } => None,
        }
    }

    /// Target as reals: regression values as-is, class ids cast to `f64`.
    pub fn as_reals(&self) -> Vec<f64> {
        match self {
            Target::Categorical { labels, .. } => labels.iter().map(|&l| l as f64).collect(),
            Target::Continuous { values } => values.clone(),
        }
    }

    /// Per-class sample counts (categorical only).
    pub fn class_counts(&self) -> Option<Vec<usize>> {
        let Target::Categorical {
            labels, n_classes, ..
        } = self
        else {
            return None;
        };
        let mut counts = vec![0; *n_classes];
        for &l in labels {
            counts[l] += 1;
        }
        Some(counts)
    }

    /// Subset of samples. A categorical subset keeps the parent's class
    /// count and must still contain every class.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let check = |r: usize| {
            if r >= self.len() {
                Err(Error::LengthMismatch {
                    expected: self.len(),
                    actual: r + 1,
                })
            } else {
                Ok(r)
            }
        };
        match self {
            Target::Categorical {
                labels,
                n_classes,
                class_names,
            } => {
                let picked = rows
                    .iter()
                    .map(|&r| check(r).map(|r| labels[r]))
                    .collect::<Result<Vec<_>>>()?;
                Self::categorical_named(picked, *n_classes, class_names.clone())
            }
            Target::Continuous { values } => {
                let picked = rows
                    .iter()
                    .map(|&r| check(r).map(|r| values[r]))
                    .collect::<Result<Vec<_>>>()?;
                Self::continuous(picked)
            }
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// Label column given either by header name or by zero-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Name(String),
    Index(usize),
}

impl LabelColumn {
    /// A header name takes precedence over reading the string as a position.
    fn resolve(&self, headers: &csv::StringRecord) -> Result<usize> {
        match self {
            LabelColumn::Index(i) if *i < headers.len() => Ok(*i),
            LabelColumn::Index(i) => Err(Error::MissingLabelColumn(i.to_string())),
            LabelColumn::Name(name) => {
                if let Some(pos) = headers.iter().position(|h| h == name) {
                    return Ok(pos);
                }
                match name.parse::<usize>() {
                    Ok(i) if i < headers.len() => Ok(i),
                    _ => Err(Error::MissingLabelColumn(name.clone())),
                }
            }
        }
    }
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(LabelColumn::Name(s.to_owned()))
    }
}

impl From<usize> for LabelColumn {
    fn from(i: usize) -> Self {
        LabelColumn::Index(i)
    }
}

impl From<&str> for LabelColumn {
    fn from(s: &str) -> Self {
        LabelColumn::Name(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CsvOptions {
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self { delimiter: b',' }
    }
}

/// Everything recovered from a labelled CSV file.
#[derive(Debug, Clone)]
pub struct LoadedCsv {
    pub matrix: FeatureMatrix,
    pub target: Target,
    pub feature_names: Vec<String>,
    pub label_name: String,
    /// Label cells exactly as they appeared in the file, in row order.
    pub raw_labels: Vec<String>,
}

/// Reads a headered CSV file. Every column other than the label column is a
/// feature. Error positions are `(data row, file column)`, both zero-based.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: impl Into<LabelColumn>,
    target_kind: TargetKind,
    options: CsvOptions,
) -> Result<LoadedCsv> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    read_csv(file, label_column, target_kind, options)
}

/// [`load_csv`] over any reader.
pub fn read_csv<R: Read>(
    reader: R,
    label_column: impl Into<LabelColumn>,
    target_kind: TargetKind,
    options: CsvOptions,
) -> Result<LoadedCsv> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let label_pos = label_column.into().resolve(&headers)?;
    let feature_cols: Vec<usize> = (0..headers.len()).filter(|&c| c != label_pos).collect();
    if feature_cols.is_empty() {
        return Err(Error::NoFeatures);
    }

    let mut columns = vec![Vec::new(); feature_cols.len()];
    let mut raw_labels = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        for (column, &col) in columns.iter_mut().zip(&feature_cols) {
            column.push(parse_cell(&record[col], row, col)?);
        }
        raw_labels.push(record[label_pos].to_owned());
    }
    if raw_labels.len() < 2 {
        return Err(Error::TooFewSamples(raw_labels.len()));
    }

    let target = match target_kind {
        TargetKind::Categorical => Target::from_label_strings(&raw_labels)?,
        TargetKind::Continuous => Target::continuous(
            raw_labels
                .iter()
                .enumerate()
                .map(|(row, cell)| parse_cell(cell, row, label_pos))
                .collect::<Result<_>>()?,
        )?,
    };

    Ok(LoadedCsv {
        matrix: FeatureMatrix::from_columns(columns)?,
        target,
        feature_names: feature_cols
            .iter()
            .map(|&c| headers[c].to_owned())
            .collect(),
        label_name: headers[label_pos].to_owned(),
        raw_labels,
    })
}

fn parse_cell(cell: &str, row: usize, col: usize) -> Result<f64> {
    let v: f64 = cell.trim().parse().map_err(|_| Error::NonNumeric {
        row,
        col,
        value: cell.to_owned(),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite { row, col });
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeatureStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Unbiased sample variance (divides by `N - 1`).
    pub variance: f64,
}

impl FeatureStats {
    pub fn of(column: &[f64]) -> Self {
        let n = column.len() as f64;
        let (min, max) = column
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let mean = column.iter().sum::<f64>() / n;
        let variance = if column.len() < 2 {
            0.0
        } else {
            column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        };
        Self {
            min,
            max,
            mean,
            variance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub features: Vec<FeatureStats>,
    pub class_counts: Option<Vec<usize>>,
}

pub fn summarize(matrix: &FeatureMatrix, target: &Target) -> Result<DatasetSummary> {
    target.check_len(matrix.n_samples())?;
    Ok(DatasetSummary {
        features: matrix.columns().map(FeatureStats::of).collect(),
        class_counts: target.class_counts(),
    })
}

/// Adds i.i.d. `N(0, sigma^2)` noise to every entry.
///
/// Noise comes from ChaCha8 seeded with `seed` via `seed_from_u64` and is
/// drawn in column-major order, so the output depends only on the inputs.
pub fn add_gaussian_noise(matrix: &FeatureMatrix, sigma: f64, seed: u64) -> Result<FeatureMatrix> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidSigma(sigma));
    }
    if sigma == 0.0 {
        return Ok(matrix.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    matrix.map_columns(|_, v| {
        let z: f64 = StandardNormal.sample(&mut rng);
        v + sigma * z
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_csv() -> &'static str {
        "f0,f1,label\n0,10,a\n1,11,a\n2,12,b\n3,13,b\n"
    }

    #[test]
    fn loads_categorical_in_first_appearance_order() {
        let loaded = read_csv(
            toy_csv().as_bytes(),
            "label",
            TargetKind::Categorical,
            CsvOptions::default(),
        )
        .unwrap();
        assert_eq!(loaded.matrix.n_samples(), 4);
        assert_eq!(loaded.matrix.n_features(), 2);
        assert_eq!(loaded.matrix.column(1), &[10.0, 11.0, 12.0, 13.0]);
        assert_eq!(loaded.target.labels().unwrap(), &[0, 0, 1, 1]);
        assert_eq!(loaded.target.n_classes(), Some(2));
        assert_eq!(loaded.feature_names, vec!["f0", "f1"]);

        let flipped = "f0,label\n0,z\n1,y\n2,z\n";
        let loaded = read_csv(
            flipped.as_bytes(),
            "label",
            TargetKind::Categorical,
            CsvOptions::default(),
        )
        .unwrap();
        assert_eq!(loaded.target.labels().unwrap(), &[0, 1, 0]);
        assert_eq!(loaded.target.class_names().unwrap(), &["z", "y"]);
    }

    #[test]
    fn loads_continuous_target() {
        let csv = "f0,f1,y\n0,1,0.5\n1,2,1.5\n2,3,2.5\n3,4,3.5\n";
        let loaded = read_csv(
            csv.as_bytes(),
            LabelColumn::Index(2),
            TargetKind::Continuous,
            CsvOptions::default(),
        )
        .unwrap();
        assert_eq!(loaded.target.values().unwrap(), &[0.5, 1.5, 2.5, 3.5]);
    }

    #[test]
    fn label_column_by_position_string() {
        let loaded = read_csv(
            toy_csv().as_bytes(),
            "2",
            TargetKind::Categorical,
            CsvOptions::default(),
        )
        .unwrap();
        assert_eq!(loaded.label_name, "label");
    }

    #[test]
    fn custom_delimiter() {
        let csv = "f0;label\n0;a\n1;b\n";
        let loaded = read_csv(
            csv.as_bytes(),
            "label",
            TargetKind::Categorical,
            CsvOptions { delimiter: b';' },
        )
        .unwrap();
        assert_eq!(loaded.matrix.column(0), &[0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_files() {
        let load = |csv: &str, kind| {
            read_csv(csv.as_bytes(), "label", kind, CsvOptions::default()).unwrap_err()
        };
        let err = load("f0,label\n0,a\nNaN,b\n", TargetKind::Categorical);
        assert_eq!(err.to_string(), "non-finite value at (1,0)");
        assert!(matches!(
            load("f0,label\n0,a\nx,b\n", TargetKind::Categorical),
            Error::NonNumeric { row: 1, col: 0, .. }
        ));
        assert!(matches!(
            load("f0,label\n0,a\ninf,b\n", TargetKind::Categorical),
            Error::NonFinite { .. }
        ));
        assert!(matches!(
            load("f0,y\n0,a\n1,b\n", TargetKind::Categorical),
            Error::MissingLabelColumn(_)
        ));
        assert!(matches!(
            load("f0,label\n0,a\n", TargetKind::Categorical),
            Error::TooFewSamples(1)
        ));
        assert!(matches!(
            load("f0,label\n0,a\n1,a\n", TargetKind::Categorical),
            Error::TooFewClasses(1)
        ));
        assert!(matches!(
            load("f0,label\n0,1\n1,nan\n", TargetKind::Continuous),
            Error::NonFinite { row: 1, col: 1 }
        ));
        assert!(matches!(
            load_csv(
                "/definitely/not/here.csv",
                "label",
                TargetKind::Categorical,
                CsvOptions::default()
            ),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn target_validation() {
        assert!(matches!(
            Target::categorical(vec![0, 2], 3),
            Err(Error::EmptyClass(1))
        ));
        assert!(matches!(
            Target::categorical(vec![0, 3], 3),
            Err(Error::ClassOutOfRange { id: 3, .. })
        ));
        assert!(matches!(
            Target::categorical(vec![0, 0], 1),
            Err(Error::TooFewClasses(1))
        ));
        assert!(Target::continuous(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn summary_matches_hand_values() {
        let m = FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 2.0, 3.0], vec![7.0; 4]]).unwrap();
        let t = Target::categorical(vec![0, 0, 1, 1], 2).unwrap();
        let s = summarize(&m, &t).unwrap();
        assert_eq!(s.features[0].min, 0.0);
        assert_eq!(s.features[0].max, 3.0);
        assert_eq!(s.features[0].mean, 1.5);
        assert!((s.features[0].variance - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.features[1].variance, 0.0);
        assert_eq!(s.features[1].min, s.features[1].max);
        assert_eq!(s.class_counts, Some(vec![2, 2]));

        let short = Target::categorical(vec![0, 1, 0], 2).unwrap();
        assert!(summarize(&m, &short).is_err());
    }

    #[test]
    fn zero_noise_is_identity_and_noise_is_deterministic() {
        let m =
            FeatureMatrix::from_columns(vec![vec![0.0, 1.0, 2.0], vec![5.0, -1.0, 3.5]]).unwrap();
        assert_eq!(add_gaussian_noise(&m, 0.0, 9).unwrap(), m);
        let a = add_gaussian_noise(&m, 1.0, 42).unwrap();
        let b = add_gaussian_noise(&m, 1.0, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, m);
        assert!(matches!(
            add_gaussian_noise(&m, -0.1, 1),
            Err(Error::InvalidSigma(_))
        ));
    }

    #[test]
    fn noise_has_requested_moments() {
        let cols = (0..10).map(|j| vec![j as f64; 1000]).collect();
        let clean = FeatureMatrix::from_columns(cols).unwrap();
        let noisy = add_gaussian_noise(&clean, 1.0, 7).unwrap();
        let diffs: Vec<f64> = noisy
            .columns()
            .zip(clean.columns())
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
            .collect();
        let stats = FeatureStats::of(&diffs);
        assert!(stats.mean.abs() < 0.1, "mean {}", stats.mean);
        assert!((stats.variance.sqrt() - 1.0).abs() < 0.1);
    }

    #[test]
    fn select_features_and_rows() {
        let m =
            FeatureMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(m.get(1, 1), 4.0);
        let s = m.select_features(&[1]).unwrap();
        assert_eq!(s.column(0), &[2.0, 4.0, 6.0]);
        let r = m.select_rows(&[2, 0]).unwrap();
        assert_eq!(r.column(0), &[5.0, 1.0]);
        assert!(m.select_features(&[2]).is_err());
        assert!(m.select_features(&[]).is_err());
    }
}
