use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("label column {0} not found")]
    MissingLabelColumn(String),

    #[error("non-numeric value {value:?} at ({row},{col})")]
    NonNumeric {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("non-finite value at ({row},{col})")]
    NonFinite { row: usize, col: usize },

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("need at least one feature column")]
    NoFeatures,

    #[error("categorical target needs at least 2 distinct labels, got {0}")]
    TooFewClasses(usize),

    #[error("class id {id} out of range for {n_classes} classes")]
    ClassOutOfRange { id: usize, n_classes: usize },

    #[error("class {0} has no samples")]
    EmptyClass(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("bins must be ≥ 2, got {0}")]
    TooFewBins(usize),

    #[error("{method} requires {expected} target")]
    TargetKind {
        method: &'static str,
        expected: &'static str,
    },

    #[error("histogram kind mismatch: {0}")]
    HistogramKind(&'static str),

    #[error("boundary {boundary} outside 1..={max}")]
    BoundaryOutOfRange { boundary: usize, max: usize },

    #[error("negative count {0}")]
    NegativeCount(f64),

    #[error("noise sigma must be non-negative and finite, got {0}")]
    InvalidSigma(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("empty input")]
    Empty,

    #[error("need at least {needed} {what}, got {actual}")]
    TooFew {
        what: &'static str,
        needed: usize,
        actual: usize,
    },

    #[error("k = {k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("feature index {index} out of range for {n_features} features")]
    FeatureOutOfRange { index: usize, n_features: usize },

    #[error("class {0} absent from training data")]
    ClassAbsentFromTrain(usize),

    #[error("design matrix is singular even with ridge jitter")]
    SingularDesign,
}
