//! Supervised feature selection by optimized single-threshold splits.
//!
//! Each feature is scored on its own. Its observed range is cut into `B`
//! uniform bins, every interior bin edge is tried as a split threshold, and
//! the feature's score is the lowest split loss found:
//!
//! * [`dft`] (classification): sample-weighted entropy of the class labels
//!   on the two sides of the split;
//! * [`rft`] (regression): sample-weighted mean squared error when each side
//!   is predicted by its own target mean.
//!
//! Lower loss means a more useful feature. [`ranking`] orders features,
//! finds elbows on the ordered loss curve and selects the top `k`.
//! [`baselines`] provides ANOVA F, absolute correlation and variance
//! scores for comparison, and [`eval`] / [`bench`] measure how well a
//! selected subset preserves downstream accuracy or MSE.
//!
//! ```
//! use splitscore::{dft, BinningConfig, Target};
//!
//! let feature = [0.0, 1.0, 2.0, 3.0];
//! let labels = Target::categorical(vec![0, 0, 1, 1], 2).unwrap();
//! let score = dft::dft_score(&feature, &labels, BinningConfig::new(4).unwrap()).unwrap();
//! assert_eq!(score.optimal_loss, 0.0);
//! assert_eq!(score.optimal_threshold, 1.5);
//! ```

pub mod baselines;
pub mod bench;
pub mod binning;
pub mod cli;
pub mod data;
pub mod dft;
pub mod error;
pub mod eval;
pub mod methods;
pub mod ranking;
pub mod rft;
pub mod split;

pub use binning::BinningConfig;
pub use data::{FeatureMatrix, Target, TargetKind};
pub use error::{Error, Result};
pub use methods::Method;
pub use ranking::{Polarity, RankedFeatures};
pub use split::SplitScore;
