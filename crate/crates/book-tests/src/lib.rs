//! Runs the book's code listings as doc-tests. Each chapter is its own
//! module so a failure points at the file it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/data.md")]
pub mod data {}
#[doc = include_str!("../../../book/src/thresholds.md")]
pub mod thresholds {}
#[doc = include_str!("../../../book/src/dft.md")]
pub mod dft {}
#[doc = include_str!("../../../book/src/rft.md")]
pub mod rft {}
#[doc = include_str!("../../../book/src/baselines.md")]
pub mod baselines {}
#[doc = include_str!("../../../book/src/ranking.md")]
pub mod ranking {}
#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
