//! Streaming robust outlier detection with the Qn scale estimator.
//!
//! The crate maintains a sliding window over a numeric stream in both
//! arrival order and sorted order, computes the window's Qn dispersion in
//! `O(s)` worst-case time per update by selecting inside a virtual
//! pairwise-difference matrix, and flags the window's center item whenever
//! its deviation from the median exceeds `t` times the dispersion.
//!
//! ```
//! use qn_core::{Detector, DnMode, QnConfig};
//!
//! let config = QnConfig::new(1, 3.0, DnMode::Unit).unwrap();
//! let mut detector = Detector::new(config).unwrap();
//! detector.push_value(0.0).unwrap();
//! detector.push_value(100.0).unwrap();
//! let verdict = detector.push_value(1.0).unwrap().unwrap();
//! assert!(verdict.is_outlier);
//! assert_eq!(verdict.index, 2);
//! ```
//!
//! Core math is generic over the sample scalar; `f64` is the workhorse and
//! `f32` is supported through the same code paths. [`datagen`] produces the
//! seeded synthetic streams used by the benchmark harness.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

pub mod datagen;
pub mod detector;
pub mod error;
pub mod estimator;
pub mod select;
pub mod window;

/// Sample scalar: an IEEE float (`f32` or `f64`).
pub trait Scalar: Float + FromPrimitive + Debug {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug {}

pub use detector::{Detector, Verdict};
pub use error::{Error, Result};
pub use estimator::{
    dn_factor, qn_bruteforce, qn_from_sorted, qn_rank, DnMode, QnConfig, QnValue, SCALE_CONSTANT,
};
pub use select::{
    biselect, collect_between, quickselect, rank_above, rank_below, select_kth,
    select_kth_instrumented, DiffMatrixView, RankPair, SelectStats, Selector,
};
pub use window::{sorted_delete, Sample, UpdateOutcome, WindowState, MAX_SEMI_WINDOW};

pub use datagen::{generate, Dist, DistSpec, Generator};

/// `f64` detector, the common choice.
pub type DetectorF64 = Detector<f64>;
/// `f32` detector for memory-constrained pipelines.
pub type DetectorF32 = Detector<f32>;
/// `f64` window state.
pub type WindowF64 = WindowState<f64>;
/// `f32` window state.
pub type WindowF32 = WindowState<f32>;
/// `f64` estimator configuration.
pub type QnConfigF64 = QnConfig<f64>;
/// `f32` estimator configuration.
pub type QnConfigF32 = QnConfig<f32>;
