//! Streaming outlier detection: per arriving item, update the window, read
//! the median, compute Qn, and test the window's center item.
//!
//! The item under test trails the arriving item by `w` positions: when the
//! sample with stream index `i` arrives and the window is full, the verdict
//! concerns the sample at index `i - w`. The first `2w` arrivals are warm-up
//! and produce no verdict. A center item is flagged when its absolute
//! deviation from the window median strictly exceeds `t` times the Qn
//! dispersion.

use crate::error::{Error, Result};
use crate::estimator::{dn_factor, qn_rank, QnConfig, SCALE_CONSTANT};
use crate::select::{DiffMatrixView, Selector};
use crate::window::{Sample, WindowState};
use crate::Scalar;

/// Decision record for one tested item.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict<T> {
    /// Stream index (1-based) of the tested item.
    pub index: u64,
    /// Tested value, the center of its window.
    pub value: T,
    /// Window median at decision time.
    pub median: T,
    /// Qn dispersion of the window.
    pub qn: T,
    /// `|value - median|`, compared against `t * qn`.
    pub score: T,
    /// True iff `score > t * qn` (strict).
    pub is_outlier: bool,
}

/// Incremental detector over a single stream.
#[derive(Debug, Clone)]
pub struct Detector<T> {
    config: QnConfig<T>,
    window: WindowState<T>,
    selector: Selector<T>,
    // d_n * 2.2219, fixed for the window size.
    qn_multiplier: T,
    target_rank: usize,
    next_index: u64,
}

impl<T: Scalar> Detector<T> {
    /// Builds a detector with an empty window; the first verdict is emitted
    /// for stream index `w + 1`, once `2w + 1` samples have arrived.
    pub fn new(config: QnConfig<T>) -> Result<Self> {
        let s = config.s();
        let dn = dn_factor::<T>(s, config.dn_mode())?;
        let constant = T::from(SCALE_CONSTANT).expect("constant fits any float");
        Ok(Detector {
            window: WindowState::new(config.w())?,
            selector: Selector::new(),
            qn_multiplier: dn * constant,
            target_rank: qn_rank(s)?,
            next_index: 1,
            config,
        })
    }

    pub fn config(&self) -> &QnConfig<T> {
        &self.config
    }

    /// Stream index expected from the next call to [`Detector::step`].
    pub fn next_index(&self) -> u64 {
        self.next_index
    }

    /// Stream index of the next item that will receive a verdict.
    pub fn next_test_index(&self) -> u64 {
        let w = self.config.w() as u64;
        self.next_index.saturating_sub(self.window.count() as u64) + w
    }

    /// Read-only view of the underlying window.
    pub fn window(&self) -> &WindowState<T> {
        &self.window
    }

    /// Consumes `sample` and, when the window is full, returns the verdict
    /// for the center item.
    ///
    /// Samples must arrive with consecutive indices. A rejected sample
    /// (non-finite value, out-of-order index) leaves the detector unchanged;
    /// the caller decides whether to skip or abort.
    pub fn step(&mut self, sample: Sample<T>) -> Result<Option<Verdict<T>>> {
        if sample.index != self.next_index {
            return Err(Error::NonConsecutiveIndex {
                expected: self.next_index,
                got: sample.index,
            });
        }
        let outcome = self.window.push(sample)?;
        self.next_index += 1;
        if !outcome.full {
            return Ok(None);
        }
        self.verdict().map(Some)
    }

    /// Convenience wrapper assigning stream indices 1, 2, … automatically.
    pub fn push_value(&mut self, value: T) -> Result<Option<Verdict<T>>> {
        self.step(Sample::new(self.next_index, value))
    }

    /// Runs a detector over a finite stream, assigning indices from 1, and
    /// collects the verdicts: `max(0, N - 2w)` of them for `N` items.
    pub fn run(
        config: QnConfig<T>,
        values: impl IntoIterator<Item = T>,
    ) -> Result<Vec<Verdict<T>>> {
        let mut detector = Detector::new(config)?;
        let mut verdicts = Vec::new();
        for value in values {
            if let Some(verdict) = detector.push_value(value)? {
                verdicts.push(verdict);
            }
        }
        Ok(verdicts)
    }

    fn verdict(&mut self) -> Result<Verdict<T>> {
        let median = self.window.median()?;
        let view = DiffMatrixView::new(self.window.sorted())?;
        let stat = self.selector.select_kth(view, self.target_rank)?;
        let qn = self.qn_multiplier * stat;
        let center = self.window.center()?;
        let score = (center.value - median).abs();
        Ok(Verdict {
            index: center.index,
            value: center.value,
            median,
            qn,
            score,
            is_outlier: score > self.config.t() * qn,
        })
    }
}
