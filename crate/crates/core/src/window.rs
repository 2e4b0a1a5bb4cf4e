//! Sliding-window maintenance in arrival order and sorted order.
//!
//! The window holds the `s = 2w + 1` most recent samples twice: once in a
//! circular buffer in arrival order, and once as a sorted mirror kept in
//! nondecreasing order. Each push evicts the oldest sample (when full) and
//! places the new value with one binary search plus one contiguous shift per
//! structure, so the worst-case cost per update is `O(s)` element moves and
//! `O(log s)` comparisons.
//!
//! Indices follow the 1-based stream convention in the public contract: the
//! median of a full window is the `(w + 1)`-th smallest value.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::Scalar;

/// Upper bound on the semi-window size `w`.
///
/// Keeps the full window size and the squared matrix order used by rank
/// arithmetic comfortably inside `usize` on 64-bit targets, and caps the
/// buffer allocation at a sane size.
pub const MAX_SEMI_WINDOW: usize = 1 << 24;

/// One stream item: a 1-based position and its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    /// 1-based position in the stream; strictly increasing across a stream.
    pub index: u64,
    /// Observed value. Must be finite to enter a window.
    pub value: T,
}

impl<T> Sample<T> {
    pub fn new(index: u64, value: T) -> Self {
        Sample { index, value }
    }
}

/// Result of pushing one sample into a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpdateOutcome<T> {
    /// Value evicted to make room, present iff the window was full before the push.
    pub evicted: Option<T>,
    /// Whether the window is full after the push.
    pub full: bool,
}

/// Sliding window over a stream, maintained simultaneously in arrival order
/// and in sorted order.
#[derive(Debug, Clone)]
pub struct WindowState<T> {
    w: usize,
    arrival: VecDeque<Sample<T>>,
    sorted: Vec<T>,
    moves: u64,
}

impl<T: Scalar> WindowState<T> {
    /// Creates an empty window with semi-window size `w` (capacity `2w + 1`).
    pub fn new(w: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::invalid("w", "semi-window size must be at least 1"));
        }
        if w > MAX_SEMI_WINDOW {
            return Err(Error::invalid(
                "w",
                format!("semi-window size exceeds the maximum {MAX_SEMI_WINDOW}"),
            ));
        }
        let capacity = 2 * w + 1;
        Ok(WindowState {
            w,
            arrival: VecDeque::with_capacity(capacity),
            sorted: Vec::with_capacity(capacity),
            moves: 0,
        })
    }

    /// Semi-window size `w`.
    pub fn semi_window(&self) -> usize {
        self.w
    }

    /// Full window capacity `s = 2w + 1`.
    pub fn capacity(&self) -> usize {
        2 * self.w + 1
    }

    /// Number of samples currently held.
    pub fn count(&self) -> usize {
        self.arrival.len()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.capacity()
    }

    /// The sorted mirror, nondecreasing.
    pub fn sorted(&self) -> &[T] {
        &self.sorted
    }

    /// Samples in arrival order, oldest first.
    pub fn arrival(&self) -> impl Iterator<Item = &Sample<T>> {
        self.arrival.iter()
    }

    /// Cumulative count of elements shifted by deletions and insertions.
    ///
    /// Instrumentation for the `O(s)`-moves-per-push bound; a single push
    /// shifts at most `2s` elements.
    pub fn move_count(&self) -> u64 {
        self.moves
    }

    /// Pushes a sample, evicting the oldest one first when the window is full.
    ///
    /// Rejects non-finite values without touching the window. The sorted
    /// mirror stays nondecreasing and remains a permutation of the arrival
    /// values.
    pub fn push(&mut self, sample: Sample<T>) -> Result<UpdateOutcome<T>> {
        if !sample.value.is_finite() {
            return Err(Error::NonFiniteSample {
                index: sample.index,
            });
        }

        let evicted = if self.is_full() {
            let oldest = self.arrival.pop_front().expect("full window is nonempty");
            let len_before = self.sorted.len();
            let pos = sorted_delete(&mut self.sorted, oldest.value)?;
            self.moves += (len_before - pos) as u64;
            Some(oldest.value)
        } else {
            None
        };

        let pos = self.sorted.partition_point(|x| *x <= sample.value);
        self.moves += (self.sorted.len() - pos) as u64;
        self.sorted.insert(pos, sample.value);
        self.arrival.push_back(sample);

        Ok(UpdateOutcome {
            evicted,
            full: self.is_full(),
        })
    }

    /// Median of a full window: the `(w + 1)`-th smallest value, read in `O(1)`
    /// from the sorted mirror.
    pub fn median(&self) -> Result<T> {
        if !self.is_full() {
            return Err(Error::WindowNotFull);
        }
        Ok(self.sorted[self.w])
    }

    /// The center sample of a full window (`w` arrivals old), the one under test.
    pub fn center(&self) -> Result<&Sample<T>> {
        if !self.is_full() {
            return Err(Error::WindowNotFull);
        }
        Ok(&self.arrival[self.w])
    }
}

/// Removes one occurrence equal to `value` from a nondecreasing sequence,
/// preserving order, and returns its 1-based position.
///
/// Duplicates are indistinguishable by value, so any one occurrence may be
/// removed. An absent value signals that the sorted mirror diverged from the
/// arrival buffer; callers must treat that as fatal for the stream.
pub fn sorted_delete<T: Scalar>(sorted: &mut Vec<T>, value: T) -> Result<usize> {
    let pos = sorted.partition_point(|x| *x < value);
    if pos >= sorted.len() || sorted[pos] != value {
        return Err(Error::WindowCorrupted);
    }
    sorted.remove(pos);
    Ok(pos + 1)
}
