//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by window maintenance, selection, estimation and
/// stream generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied parameter violates its documented precondition.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Name of the offending parameter.
        name: &'static str,
        /// Human-readable description of the violation.
        reason: String,
    },

    /// A sample carried a NaN or infinite value; the window was left unchanged.
    #[error("rejected sample at stream index {index}: value is not finite")]
    NonFiniteSample {
        /// 1-based stream index of the rejected sample.
        index: u64,
    },

    /// A sample arrived with a stream index other than the expected one.
    #[error("sample index {got} does not follow the previous index (expected {expected})")]
    NonConsecutiveIndex {
        /// Index the detector expected next.
        expected: u64,
        /// Index actually supplied.
        got: u64,
    },

    /// The window does not yet hold `2w + 1` samples.
    #[error("window is not full yet")]
    WindowNotFull,

    /// The sorted mirror and the arrival buffer disagree. This indicates
    /// internal state corruption and the stream must be abandoned.
    #[error("sorted mirror diverged from the arrival buffer: evicted value not found")]
    WindowCorrupted,

    /// A selection rank lies outside `[1, len]`.
    #[error("rank {k} out of range for {len} elements")]
    RankOutOfRange {
        /// Requested 1-based rank.
        k: usize,
        /// Number of selectable elements.
        len: usize,
    },

    /// Input that was required to be nondecreasing is not.
    #[error("input sequence is not sorted in nondecreasing order")]
    UnsortedInput,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
