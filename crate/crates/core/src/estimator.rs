//! The Qn scale estimate of a window, plus the brute-force oracle.
//!
//! Qn is a rank-based dispersion measure: the `k'`-th smallest of all
//! pairwise absolute differences, scaled by 2.2219 and a finite-sample
//! correction. For a sorted window the target difference is found without
//! materializing the quadratic difference set, by selecting inside the
//! virtual difference matrix at the offset rank [`qn_rank`].

use crate::error::{Error, Result};
use crate::select::{select_kth, DiffMatrixView};
use crate::window::MAX_SEMI_WINDOW;
use crate::Scalar;

/// Gaussian-consistency scale constant applied to the selected difference.
pub const SCALE_CONSTANT: f64 = 2.2219;

/// Small-sample correction factors for `n = 2..=9`.
const DN_TABLE: [f64; 8] = [0.399, 0.994, 0.512, 0.844, 0.611, 0.857, 0.669, 0.872];

/// Finite-sample correction mode for the Qn estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DnMode {
    /// No correction (`d_n = 1`); the detector threshold `t` absorbs the
    /// constant factor.
    Unit,
    /// Published small-sample table for `n <= 9`, asymptotic formula above.
    #[default]
    FiniteSample,
}

/// Parameters governing the estimator and the detector built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QnConfig<T> {
    w: usize,
    t: T,
    dn_mode: DnMode,
}

impl<T: Scalar> QnConfig<T> {
    /// Validates and builds a configuration: `w >= 1`, finite `t > 0`.
    pub fn new(w: usize, t: T, dn_mode: DnMode) -> Result<Self> {
        if w == 0 || w > MAX_SEMI_WINDOW {
            return Err(Error::invalid(
                "w",
                format!("semi-window size must be in [1, {MAX_SEMI_WINDOW}]"),
            ));
        }
        if !t.is_finite() || t <= T::zero() {
            return Err(Error::invalid(
                "t",
                "dispersion multiplier must be finite and > 0",
            ));
        }
        Ok(QnConfig { w, t, dn_mode })
    }

    /// Semi-window size `w`.
    pub fn w(&self) -> usize {
        self.w
    }

    /// Full window size `s = 2w + 1`.
    pub fn s(&self) -> usize {
        2 * self.w + 1
    }

    /// Dispersion multiplier used by the outlierness test.
    pub fn t(&self) -> T {
        self.t
    }

    pub fn dn_mode(&self) -> DnMode {
        self.dn_mode
    }
}

/// A computed Qn estimate: the raw selected difference and the scaled value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QnValue<T> {
    /// The `k'`-th smallest pairwise absolute difference; nonnegative.
    pub stat: T,
    /// `d_n * 2.2219 * stat`; nonnegative.
    pub qn: T,
}

/// Rank of the Qn order statistic inside the full `s x s` virtual difference
/// matrix of a sorted window, for odd `s >= 3`.
///
/// The `s + C(s, 2)` nonpositive entries (diagonal and upper triangle) are
/// absorbed by an offset, so the target is `C(h, 2) + s + C(s, 2)` with
/// `h = floor(s / 2) + 1`.
pub fn qn_rank(s: usize) -> Result<usize> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::invalid(
            "s",
            "window size must be odd and at least 3",
        ));
    }
    if s > 2 * MAX_SEMI_WINDOW + 1 {
        return Err(Error::invalid(
            "s",
            "window size exceeds the supported maximum",
        ));
    }
    let h = s / 2 + 1;
    Ok(choose2(h) + s + choose2(s))
}

/// `C(n, 2)` without overflow for supported window sizes.
fn choose2(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Rank of the Qn order statistic among the `C(n, 2)` pairwise absolute
/// differences themselves: `k' = C(h, 2)`, `h = floor(n / 2) + 1`.
fn qn_pair_rank(n: usize) -> usize {
    choose2(n / 2 + 1)
}

/// Finite-sample correction factor `d_n` for sample size `s >= 2`.
///
/// `Unit` mode returns 1. `FiniteSample` mode uses the published table for
/// `s <= 9` and `s / (s + 1.4)` (odd) or `s / (s + 3.8)` (even) above it;
/// the values are validated by a Monte-Carlo Gaussian-consistency oracle in
/// the test suite rather than taken on faith.
pub fn dn_factor<T: Scalar>(s: usize, mode: DnMode) -> Result<T> {
    if s < 2 {
        return Err(Error::invalid("s", "sample size must be at least 2"));
    }
    let value = match mode {
        DnMode::Unit => 1.0,
        DnMode::FiniteSample => {
            if s <= 9 {
                DN_TABLE[s - 2]
            } else if s.is_multiple_of(2) {
                s as f64 / (s as f64 + 3.8)
            } else {
                s as f64 / (s as f64 + 1.4)
            }
        }
    };
    T::from(value).ok_or_else(|| Error::invalid("s", "correction factor not representable"))
}

/// Qn of a full sorted window in `O(s)` worst-case time.
///
/// `sorted` must be nondecreasing with exactly `config.s()` entries.
pub fn qn_from_sorted<T: Scalar>(sorted: &[T], config: &QnConfig<T>) -> Result<QnValue<T>> {
    let s = config.s();
    if sorted.len() != s {
        return Err(Error::invalid(
            "sorted",
            format!(
                "expected {} values for w = {}, got {}",
                s,
                config.w(),
                sorted.len()
            ),
        ));
    }
    let view = DiffMatrixView::new(sorted)?;
    let stat = select_kth(view, qn_rank(s)?)?;
    scale(stat, s, config.dn_mode())
}

/// Brute-force Qn oracle: materializes all `C(n, 2)` absolute differences,
/// sorts them and takes the `k'`-th. Accepts any `n >= 2`, sorted or not.
pub fn qn_bruteforce<T: Scalar>(values: &[T], mode: DnMode) -> Result<QnValue<T>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::invalid("values", "need at least 2 values"));
    }
    let mut diffs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            diffs.push((values[i] - values[j]).abs());
        }
    }
    diffs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    scale(diffs[qn_pair_rank(n) - 1], n, mode)
}

fn scale<T: Scalar>(stat: T, s: usize, mode: DnMode) -> Result<QnValue<T>> {
    let constant = T::from(SCALE_CONSTANT).expect("constant fits any float");
    let qn = dn_factor::<T>(s, mode)? * constant * stat;
    Ok(QnValue { stat, qn })
}
