//! Worst-case linear selection in the virtual pairwise-difference matrix.
//!
//! For a nondecreasing vector `x` of length `m`, the virtual matrix has
//! entries `a(i, j) = x[i] - x[j]`. Rows are nonincreasing, columns are
//! nondecreasing, the diagonal is zero, and only `x` itself is ever stored:
//! entries are evaluated on demand, so selection uses `O(m)` space.
//!
//! [`select_kth`] finds the `k`-th smallest of the `m²` virtual entries in
//! `O(m)` worst-case time. It recurses on the submatrix spanned by every
//! other element of `x` to obtain two bracketing values, counts entries
//! around the brackets with staircase sweeps ([`rank_below`], [`rank_above`]),
//! and finishes with a quickselect over the `O(m)` entries strictly between
//! the brackets.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::Scalar;

/// Read-only view of the virtual difference matrix over a sorted vector.
#[derive(Debug, Clone, Copy)]
pub struct DiffMatrixView<'a, T> {
    x: &'a [T],
}

impl<'a, T: Scalar> DiffMatrixView<'a, T> {
    /// Wraps a nondecreasing slice. Fails if the slice is not sorted
    /// (NaN anywhere also fails the check).
    pub fn new(x: &'a [T]) -> Result<Self> {
        let ordered = |pair: &[T]| {
            matches!(
                pair[0].partial_cmp(&pair[1]),
                Some(Ordering::Less | Ordering::Equal)
            )
        };
        if x.windows(2).any(|pair| !ordered(pair)) {
            return Err(Error::UnsortedInput);
        }
        Ok(DiffMatrixView { x })
    }

    /// Matrix order `m` (and length of the backing vector).
    pub fn order(&self) -> usize {
        self.x.len()
    }

    /// Total number of virtual entries, `m²`.
    pub fn len(&self) -> usize {
        self.x.len() * self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Virtual entry at 0-based `(row, col)`: `x[row] - x[col]`.
    pub fn entry(&self, row: usize, col: usize) -> T {
        self.x[row] - self.x[col]
    }
}

/// Two bracketing order statistics returned by [`biselect`]: `hi` is the
/// `k1`-th smallest entry and `lo` the `k2`-th, with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankPair<T> {
    pub lo: T,
    pub hi: T,
}

/// Work counters filled in by [`select_kth_instrumented`].
///
/// `entry_evals` counts every on-demand evaluation of a virtual entry across
/// the whole call; the worst-case linear bound shows up as
/// `entry_evals <= C * m` for a constant `C` independent of the data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelectStats {
    /// Number of virtual-entry evaluations performed.
    pub entry_evals: u64,
    /// Maximum recursion depth reached.
    pub max_depth: usize,
    /// Largest candidate set collected between the brackets at any level.
    pub max_candidates: usize,
}

/// Number of virtual entries strictly below `threshold`.
///
/// A single staircase sweep: within each row the entries below the threshold
/// form a suffix, and the suffix start only moves right as rows grow.
pub fn rank_below<T: Scalar>(view: DiffMatrixView<'_, T>, threshold: T) -> usize {
    let mut evals = 0;
    rank_below_impl(view.x, threshold, &mut evals)
}

/// Number of virtual entries strictly above `threshold`; the symmetric sweep.
pub fn rank_above<T: Scalar>(view: DiffMatrixView<'_, T>, threshold: T) -> usize {
    let mut evals = 0;
    rank_above_impl(view.x, threshold, &mut evals)
}

/// All virtual entries strictly between `lower` and `upper`, in row-sweep
/// order, in `O(m + output)` time. Callers obtained the bounds from
/// [`biselect`], which guarantees `O(m)` output.
pub fn collect_between<T: Scalar>(view: DiffMatrixView<'_, T>, lower: T, upper: T) -> Vec<T> {
    let mut evals = 0;
    collect_between_impl(view.x, lower, upper, &mut evals)
}

/// The `k`-th smallest (1-based) of a scratch multiset, expected linear time.
pub fn quickselect<T: Scalar>(values: &mut [T], k: usize) -> Result<T> {
    if k == 0 || k > values.len() {
        return Err(Error::RankOutOfRange {
            k,
            len: values.len(),
        });
    }
    let (_, kth, _) = values.select_nth_unstable_by(k - 1, cmp);
    Ok(*kth)
}

/// Returns the `k1`-th and `k2`-th smallest virtual entries (`k2 <= k1`)
/// as a [`RankPair`], in `O(m)` worst-case time.
pub fn biselect<T: Scalar>(
    view: DiffMatrixView<'_, T>,
    k1: usize,
    k2: usize,
) -> Result<RankPair<T>> {
    Selector::new().biselect(view, k1, k2)
}

/// The `k`-th smallest (1-based) of the `m²` virtual entries, `O(m)` worst case.
pub fn select_kth<T: Scalar>(view: DiffMatrixView<'_, T>, k: usize) -> Result<T> {
    Selector::new().select_kth(view, k)
}

/// [`select_kth`] plus work counters, for complexity verification.
pub fn select_kth_instrumented<T: Scalar>(
    view: DiffMatrixView<'_, T>,
    k: usize,
) -> Result<(T, SelectStats)> {
    let mut selector = Selector::new();
    let value = selector.select_kth(view, k)?;
    Ok((value, selector.stats))
}

/// Reusable selection state. A long-lived `Selector` keeps its scratch
/// buffers between calls, so steady-state selection allocates nothing;
/// [`Selector::stats`] holds the counters of the most recent call.
#[derive(Debug, Clone)]
pub struct Selector<T> {
    /// Subsampled vector per recursion level (level 0 is the caller's slice).
    subs: Vec<Vec<T>>,
    /// Target ranks per recursion level.
    ranks: Vec<(usize, usize)>,
    /// Entries strictly between the brackets at the level being resolved.
    candidates: Vec<T>,
    /// Counters from the most recent call.
    pub stats: SelectStats,
}

impl<T: Scalar> Default for Selector<T> {
    fn default() -> Self {
        Selector::new()
    }
}

impl<T: Scalar> Selector<T> {
    pub fn new() -> Self {
        Selector {
            subs: Vec::new(),
            ranks: Vec::new(),
            candidates: Vec::new(),
            stats: SelectStats::default(),
        }
    }

    /// See [`select_kth`].
    pub fn select_kth(&mut self, view: DiffMatrixView<'_, T>, k: usize) -> Result<T> {
        self.biselect(view, k, k).map(|pair| pair.hi)
    }

    /// See [`biselect`].
    pub fn biselect(
        &mut self,
        view: DiffMatrixView<'_, T>,
        k1: usize,
        k2: usize,
    ) -> Result<RankPair<T>> {
        let total = view.len();
        if k1 == 0 || k1 > total {
            return Err(Error::RankOutOfRange { k: k1, len: total });
        }
        if k2 == 0 || k2 > k1 {
            return Err(Error::RankOutOfRange { k: k2, len: total });
        }
        self.stats = SelectStats::default();

        // Descend: compute the rank pair for every level and materialize the
        // subsampled vector chain until the matrix order drops to 2.
        self.ranks.clear();
        self.ranks.push((k1, k2));
        let mut depth = 0;
        loop {
            let m = if depth == 0 {
                view.x.len()
            } else {
                self.subs[depth - 1].len()
            };
            if m <= 2 {
                break;
            }
            let (level_k1, level_k2) = self.ranks[depth];
            // Smallest rank whose entry in the submatrix still dominates the
            // k1-th of this level, and the mirror bound for k2.
            let sub_k1 = if m % 2 == 0 {
                m + 1 + level_k1.div_ceil(4)
            } else {
                (level_k1 + 2 * m + 1).div_ceil(4)
            };
            let sub_k2 = level_k2.div_ceil(4);
            self.ranks.push((sub_k1, sub_k2));

            if self.subs.len() <= depth {
                self.subs.push(Vec::new());
            }
            let (head, tail) = self.subs.split_at_mut(depth);
            let source: &[T] = if depth == 0 { view.x } else { &head[depth - 1] };
            // The submatrix keeps the odd-indexed (1-based) elements, plus
            // the last one when m is even; it is again a difference matrix
            // over a sorted vector.
            let sub = &mut tail[0];
            sub.clear();
            sub.extend(source.iter().copied().step_by(2));
            if m % 2 == 0 {
                sub.push(source[m - 1]);
            }
            depth += 1;
        }
        self.stats.max_depth = depth;

        // Base case: at most four entries, materialized and sorted.
        let base: &[T] = if depth == 0 {
            view.x
        } else {
            &self.subs[depth - 1]
        };
        let (base_k1, base_k2) = self.ranks[depth];
        let mut entries = [T::zero(); 4];
        let mut count = 0;
        for &xi in base {
            for &xj in base {
                entries[count] = xi - xj;
                count += 1;
            }
        }
        self.stats.entry_evals += count as u64;
        entries[..count].sort_unstable_by(cmp);
        let mut hi = entries[base_k1 - 1];
        let mut lo = entries[base_k2 - 1];

        // Unwind: resolve each level against the brackets from the level
        // below, via one fused staircase sweep per level.
        for level in (0..depth).rev() {
            let x: &[T] = if level == 0 {
                view.x
            } else {
                &self.subs[level - 1]
            };
            let m = x.len();
            let m2 = m * m;
            let (below_hi, above_lo) =
                sweep_and_collect(x, lo, hi, &mut self.candidates, &mut self.stats.entry_evals);
            self.stats.max_candidates = self.stats.max_candidates.max(self.candidates.len());

            let (level_k1, level_k2) = self.ranks[level];
            let new_hi = resolve(
                level_k1,
                hi,
                lo,
                below_hi,
                above_lo,
                m2,
                &mut self.candidates,
            )?;
            let new_lo = if level_k2 == level_k1 {
                new_hi
            } else {
                resolve(
                    level_k2,
                    hi,
                    lo,
                    below_hi,
                    above_lo,
                    m2,
                    &mut self.candidates,
                )?
            };
            hi = new_hi;
            lo = new_lo;
        }

        Ok(RankPair { lo, hi })
    }
}

fn resolve<T: Scalar>(
    k: usize,
    hi: T,
    lo: T,
    below_hi: usize,
    above_lo: usize,
    m2: usize,
    candidates: &mut [T],
) -> Result<T> {
    if below_hi < k {
        Ok(hi)
    } else if k + above_lo <= m2 {
        Ok(lo)
    } else {
        quickselect(candidates, k + above_lo - m2)
    }
}

/// One staircase pass computing `rank_below(hi)`, `rank_above(lo)` and the
/// entries strictly between the brackets; the three column pointers of the
/// separate sweeps coincide, so the fused pass does the same work once.
fn sweep_and_collect<T: Scalar>(
    x: &[T],
    lower: T,
    upper: T,
    out: &mut Vec<T>,
    evals: &mut u64,
) -> (usize, usize) {
    let m = x.len();
    let mut start = 0;
    let mut end = 0;
    let mut below = 0;
    let mut above = 0;
    let mut local = 0u64;
    out.clear();
    for &xi in x {
        while start < m {
            local += 1;
            if xi - x[start] >= upper {
                start += 1;
            } else {
                break;
            }
        }
        while end < m {
            local += 1;
            if xi - x[end] > lower {
                end += 1;
            } else {
                break;
            }
        }
        below += m - start;
        above += end;
        for &xj in &x[start.min(end)..end] {
            out.push(xi - xj);
        }
        local += end.saturating_sub(start) as u64;
    }
    *evals += local;
    (below, above)
}

fn cmp<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn rank_below_impl<T: Scalar>(x: &[T], threshold: T, evals: &mut u64) -> usize {
    let m = x.len();
    let mut col = 0;
    let mut count = 0;
    let mut local = 0u64;
    for &xi in x {
        while col < m {
            local += 1;
            if xi - x[col] >= threshold {
                col += 1;
            } else {
                break;
            }
        }
        count += m - col;
    }
    *evals += local;
    count
}

fn rank_above_impl<T: Scalar>(x: &[T], threshold: T, evals: &mut u64) -> usize {
    let m = x.len();
    let mut col = 0;
    let mut count = 0;
    let mut local = 0u64;
    for &xi in x {
        while col < m {
            local += 1;
            if xi - x[col] > threshold {
                col += 1;
            } else {
                break;
            }
        }
        count += col;
    }
    *evals += local;
    count
}

fn collect_between_impl<T: Scalar>(x: &[T], lower: T, upper: T, evals: &mut u64) -> Vec<T> {
    let m = x.len();
    let mut out = Vec::new();
    // First column whose entry drops below `upper`, and first column whose
    // entry is no longer above `lower`; both only move right as rows grow.
    let mut start = 0;
    let mut end = 0;
    let mut local = 0u64;
    for &xi in x {
        while start < m {
            local += 1;
            if xi - x[start] >= upper {
                start += 1;
            } else {
                break;
            }
        }
        while end < m {
            local += 1;
            if xi - x[end] > lower {
                end += 1;
            } else {
                break;
            }
        }
        for &xj in &x[start.min(end)..end] {
            out.push(xi - xj);
        }
        local += end.saturating_sub(start) as u64;
    }
    *evals += local;
    out
}
