//! Property suites for the estimator: equivalence of the selection path with
//! the brute-force oracle, equivariance laws, and the zero characterization.

use proptest::prelude::*;
use qn_core::{qn_bruteforce, qn_from_sorted, DnMode, QnConfig};

fn relative_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

/// Sorted odd-length windows with a mix of spreads and tie densities.
fn sorted_window() -> impl Strategy<Value = Vec<f64>> {
    let continuous = prop::collection::vec(-1e6..1e6f64, 1..=15usize);
    let tied = prop::collection::vec(-4i32..=4, 1..=15usize)
        .prop_map(|v| v.into_iter().map(f64::from).collect::<Vec<_>>());
    prop_oneof![continuous, tied].prop_map(|mut values| {
        if values.len() % 2 == 0 {
            values.pop();
        }
        if values.is_empty() {
            values.push(0.0);
        }
        values.push(0.0);
        values.push(1.0);
        // Force odd length >= 3.
        if values.len() % 2 == 0 {
            values.push(2.0);
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values
    })
}

fn config_for(window: &[f64]) -> QnConfig<f64> {
    QnConfig::new(window.len() / 2, 3.0, DnMode::Unit).unwrap()
}

proptest! {
    #[test]
    fn selection_path_equals_bruteforce(window in sorted_window()) {
        let fast = qn_from_sorted(&window, &config_for(&window)).unwrap();
        let brute = qn_bruteforce(&window, DnMode::Unit).unwrap();
        prop_assert!(relative_close(fast.stat, brute.stat), "{} vs {}", fast.stat, brute.stat);
        prop_assert!(relative_close(fast.qn, brute.qn));
    }

    #[test]
    fn stat_is_scale_equivariant(window in sorted_window()) {
        let base = qn_from_sorted(&window, &config_for(&window)).unwrap().stat;
        for factor in [-2.0f64, 0.5, 10.0] {
            let mut scaled: Vec<f64> = window.iter().map(|v| v * factor).collect();
            scaled.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let stat = qn_from_sorted(&scaled, &config_for(&scaled)).unwrap().stat;
            prop_assert!(
                relative_close(stat, factor.abs() * base),
                "factor {factor}: {stat} vs {}", factor.abs() * base
            );
        }
    }

    #[test]
    fn stat_is_location_invariant(window in sorted_window(), shift in -1e5..1e5f64) {
        let base = qn_from_sorted(&window, &config_for(&window)).unwrap().stat;
        let shifted: Vec<f64> = window.iter().map(|v| v + shift).collect();
        let stat = qn_from_sorted(&shifted, &config_for(&shifted)).unwrap().stat;
        // Shifting loses low bits of the differences; the law holds to the
        // usual relative tolerance scaled by the shift magnitude.
        let tolerance = 1e-12 * (base.abs().max(1.0) + shift.abs());
        prop_assert!((stat - base).abs() <= tolerance, "{stat} vs {base} after shift {shift}");
    }

    #[test]
    fn stat_is_nonnegative_and_zero_iff_enough_zero_pairs(window in sorted_window()) {
        let stat = qn_from_sorted(&window, &config_for(&window)).unwrap().stat;
        prop_assert!(stat >= 0.0);

        let s = window.len();
        let h = s / 2 + 1;
        let pair_rank = h * (h - 1) / 2;
        let zero_pairs = {
            let mut count = 0usize;
            for i in 0..s {
                for j in (i + 1)..s {
                    if window[i] == window[j] {
                        count += 1;
                    }
                }
            }
            count
        };
        prop_assert_eq!(stat == 0.0, zero_pairs >= pair_rank,
            "stat {} with {} zero pairs against rank {}", stat, zero_pairs, pair_rank);
    }
}

#[test]
fn constant_windows_have_zero_stat() {
    let window = vec![13.5; 21];
    let value = qn_from_sorted(&window, &config_for(&window)).unwrap();
    assert_eq!(value.stat, 0.0);
    assert_eq!(value.qn, 0.0);
}
