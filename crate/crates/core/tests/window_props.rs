//! Property suites for window maintenance: the sorted mirror is always the
//! sorted arrival contents, eviction keeps exactly the most recent samples,
//! and per-push work stays within the contiguous-shift bound.

use proptest::prelude::*;
use qn_core::{Sample, WindowState};

proptest! {
    #[test]
    fn sorted_mirror_matches_resorted_arrival(
        w in 1usize..6,
        values in prop::collection::vec(-1e9..1e9f64, 0..60),
    ) {
        let mut window = WindowState::new(w).unwrap();
        let s = window.capacity();
        let mut previous_moves = 0;
        for (i, &value) in values.iter().enumerate() {
            window.push(Sample::new(i as u64 + 1, value)).unwrap();

            let mut expected: Vec<f64> = window.arrival().map(|s| s.value).collect();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assert_eq!(window.sorted(), expected.as_slice());

            let moves = window.move_count();
            prop_assert!(moves - previous_moves <= 2 * s as u64);
            previous_moves = moves;
        }

        let kept = values.len().min(s);
        let expected_tail: Vec<f64> = values[values.len() - kept..].to_vec();
        let arrival: Vec<f64> = window.arrival().map(|s| s.value).collect();
        prop_assert_eq!(arrival, expected_tail);
        prop_assert_eq!(window.count(), kept);
    }

    #[test]
    fn median_matches_reference_selection(
        w in 1usize..5,
        values in prop::collection::vec(-1e6..1e6f64, 0..50),
    ) {
        let mut window = WindowState::new(w).unwrap();
        for (i, &value) in values.iter().enumerate() {
            window.push(Sample::new(i as u64 + 1, value)).unwrap();
            if window.is_full() {
                let mut reference: Vec<f64> = window.arrival().map(|s| s.value).collect();
                let mid = reference.len() / 2;
                reference.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).unwrap());
                prop_assert_eq!(window.median().unwrap(), reference[mid]);
            } else {
                prop_assert!(window.median().is_err());
            }
        }
    }
}
