//! Selection correctness against a materialized oracle, plus the linear-work
//! instrumentation checks.
//!
//! The oracle path is intentionally independent of the selection path: it
//! materializes all `m²` virtual entries, sorts them, and indexes.

use qn_core::datagen::rng::Xoshiro256pp;
use qn_core::{biselect, collect_between, select_kth, select_kth_instrumented, DiffMatrixView};

fn materialized_sorted(x: &[f64]) -> Vec<f64> {
    let mut entries = Vec::with_capacity(x.len() * x.len());
    for &a in x {
        for &b in x {
            entries.push(a - b);
        }
    }
    entries.sort_by(|a, b| a.partial_cmp(b).unwrap());
    entries
}

fn random_sorted_int_vector(rng: &mut Xoshiro256pp, len: usize, value_range: u64) -> Vec<f64> {
    let mut values: Vec<f64> = (0..len)
        .map(|_| (rng.next_u64() % (value_range + 1)) as f64)
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values
}

#[test]
fn exhaustive_oracle_up_to_order_8() {
    let mut rng = Xoshiro256pp::seed_from_u64(0x5EED);
    for m in 1..=8usize {
        for vector_index in 0..100 {
            // Alternate wide and tie-heavy ranges to stress duplicate paths.
            let range = if vector_index % 2 == 0 {
                2 * m as u64
            } else {
                3
            };
            let x = random_sorted_int_vector(&mut rng, m, range);
            let sorted = materialized_sorted(&x);
            let view = DiffMatrixView::new(&x).unwrap();
            for k in 1..=m * m {
                let got = select_kth(view, k).unwrap();
                assert_eq!(
                    got,
                    sorted[k - 1],
                    "m={m} x={x:?} k={k}: got {got}, oracle {}",
                    sorted[k - 1]
                );
            }
        }
    }
}

#[test]
fn exhaustive_oracle_orders_9_to_12_with_adversarial_vectors() {
    let mut rng = Xoshiro256pp::seed_from_u64(0xBAD5EED);
    for m in 9..=12usize {
        let mut vectors = vec![
            vec![0.0; m],
            (0..m).map(|i| i as f64).collect::<Vec<_>>(),
            (0..m).map(|i| (i / 2) as f64).collect::<Vec<_>>(),
        ];
        for _ in 0..30 {
            vectors.push(random_sorted_int_vector(&mut rng, m, 4));
            vectors.push(random_sorted_int_vector(&mut rng, m, 3 * m as u64));
        }
        for x in &vectors {
            let sorted = materialized_sorted(x);
            let view = DiffMatrixView::new(x).unwrap();
            for k in 1..=m * m {
                assert_eq!(
                    select_kth(view, k).unwrap(),
                    sorted[k - 1],
                    "m={m} x={x:?} k={k}"
                );
            }
        }
    }
}

#[test]
fn biselect_brackets_the_target_with_linear_candidate_sets() {
    let mut rng = Xoshiro256pp::seed_from_u64(77);
    for &m in &[5usize, 17, 33, 64, 101, 250] {
        let x = random_sorted_int_vector(&mut rng, m, m as u64);
        let sorted = materialized_sorted(&x);
        let view = DiffMatrixView::new(&x).unwrap();
        for k in [1, m, m * m / 4, m * m / 2, (3 * m * m) / 4, m * m] {
            let k = k.max(1);
            let pair = biselect(view, k, k).unwrap();
            let target = sorted[k - 1];
            assert!(pair.lo <= target && target <= pair.hi, "m={m} k={k}");
            let between = collect_between(view, pair.lo, pair.hi);
            assert!(
                between.len() <= 12 * m,
                "m={m} k={k}: candidate set {} exceeds linear bound",
                between.len()
            );
        }
    }
}

#[test]
fn work_counters_stay_linear_in_the_order() {
    let mut rng = Xoshiro256pp::seed_from_u64(2718);
    for &m in &[33usize, 101, 501, 1001, 2000, 4097] {
        // Continuous, tie-heavy, and constant inputs.
        let continuous: Vec<f64> = {
            let mut v: Vec<f64> = (0..m).map(|_| rng.unit() * 1e6).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        let ties = random_sorted_int_vector(&mut rng, m, 5);
        let constant = vec![3.25; m];
        for x in [&continuous, &ties, &constant] {
            let view = DiffMatrixView::new(x).unwrap();
            for k in [1usize, m * m / 4, m * m / 2, m * m] {
                let k = k.max(1);
                let (_, stats) = select_kth_instrumented(view, k).unwrap();
                let per_element = stats.entry_evals as f64 / m as f64;
                assert!(
                    per_element <= 48.0,
                    "m={m} k={k}: {per_element:.1} entry evals per element"
                );
                let depth_bound = (m as f64).log2().ceil() as usize + 2;
                assert!(
                    stats.max_depth <= depth_bound,
                    "m={m}: depth {} exceeds {depth_bound}",
                    stats.max_depth
                );
                assert!(
                    stats.max_candidates <= 12 * m,
                    "m={m} k={k}: candidates {}",
                    stats.max_candidates
                );
            }
        }
    }
}

#[test]
fn rank_sweeps_are_monotone_in_the_threshold() {
    let mut rng = Xoshiro256pp::seed_from_u64(99);
    let x = random_sorted_int_vector(&mut rng, 40, 15);
    let view = DiffMatrixView::new(&x).unwrap();
    let thresholds: Vec<f64> = (-20..=20).map(|t| t as f64 / 2.0).collect();
    let mut previous_below = 0;
    let mut previous_above = view.len();
    for (i, &a) in thresholds.iter().enumerate() {
        let below = qn_core::rank_below(view, a);
        let above = qn_core::rank_above(view, a);
        if i > 0 {
            assert!(below >= previous_below, "rank_below must be nondecreasing");
            assert!(above <= previous_above, "rank_above must be nonincreasing");
        }
        previous_below = below;
        previous_above = above;
    }
}

#[test]
fn f32_selection_agrees_with_the_oracle() {
    let mut rng = Xoshiro256pp::seed_from_u64(4);
    for _ in 0..20 {
        let x64 = random_sorted_int_vector(&mut rng, 9, 6);
        let x32: Vec<f32> = x64.iter().map(|&v| v as f32).collect();
        let sorted = materialized_sorted(&x64);
        let view = DiffMatrixView::new(&x32[..]).unwrap();
        for k in 1..=81 {
            assert_eq!(select_kth(view, k).unwrap() as f64, sorted[k - 1]);
        }
    }
}
