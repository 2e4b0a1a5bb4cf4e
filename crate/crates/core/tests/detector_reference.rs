//! Streaming detector vs a naive per-window reference that re-sorts from
//! scratch and evaluates the brute-force estimator, plus the detector-level
//! decision laws.

use std::collections::VecDeque;

use qn_core::datagen::{generate, Dist, DistSpec};
use qn_core::{qn_bruteforce, Detector, DnMode, QnConfig, Verdict};

/// Naive reference: for every window of size `2w + 1`, recompute median and
/// Qn from scratch and apply the same strict test.
fn reference_verdicts(values: &[f64], w: usize, t: f64, mode: DnMode) -> Vec<Verdict<f64>> {
    let s = 2 * w + 1;
    let mut window: VecDeque<f64> = VecDeque::with_capacity(s);
    let mut verdicts = Vec::new();
    for (i, &value) in values.iter().enumerate() {
        window.push_back(value);
        if window.len() > s {
            window.pop_front();
        }
        if window.len() == s {
            let mut sorted: Vec<f64> = window.iter().copied().collect();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = sorted[w];
            let qn = qn_bruteforce(&sorted, mode).unwrap().qn;
            let center = window[w];
            let score = (center - median).abs();
            verdicts.push(Verdict {
                index: (i + 1 - w) as u64,
                value: center,
                median,
                qn,
                score,
                is_outlier: score > t * qn,
            });
        }
    }
    verdicts
}

fn relative_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

fn assert_equivalent(streaming: &[Verdict<f64>], reference: &[Verdict<f64>]) {
    assert_eq!(streaming.len(), reference.len());
    for (got, want) in streaming.iter().zip(reference) {
        assert_eq!(got.index, want.index);
        assert_eq!(got.value, want.value);
        assert_eq!(got.median, want.median, "index {}", got.index);
        assert!(
            relative_close(got.qn, want.qn),
            "index {}: {} vs {}",
            got.index,
            got.qn,
            want.qn
        );
        assert_eq!(got.is_outlier, want.is_outlier, "index {}", got.index);
    }
}

#[test]
fn streaming_matches_naive_reference_on_sampled_distributions() {
    let dists = [
        Dist::benchmark_default("normal").unwrap(),
        Dist::benchmark_default("poisson").unwrap(),
        Dist::benchmark_default("log-normal").unwrap(),
        Dist::benchmark_default("zipf").unwrap(),
    ];
    for dist in dists {
        let values = generate(&DistSpec::new(dist, 1234), 600).unwrap();
        for w in [2usize, 5, 17] {
            let config = QnConfig::new(w, 3.0, DnMode::FiniteSample).unwrap();
            let streaming = Detector::run(config, values.iter().copied()).unwrap();
            let reference = reference_verdicts(&values, w, 3.0, DnMode::FiniteSample);
            assert_equivalent(&streaming, &reference);
        }
    }
}

#[test]
fn verdict_count_is_stream_length_minus_two_w() {
    let values = generate(
        &DistSpec::new(Dist::benchmark_default("uniform").unwrap(), 7),
        100,
    )
    .unwrap();
    for w in [1usize, 3, 10, 49, 50, 60] {
        let config = QnConfig::new(w, 3.0, DnMode::Unit).unwrap();
        let verdicts = Detector::run(config, values.iter().copied()).unwrap();
        assert_eq!(verdicts.len(), values.len().saturating_sub(2 * w));
    }
}

#[test]
fn affine_transform_preserves_decisions() {
    let values = generate(
        &DistSpec::new(Dist::benchmark_default("normal").unwrap(), 2020),
        800,
    )
    .unwrap();
    let config = QnConfig::new(4, 3.0, DnMode::FiniteSample).unwrap();
    let base = Detector::run(config, values.iter().copied()).unwrap();

    for (a, b) in [(-2.0f64, 5.0f64), (0.5, -100.0), (10.0, 0.25)] {
        let transformed: Vec<f64> = values.iter().map(|v| a * v + b).collect();
        let mapped = Detector::run(config, transformed).unwrap();
        assert_eq!(base.len(), mapped.len());
        for (original, image) in base.iter().zip(&mapped) {
            // Skip decisions that sit numerically on the threshold.
            let margin = (original.score - 3.0 * original.qn).abs();
            if margin <= 1e-9 * (1.0 + 3.0 * original.qn) {
                continue;
            }
            assert_eq!(
                original.is_outlier, image.is_outlier,
                "index {} under x -> {a}x + {b}",
                original.index
            );
        }
    }
}

#[test]
fn higher_threshold_flags_a_subset() {
    let values = generate(
        &DistSpec::new(Dist::benchmark_default("log-normal").unwrap(), 31337),
        1500,
    )
    .unwrap();
    let strict = Detector::run(
        QnConfig::new(6, 3.0, DnMode::FiniteSample).unwrap(),
        values.iter().copied(),
    )
    .unwrap();
    let loose = Detector::run(
        QnConfig::new(6, 4.0, DnMode::FiniteSample).unwrap(),
        values.iter().copied(),
    )
    .unwrap();
    assert_eq!(strict.len(), loose.len());
    let mut strict_outliers = 0;
    let mut loose_outliers = 0;
    for (s, l) in strict.iter().zip(&loose) {
        if l.is_outlier {
            assert!(
                s.is_outlier,
                "index {}: flagged at t=4 but not at t=3",
                l.index
            );
            loose_outliers += 1;
        }
        if s.is_outlier {
            strict_outliers += 1;
        }
    }
    assert!(strict_outliers >= loose_outliers);
    assert!(
        strict_outliers > 0,
        "the heavy-tailed stream should produce outliers"
    );
}
