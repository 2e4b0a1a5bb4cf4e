//! Throughput benchmark harness.
//!
//! For every (distribution, w) cell the harness generates a fresh stream of
//! length `tested_items + 2w + 1`, feeds the first `2w + 1` items to the
//! detector as untimed warm-up (the single verdict that warm-up produces is
//! discarded), then times exactly `tested_items` steady-state updates. Each
//! cell is repeated `runs` times and reported as per-run updates/sec plus a
//! mean and a 95% confidence half-width over the run means.
//!
//! Workloads are deterministic: the stream for a (distribution, w, run)
//! cell depends only on the base seed and those coordinates, so a report
//! can be regenerated with identical inputs (only timings vary).

use std::fmt;
use std::time::Instant;

use qn_core::datagen::{generate, Dist, DistSpec};
use qn_core::{Detector, DnMode, Error, QnConfig, Result};

/// Benchmark protocol parameters.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub w_values: Vec<usize>,
    pub tested_items: usize,
    pub runs: usize,
    pub dists: Vec<Dist>,
    pub t: f64,
    pub dn_mode: DnMode,
    pub seed: u64,
    /// Number of (distribution, w) cells timed concurrently, capped at one
    /// per hardware core. Keep at 1 for timing fidelity; values above 1
    /// trade precision for wall time.
    pub jobs: usize,
}

impl Default for BenchConfig {
    /// The full experiment: w from 100 to 500 in steps of 100, 100000 tested
    /// items, three runs, all twelve distributions.
    fn default() -> Self {
        BenchConfig {
            w_values: vec![100, 200, 300, 400, 500],
            tested_items: 100_000,
            runs: 3,
            dists: Dist::benchmark_suite().to_vec(),
            t: 3.0,
            dn_mode: DnMode::FiniteSample,
            seed: 42,
            jobs: 1,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParameter {
                name: "runs",
                reason: "must be at least 1".into(),
            });
        }
        if self.tested_items == 0 {
            return Err(Error::InvalidParameter {
                name: "tested_items",
                reason: "must be at least 1".into(),
            });
        }
        if self.w_values.is_empty() || self.w_values.contains(&0) {
            return Err(Error::InvalidParameter {
                name: "w_values",
                reason: "need at least one positive semi-window size".into(),
            });
        }
        if self.dists.is_empty() {
            return Err(Error::InvalidParameter {
                name: "dists",
                reason: "need at least one distribution".into(),
            });
        }
        if self.jobs == 0 {
            return Err(Error::InvalidParameter {
                name: "jobs",
                reason: "must be at least 1".into(),
            });
        }
        for dist in &self.dists {
            dist.validate()?;
        }
        Ok(())
    }
}

/// One timed run of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub distribution: String,
    pub w: usize,
    pub run: usize,
    pub updates_per_sec: f64,
}

/// Per-cell mean and confidence half-width over the run means.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchAggregate {
    pub distribution: String,
    pub w: usize,
    pub mean: f64,
    pub ci95: f64,
}

/// Full report: per-run rows followed by per-cell aggregates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<BenchAggregate>,
}

/// Dataset length needed to test `tested_items` items at semi-window `w`.
pub fn stream_length(tested_items: usize, w: usize) -> usize {
    tested_items + 2 * w + 1
}

/// Deterministic seed for one (distribution, w, run) cell: FNV-1a over the
/// base seed and the cell coordinates.
pub fn cell_seed(base: u64, dist_name: &str, w: usize, run: usize) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(&base.to_le_bytes());
    eat(dist_name.as_bytes());
    eat(&(w as u64).to_le_bytes());
    eat(&(run as u64).to_le_bytes());
    hash
}

/// The exact stream a cell is timed on.
pub fn bench_stream(
    dist: Dist,
    w: usize,
    tested_items: usize,
    base_seed: u64,
    run: usize,
) -> Result<Vec<f64>> {
    let spec = DistSpec::new(dist, cell_seed(base_seed, dist.name(), w, run));
    generate(&spec, stream_length(tested_items, w))
}

/// Times one run of one cell and returns updates per second.
pub fn run_cell(dist: Dist, w: usize, run: usize, config: &BenchConfig) -> Result<f64> {
    let stream = bench_stream(dist, w, config.tested_items, config.seed, run)?;
    debug_assert_eq!(stream.len(), stream_length(config.tested_items, w));

    let t = config.t;
    let mut detector = Detector::new(QnConfig::new(w, t, config.dn_mode)?)?;
    let warmup = 2 * w + 1;
    for &value in &stream[..warmup] {
        detector.push_value(value)?;
    }

    let mut outliers = 0usize;
    let start = Instant::now();
    for &value in &stream[warmup..] {
        if let Some(verdict) = detector.push_value(value)? {
            if verdict.is_outlier {
                outliers += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    std::hint::black_box(outliers);

    Ok(config.tested_items as f64 / elapsed)
}

/// Runs the whole protocol and assembles the report.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;

    // One work unit per (distribution, w); runs stay sequential inside a
    // unit so its runs see comparable conditions.
    let cells: Vec<(Dist, usize)> = config
        .dists
        .iter()
        .flat_map(|&dist| config.w_values.iter().map(move |&w| (dist, w)))
        .collect();

    // Never time more cells concurrently than there are hardware cores.
    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let jobs = config.jobs.min(cores);

    let rates: Vec<Vec<f64>> = if jobs <= 1 {
        let mut all = Vec::with_capacity(cells.len());
        for &(dist, w) in &cells {
            all.push(cell_rates(dist, w, config)?);
        }
        all
    } else {
        parallel_cell_rates(&cells, jobs, config)?
    };

    let mut report = BenchReport::default();
    for ((dist, w), cell_rates) in cells.into_iter().zip(rates) {
        let name = dist.name().to_string();
        for (run_index, &rate) in cell_rates.iter().enumerate() {
            report.rows.push(BenchRow {
                distribution: name.clone(),
                w,
                run: run_index + 1,
                updates_per_sec: rate,
            });
        }
        let (mean, ci95) = mean_ci95(&cell_rates);
        report.aggregates.push(BenchAggregate {
            distribution: name,
            w,
            mean,
            ci95,
        });
    }
    Ok(report)
}

fn cell_rates(dist: Dist, w: usize, config: &BenchConfig) -> Result<Vec<f64>> {
    (1..=config.runs)
        .map(|run| run_cell(dist, w, run, config))
        .collect()
}

fn parallel_cell_rates(
    cells: &[(Dist, usize)],
    jobs: usize,
    config: &BenchConfig,
) -> Result<Vec<Vec<f64>>> {
    let jobs = jobs.min(cells.len().max(1));
    let mut slots: Vec<Option<Result<Vec<f64>>>> = vec![None; cells.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            handles.push(scope.spawn(move || {
                let mut results = Vec::new();
                for (index, &(dist, w)) in cells.iter().enumerate() {
                    if index % jobs == worker {
                        results.push((index, cell_rates(dist, w, config)));
                    }
                }
                results
            }));
        }
        for handle in handles {
            for (index, result) in handle.join().expect("bench worker panicked") {
                slots[index] = Some(result);
            }
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every cell scheduled"))
        .collect()
}

/// Mean and normal-approximation 95% confidence half-width of run means.
pub fn mean_ci95(rates: &[f64]) -> (f64, f64) {
    let n = rates.len();
    let mean = rates.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = rates.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, 1.96 * var.sqrt() / (n as f64).sqrt())
}

const RUN_HEADER: &str = "distribution,w,run,updates_per_sec";
const AGG_HEADER: &str = "distribution,w,mean,ci95";

impl BenchReport {
    /// Serializes the report: per-run rows, a blank line, then aggregates.
    /// Comment lines record the protocol and the confidence-interval method.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# qn bench report\n");
        out.push_str(
            "# protocol: stream length = tested_items + 2w + 1; first 2w + 1 pushes are untimed warm-up; timed region covers exactly tested_items updates\n",
        );
        out.push_str(
            "# ci95: half-width of the normal-approximation 95% confidence interval over run means (1.96 * sd / sqrt(runs))\n",
        );
        out.push_str(RUN_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.distribution, row.w, row.run, row.updates_per_sec
            ));
        }
        out.push('\n');
        out.push_str(AGG_HEADER);
        out.push('\n');
        for agg in &self.aggregates {
            out.push_str(&format!(
                "{},{},{},{}\n",
                agg.distribution, agg.w, agg.mean, agg.ci95
            ));
        }
        out
    }

    /// Parses a report back from [`BenchReport::to_csv`] output.
    pub fn from_csv(text: &str) -> std::result::Result<BenchReport, ParseReportError> {
        let mut report = BenchReport::default();
        let mut section = Section::Preamble;
        for (line_index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |message: &str| ParseReportError {
                line: line_index + 1,
                message: message.to_string(),
            };
            if line == RUN_HEADER {
                section = Section::Runs;
                continue;
            }
            if line == AGG_HEADER {
                section = Section::Aggregates;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(fail("expected 4 comma-separated fields"));
            }
            match section {
                Section::Preamble => return Err(fail("data before header")),
                Section::Runs => report.rows.push(BenchRow {
                    distribution: fields[0].to_string(),
                    w: fields[1].parse().map_err(|_| fail("bad w"))?,
                    run: fields[2].parse().map_err(|_| fail("bad run"))?,
                    updates_per_sec: fields[3].parse().map_err(|_| fail("bad updates_per_sec"))?,
                }),
                Section::Aggregates => report.aggregates.push(BenchAggregate {
                    distribution: fields[0].to_string(),
                    w: fields[1].parse().map_err(|_| fail("bad w"))?,
                    mean: fields[2].parse().map_err(|_| fail("bad mean"))?,
                    ci95: fields[3].parse().map_err(|_| fail("bad ci95"))?,
                }),
            }
        }
        Ok(report)
    }
}

enum Section {
    Preamble,
    Runs,
    Aggregates,
}

/// Failure while re-parsing a report CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseReportError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "report line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseReportError {}
