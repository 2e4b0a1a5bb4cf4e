//! Library half of the `qn` command line tool: the benchmark harness and
//! the input/output plumbing shared with the integration tests.

pub mod bench;
pub mod input;

pub use bench::{
    bench_stream, cell_seed, mean_ci95, run_bench, run_cell, stream_length, BenchAggregate,
    BenchConfig, BenchReport, BenchRow,
};
