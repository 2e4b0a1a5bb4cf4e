//! `qn` — streaming robust outlier detection over numeric streams.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qn_cli::bench::{run_bench, BenchConfig, BenchReport};
use qn_cli::input::{classify, Line};
use qn_core::datagen::rng::Xoshiro256pp;
use qn_core::datagen::{Dist, DistSpec, Generator};
use qn_core::{qn_bruteforce, qn_from_sorted, Detector, DnMode, QnConfig, QnValue, Verdict};

#[derive(Parser)]
#[command(
    name = "qn",
    about = "Streaming robust outlier detection with the Qn scale estimator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect outliers in a numeric stream (one value per line; file or stdin)
    Detect(DetectArgs),
    /// Generate a seeded synthetic stream, one value per line
    Gen(GenArgs),
    /// Compute the Qn scale estimate of a static dataset
    Qn(QnArgs),
    /// Run the throughput benchmark and emit a CSV report
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DnModeArg {
    /// No finite-sample correction (d_n = 1)
    Unit,
    /// Published small-sample table plus asymptotic formula
    #[value(alias = "finite_sample")]
    FiniteSample,
}

impl From<DnModeArg> for DnMode {
    fn from(arg: DnModeArg) -> DnMode {
        match arg {
            DnModeArg::Unit => DnMode::Unit,
            DnModeArg::FiniteSample => DnMode::FiniteSample,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct DetectArgs {
    /// Semi-window size; the full window holds 2w + 1 items
    #[arg(long)]
    w: usize,
    /// Dispersion multiplier of the outlierness test
    #[arg(long, default_value_t = 3.0)]
    t: f64,
    /// Finite-sample correction mode
    #[arg(long, value_enum, default_value_t = DnModeArg::FiniteSample)]
    dn_mode: DnModeArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Only emit rows for items flagged as outliers
    #[arg(long)]
    outliers_only: bool,
    /// Input file; stdin when omitted or `-`
    input: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Distribution name (beta, chi-squared, exponential, gamma, half-normal,
    /// inverse-gaussian, log-normal, normal, pareto, poisson, uniform, zipf)
    #[arg(long)]
    dist: String,
    /// Number of values to emit
    #[arg(long)]
    n: usize,
    /// Stream seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override a distribution parameter, e.g. --param mean=5 (repeatable)
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    /// Fraction of items to perturb with a synthetic spike (0 disables).
    /// This is a testing aid layered on top of the pure stream.
    #[arg(long, default_value_t = 0.0)]
    contaminate_rate: f64,
    /// Magnitude added (sign chosen at random) to contaminated items
    #[arg(long, default_value_t = 0.0)]
    contaminate_mag: f64,
}

#[derive(Args)]
struct QnArgs {
    /// Finite-sample correction mode
    #[arg(long, value_enum, default_value_t = DnModeArg::FiniteSample)]
    dn_mode: DnModeArg,
    /// Select inside the virtual difference matrix when the input length is
    /// odd (falls back to brute force otherwise)
    #[arg(long)]
    fast: bool,
    /// Input file; stdin when omitted or `-`
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Semi-window sizes to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 300, 400, 500])]
    w_values: Vec<usize>,
    /// Items tested (timed updates) per run
    #[arg(long, default_value_t = 100_000)]
    tested_items: usize,
    /// Timed repetitions per (distribution, w) cell
    #[arg(long, default_value_t = 3)]
    runs: usize,
    /// Distribution name, or `all` for the twelve benchmark distributions
    #[arg(long, default_value = "all")]
    dist: String,
    /// Dispersion multiplier passed to the detector
    #[arg(long, default_value_t = 3.0)]
    t: f64,
    /// Finite-sample correction mode
    #[arg(long, value_enum, default_value_t = DnModeArg::FiniteSample)]
    dn_mode: DnModeArg,
    /// Base seed; per-cell streams derive from it deterministically
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Cells timed concurrently, capped at one per hardware core
    /// (1 = sequential, best fidelity)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_param(raw: &str) -> Result<(String, f64), String> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{raw}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok((key.trim().to_string(), value))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Detect(args) => detect(args),
        Command::Gen(args) => gen(args),
        Command::Qn(args) => qn(args),
        Command::Bench(args) => bench(args),
    }
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let file = File::open(p).map_err(|e| format!("cannot open {}: {e}", p.display()))?;
            Ok(Box::new(BufReader::new(file)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

fn detect(args: DetectArgs) -> Result<i32, String> {
    let config = QnConfig::new(args.w, args.t, args.dn_mode.into()).map_err(|e| e.to_string())?;
    let mut detector = Detector::new(config).map_err(|e| e.to_string())?;

    let reader = open_input(&args.input)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.format == Format::Csv {
        writeln!(out, "index,value,median,qn,score,is_outlier").map_err(io_msg)?;
    }

    let mut malformed = 0usize;
    for item in reader.lines().enumerate() {
        let (index, raw) = (item.0 + 1, item.1.map_err(io_msg)?);
        match classify(&raw) {
            Line::Blank => {}
            Line::Malformed(content) => {
                malformed += 1;
                eprintln!("warning: line {index}: not a finite number: {content}");
            }
            Line::Value(value) => {
                let verdict = detector.push_value(value).map_err(|e| e.to_string())?;
                if let Some(v) = verdict {
                    if !args.outliers_only || v.is_outlier {
                        write_verdict(&mut out, &v, args.format).map_err(io_msg)?;
                    }
                }
            }
        }
    }
    out.flush().map_err(io_msg)?;
    Ok(if malformed > 0 { 2 } else { 0 })
}

fn write_verdict<W: Write>(out: &mut W, v: &Verdict<f64>, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(
            out,
            "{},{},{},{},{},{}",
            v.index,
            v.value,
            v.median,
            v.qn,
            v.score,
            if v.is_outlier { 1 } else { 0 }
        ),
        Format::Jsonl => writeln!(
            out,
            "{{\"index\":{},\"value\":{},\"median\":{},\"qn\":{},\"score\":{},\"is_outlier\":{}}}",
            v.index, v.value, v.median, v.qn, v.score, v.is_outlier
        ),
    }
}

fn gen(args: GenArgs) -> Result<i32, String> {
    let mut dist = Dist::benchmark_default(&args.dist)
        .ok_or_else(|| format!("unknown distribution `{}`", args.dist))?;
    for (key, value) in &args.params {
        dist = dist.with_param(key, *value).map_err(|e| e.to_string())?;
    }
    if !(0.0..=1.0).contains(&args.contaminate_rate) {
        return Err("contaminate-rate must lie in [0, 1]".into());
    }
    if !args.contaminate_mag.is_finite() || args.contaminate_mag < 0.0 {
        return Err("contaminate-mag must be finite and >= 0".into());
    }

    let generator = Generator::new(&DistSpec::new(dist, args.seed)).map_err(|e| e.to_string())?;
    let mut spikes = (args.contaminate_rate > 0.0).then(|| {
        Xoshiro256pp::seed_from_u64(qn_cli::bench::cell_seed(args.seed, "contaminate", 0, 0))
    });

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for mut value in generator.take(args.n) {
        if let Some(rng) = spikes.as_mut() {
            if rng.unit() < args.contaminate_rate {
                let sign = if rng.unit() < 0.5 { -1.0 } else { 1.0 };
                value += sign * args.contaminate_mag;
            }
        }
        writeln!(out, "{value}").map_err(io_msg)?;
    }
    out.flush().map_err(io_msg)?;
    Ok(0)
}

fn qn(args: QnArgs) -> Result<i32, String> {
    let reader = open_input(&args.input)?;
    let mut malformed = 0usize;
    let (values, bad) = qn_cli::input::read_all(reader, |line, content| {
        eprintln!("warning: line {line}: not a finite number: {content}");
    })
    .map_err(io_msg)?;
    malformed += bad;

    if values.len() < 2 {
        return Err(format!("need at least 2 values, got {}", values.len()));
    }

    let mode: DnMode = args.dn_mode.into();
    let result: QnValue<f64> = if args.fast && values.len() % 2 == 1 && values.len() >= 3 {
        let mut sorted = values;
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let w = (sorted.len() - 1) / 2;
        let config = QnConfig::new(w, 3.0, mode).map_err(|e| e.to_string())?;
        qn_from_sorted(&sorted, &config).map_err(|e| e.to_string())?
    } else {
        qn_bruteforce(&values, mode).map_err(|e| e.to_string())?
    };

    println!("stat={}", result.stat);
    println!("qn={}", result.qn);
    Ok(if malformed > 0 { 2 } else { 0 })
}

fn bench(args: BenchArgs) -> Result<i32, String> {
    let dists = if args.dist == "all" {
        Dist::benchmark_suite().to_vec()
    } else {
        vec![Dist::benchmark_default(&args.dist)
            .ok_or_else(|| format!("unknown distribution `{}`", args.dist))?]
    };
    let config = BenchConfig {
        w_values: args.w_values,
        tested_items: args.tested_items,
        runs: args.runs,
        dists,
        t: args.t,
        dn_mode: args.dn_mode.into(),
        seed: args.seed,
        jobs: args.jobs,
    };
    let report: BenchReport = run_bench(&config).map_err(|e| e.to_string())?;
    let csv = report.to_csv();
    match &args.output {
        Some(path) => {
            let mut file =
                File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            file.write_all(csv.as_bytes()).map_err(io_msg)?;
        }
        None => {
            io::stdout().write_all(csv.as_bytes()).map_err(io_msg)?;
        }
    }
    Ok(0)
}

fn io_msg(err: io::Error) -> String {
    err.to_string()
}
