//! `sck` — batch front end for the self-checking arithmetic toolkit.

mod output;
mod table2;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use sck_core::coverage::{run_exhaustive, run_sampled, CampaignSpec, Mode, DEFAULT_BUDGET};
use sck_core::fir::{
    fir_fault_campaign, measure_overhead, read_integer_lines, seeded_corpus, FirConfig,
};
use sck_core::{bitsim, CheckPolicy, CheckTechnique, Error as CoreError, Operator, Width, Word};

use output::{emit, Format};

#[derive(Parser)]
#[command(
    name = "sck",
    version,
    about = "Self-checking arithmetic: coverage campaigns, FIR fault campaigns, overhead benchmarks"
)]
struct Cli {
    /// Worker threads for campaign enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one fault-injection coverage campaign.
    Coverage(CoverageArgs),
    /// Reproduce the published add-operator coverage table.
    Table2(Table2Args),
    /// FIR case study: end-to-end fault campaign or overhead benchmark.
    Fir(FirArgs),
    /// Overhead benchmark of the plain/checked/embedded FIR builds.
    Bench(BenchArgs),
}

#[derive(Args)]
struct CoverageArgs {
    /// Operator under test: add, sub, mul, div.
    #[arg(long)]
    op: String,

    /// Control technique: tech1, tech2, both.
    #[arg(long)]
    tech: String,

    /// Operand width in bits (1..=32).
    #[arg(long)]
    bits: u32,

    /// same-unit (controls share the faulty unit) or cross-unit.
    #[arg(long, default_value = "same-unit")]
    mode: String,

    /// Force exhaustive enumeration (the default).
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,

    /// Sample this many situations instead of enumerating.
    #[arg(long)]
    sample: Option<u64>,

    /// Seed for sampled runs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Table2Args {
    /// Also run the sampled width-16 row.
    #[arg(long)]
    full: bool,

    /// Largest exhaustive width to run (subset reproductions).
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=12))]
    max_bits: u32,

    /// Samples for the width-16 row.
    #[arg(long, default_value_t = 10_000_000)]
    sample: u64,

    /// Seed for the width-16 row.
    #[arg(long, default_value_t = 2004)]
    seed: u64,
}

#[derive(Args)]
struct FirArgs {
    /// Measure plain/checked/embedded wall-clock overhead.
    #[arg(long, conflicts_with = "campaign")]
    bench: bool,

    /// Run the end-to-end fault-injection campaign.
    #[arg(long)]
    campaign: bool,

    /// Operand width in bits.
    #[arg(long)]
    bits: Option<u32>,

    /// Checking policy: tech1, tech2, both.
    #[arg(long)]
    policy: Option<String>,

    /// Tap file, one decimal integer per line.
    #[arg(long)]
    taps: Option<PathBuf>,

    /// Input file, one decimal integer per line (replaces the seeded corpus).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Input length per generated vector.
    #[arg(long)]
    len: Option<usize>,

    /// Number of seeded input vectors for the campaign.
    #[arg(long, default_value_t = 100)]
    inputs: usize,

    /// Corpus seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// same-unit or cross-unit controls during the campaign.
    #[arg(long, default_value = "same-unit")]
    mode: String,

    /// Benchmark repetitions.
    #[arg(long, default_value_t = 15)]
    reps: u32,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 16)]
    bits: u32,

    #[arg(long, default_value_t = 4096)]
    len: usize,

    #[arg(long, default_value = "tech1")]
    policy: String,

    #[arg(long)]
    taps: Option<PathBuf>,

    #[arg(long, default_value_t = 15)]
    reps: u32,
}

/// Failures mapped onto exit statuses: usage/input errors exit 2, resource
/// refusals exit 3.
enum CliError {
    Usage(String),
    Budget(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reports usage problems with exit status 2 on its own
            e.exit();
        }
    };
    let threads = cli.threads;
    let run = || dispatch(cli);
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(CliError::Usage(format!("cannot build thread pool: {e}"))),
        },
        None => run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Coverage(args) => run_coverage(args, cli.format, cli.output.as_deref()),
        Command::Table2(args) => table2::run(args, cli.format, cli.output.as_deref()),
        Command::Fir(args) => run_fir(args, cli.format, cli.output.as_deref()),
        Command::Bench(args) => run_bench(args, cli.format, cli.output.as_deref()),
    }
}

fn parse<T: FromStr<Err = String>>(text: &str) -> Result<T, CliError> {
    text.parse().map_err(CliError::Usage)
}

fn parse_width(bits: u32) -> Result<Width, CliError> {
    Width::new(bits).map_err(CliError::from)
}

fn budget_from_env() -> Result<u128, CliError> {
    match std::env::var("SCK_BUDGET") {
        Ok(text) => text
            .parse::<u128>()
            .map_err(|_| CliError::Usage(format!("SCK_BUDGET is not an integer: {text:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn parse_policy(text: &str) -> Result<CheckPolicy, CliError> {
    match text {
        "tech1" => Ok(CheckPolicy::tech1()),
        "tech2" => Ok(CheckPolicy::tech2()),
        "both" => Ok(CheckPolicy::both()),
        other => Err(CliError::Usage(format!("unknown policy {other:?}"))),
    }
}

fn run_coverage(args: &CoverageArgs, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let operator: Operator = parse(&args.op)?;
    let technique: CheckTechnique = parse(&args.tech)?;
    let mode: Mode = parse(&args.mode)?;
    let width = parse_width(args.bits)?;
    let mut spec = match args.sample {
        Some(count) => CampaignSpec::sampled(operator, technique, width, mode, count, args.seed),
        None => CampaignSpec::exhaustive(operator, technique, width, mode),
    };
    spec.budget = budget_from_env()?;
    let result = match args.sample {
        Some(_) => run_sampled(&spec)?,
        None => run_exhaustive(&spec)?,
    };
    emit(&output::campaign_report(&result, format), out).map_err(CliError::from)
}

fn fir_taps(args_taps: Option<&std::path::Path>, default: &[i64], width: Width) -> Result<Vec<i64>, CliError> {
    match args_taps {
        Some(path) => {
            let taps = read_integer_lines(path)?;
            if taps.is_empty() {
                return Err(CliError::Usage(format!("{}: no taps", path.display())));
            }
            let _ = width;
            Ok(taps)
        }
        None => Ok(default.to_vec()),
    }
}

fn run_fir(args: &FirArgs, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
    if !args.bench && !args.campaign {
        return Err(CliError::Usage(
            "fir needs one of --bench or --campaign".into(),
        ));
    }
    if args.bench {
        let bench = BenchArgs {
            bits: args.bits.unwrap_or(16),
            len: args.len.unwrap_or(4096),
            policy: args.policy.clone().unwrap_or_else(|| "tech1".into()),
            taps: args.taps.clone(),
            reps: args.reps,
        };
        return run_bench(&bench, format, out);
    }

    let width = parse_width(args.bits.unwrap_or(8))?;
    let policy = parse_policy(args.policy.as_deref().unwrap_or("both"))?;
    let mode: Mode = parse(&args.mode)?;
    let len = args.len.unwrap_or(64);
    let taps = fir_taps(args.taps.as_deref(), &[3, -5, 7], width)?;
    let cfg = FirConfig::new(&taps, width, len, policy);

    let corpus: Vec<Vec<Word>> = match &args.input {
        Some(path) => {
            let samples = read_integer_lines(path)?;
            vec![samples
                .into_iter()
                .map(|v| Word::from_signed(v, width))
                .collect()]
        }
        None => seeded_corpus(args.inputs, len, width, args.seed),
    };

    let faults = bitsim::enumerate_faults(width);
    let report = fir_fault_campaign(&cfg, &faults, &corpus, mode);
    emit(
        &output::fir_campaign_report(&report, &cfg, mode, args.seed, format),
        out,
    )
    .map_err(CliError::from)
}

fn run_bench(args: &BenchArgs, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let width = parse_width(args.bits)?;
    let policy = parse_policy(&args.policy)?;
    let taps = fir_taps(args.taps.as_deref(), &sck_core::fir::BENCH_TAPS, width)?;
    let cfg = FirConfig::new(&taps, width, args.len, policy);
    let input = seeded_corpus(1, args.len, width, 1).remove(0);
    let report = measure_overhead(&cfg, &input, args.reps);
    emit(&output::overhead_report(&report, &cfg, format), out).map_err(CliError::from)
}
