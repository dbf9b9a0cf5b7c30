use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pa_forge::field::FieldCtx;
use pa_forge::groups::{self, GroupName, MinimalDegree, ScanMode};
use pa_forge::pa::{self, hamming_distance, PermArray, VerifyReport};
use pa_forge::pam::build_pa_from;
use pa_forge::sfp::{self, SearchManifest, SfpQuery, Variant};

mod bounds;

#[derive(Parser)]
#[command(name = "pa-forge", version, about = "Permutation arrays from fractional polynomials and permutation groups")]
struct Cli {
    /// Worker threads (falls back to PA_FORGE_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search a family of fractional polynomials and report its size.
    Sfp(SfpArgs),
    /// Check the minimum distance of a PA file.
    Verify(VerifyArgs),
    /// Order and minimal degree of a named group.
    Group(GroupArgs),
    /// Recompute the published lower bounds as CSV.
    Bounds(BoundsArgs),
    /// Best family size for every prime q and k in a range, as CSV.
    Grid(GridArgs),
}

#[derive(Args)]
struct SfpArgs {
    #[arg(long)]
    q: u32,
    /// Total degree budget `s + t`; the best split is searched.
    #[arg(long)]
    k: Option<i64>,
    #[arg(long, default_value = "q")]
    variant: Variant,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<i64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    a: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    b: i64,
    /// Write the constructed PA here (JSON if the name ends in `.json`).
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Also list the count of every query tried.
    #[arg(long)]
    show_tried: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Full,
    Sample,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "full")]
    mode: CheckMode,
    #[arg(long, default_value_t = pa::DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = pa::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanChoice {
    Exact,
    Sample,
}

#[derive(Args)]
struct GroupArgs {
    /// agl1, pgl2, agl, sym_pairs, symmetric, mathieu22, mathieu23, mathieu24
    #[arg(long)]
    name: String,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// Defaults to exact when the order is at most --cap.
    #[arg(long, value_enum)]
    mode: Option<ScanChoice>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = groups::DEFAULT_CAP)]
    cap: u128,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    reproduce: bool,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample the largest array and skip the M23 scan.
    #[arg(long)]
    skip_slow: bool,
    #[arg(long, default_value_t = pa::DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = pa::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 23)]
    q_max: u32,
    #[arg(long, default_value_t = 5)]
    k_max: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Bad input or parameters: exit 2.
    Usage(String),
    /// A check ran and failed: exit 1.
    Check(String),
}

impl From<pa_forge::Error> for Failure {
    fn from(e: pa_forge::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads(cli.threads) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Sfp(args) => cmd_sfp(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Group(args) => cmd_group(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Grid(args) => cmd_grid(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), String> {
    let threads = match flag {
        Some(n) => Some(n),
        None => match std::env::var("PA_FORGE_THREADS") {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|e| format!("PA_FORGE_THREADS={v:?}: {e}"))?),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err("thread count must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn print_json(value: &impl Serialize) -> CmdResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_pa(path: &Path, pa: &PermArray) -> CmdResult {
    let text = if path.extension().is_some_and(|e| e == "json") { pa.to_json()? } else { pa.to_text() };
    fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize)]
struct SfpOutput {
    #[serde(flatten)]
    manifest: SearchManifest,
    #[serde(skip_serializing_if = "Option::is_none")]
    tried: Option<Vec<TriedQuery>>,
}

#[derive(Serialize)]
struct TriedQuery {
    query: String,
    count: usize,
}

fn cmd_sfp(args: SfpArgs) -> CmdResult {
    let start = Instant::now();
    let (result, tried) = match (args.s, args.t) {
        (Some(s), Some(t)) => {
            if args.k.is_some_and(|k| k != s + t) {
                return Err(Failure::Usage(format!("--k must equal s + t = {}", s + t)));
            }
            let query = match args.variant {
                Variant::LengthQ if args.a != 0 || args.b != 0 => {
                    return Err(Failure::Usage("--a/--b apply only to --variant q+1".into()))
                }
                Variant::LengthQ => SfpQuery::length_q(args.q, s, t),
                Variant::LengthQPlus1 => SfpQuery::length_q_plus_1(args.q, s, t, args.a, args.b),
            };
            (sfp::enumerate_fast(&query)?, None)
        }
        (None, None) => {
            let k = args.k.ok_or_else(|| Failure::Usage("give --k, or both --s and --t".into()))?;
            let best = sfp::best_count(args.q, k, args.variant)?;
            let tried = best.tried.iter().map(|(q, c)| TriedQuery { query: q.to_string(), count: *c }).collect();
            (best.best, Some(tried))
        }
        _ => return Err(Failure::Usage("--s and --t go together".into())),
    };
    let manifest = SearchManifest::new(&result, start.elapsed());
    if let Some(path) = &args.emit {
        let ctx = FieldCtx::with_order(u64::from(args.q))?;
        write_pa(path, &build_pa_from(&ctx, &result)?)?;
    }
    print_json(&SfpOutput { manifest, tried: if args.show_tried { tried } else { None } })
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let text = fs::read_to_string(&args.input)?;
    let pa = match PermArray::parse(&text) {
        Err(pa_forge::Error::DuplicateRow { first, second }) => {
            return Err(Failure::Check(format!("violation: rows {first} and {second} are equal (distance 0)")));
        }
        other => other?,
    };
    let report: VerifyReport = match args.mode {
        CheckMode::Full => pa::verify_full(&pa, pa::DEFAULT_FULL_CAP)?,
        CheckMode::Sample => pa::verify_sampled(&pa, args.samples, args.seed),
    };
    print_json(&report)?;
    if report.pass {
        return Ok(());
    }
    let (i, j) = report.witness.expect("a failed report carries a witness");
    let d = hamming_distance(&pa.rows()[i], &pa.rows()[j])?;
    Err(Failure::Check(format!(
        "violation: rows {i} and {j} are at distance {d}, below the claimed {}",
        pa.claimed_distance()
    )))
}

#[derive(Serialize)]
struct GroupOutput {
    #[serde(flatten)]
    facts: groups::GroupFacts,
    /// `(n, M, d)` of the group viewed as a PA.
    pa: (usize, u128, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    sharply_transitive: Option<SharpCheck>,
}

#[derive(Serialize)]
struct SharpCheck {
    k: usize,
    holds: bool,
}

/// Largest group materialized only for the sharp-transitivity check.
const SHARP_CHECK_CAP: u128 = 1 << 20;

fn cmd_group(args: GroupArgs) -> CmdResult {
    let name = GroupName::from_parts(&args.name, args.q, args.d, args.m)?;
    let g = groups::make_named(&name)?;
    let order = g.order();
    let mode = match args.mode {
        Some(ScanChoice::Exact) => ScanMode::Exact,
        Some(ScanChoice::Sample) => ScanMode::Sampled { trials: args.trials, seed: args.seed },
        None if order <= args.cap => ScanMode::Exact,
        None => ScanMode::Sampled { trials: args.trials, seed: args.seed },
    };
    let facts = groups::minimal_degree(&g, mode, args.cap)?;
    let n = g.degree();
    let k = (1..=n).rev().find(|&k| pa::falling_factorial(n, k) == Some(order));
    let needs_closure = args.emit.is_some() || (k.is_some() && order <= SHARP_CHECK_CAP);
    let array = if needs_closure { Some(groups::group_to_pa(&g, &facts, args.cap)?) } else { None };
    let sharply_transitive = match (k, &array) {
        (Some(k), Some(pa)) if order <= SHARP_CHECK_CAP => {
            Some(SharpCheck { k, holds: pa::is_sharply_k_transitive(pa, k)? })
        }
        _ => None,
    };
    if let (Some(path), Some(pa)) = (&args.emit, &array) {
        write_pa(path, pa)?;
    }
    if let MinimalDegree::SampledUpperBound { .. } = facts.minimal_degree {
        eprintln!("note: minimal degree is a sampled upper bound");
    }
    let d = facts.minimal_degree.value();
    print_json(&GroupOutput { facts, pa: (n, order, d), sharply_transitive })
}

#[derive(Serialize)]
struct GridRow {
    q: u32,
    variant: Variant,
    k: i64,
    n: usize,
    d: i64,
    count: usize,
    s: i64,
    t: i64,
    a: i64,
    b: i64,
}

fn cmd_grid(args: GridArgs) -> CmdResult {
    let mut out: csv::Writer<Box<dyn std::io::Write>> = csv::Writer::from_writer(match &args.out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(std::io::stdout()),
    });
    for q in (2..=args.q_max).filter(|&q| pa_forge::field::is_prime(u64::from(q))) {
        for variant in [Variant::LengthQ, Variant::LengthQPlus1] {
            for k in 0..=args.k_max {
                let Ok(best) = sfp::best_count(q, k, variant) else { continue };
                let query = best.best.query;
                out.serialize(GridRow {
                    q,
                    variant,
                    k,
                    n: query.length(),
                    d: best.best.guaranteed_distance,
                    count: best.best.count(),
                    s: query.s,
                    t: query.t,
                    a: query.a,
                    b: query.b,
                })?;
                out.flush()?;
            }
        }
    }
    Ok(())
}
