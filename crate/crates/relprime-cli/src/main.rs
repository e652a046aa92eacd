//! Batch front end for the relprime library: compute values, run scans,
//! manage the f-cache, emit machine-readable reports.
//!
//! Exit codes: 0 success; 1 a requested expectation was violated (or a
//! cache entry failed verification); 2 usage error; 3 resource-guard
//! rejection.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use relprime::report::{
    render_bounds, render_chain_scan, render_decomposition, render_delta_scan,
    render_reduced_scan, render_threshold_scan, render_value,
};
use relprime::{
    f_brute_with_guard, f_lower, f_upper, g_blocked, g_brute_with_guard, g_decompose, scan_chain,
    scan_delta, scan_reduced, scan_threshold_case, threshold_catalog, Error, FCache, Format,
    GClass, ReducedInequality, Sign, ThresholdCase, ThresholdScan,
};

const ORACLE_HARD_CAP: u64 = 63;

#[derive(Parser)]
#[command(
    name = "relprime",
    version,
    about = "Exact counts of relatively prime subsets: f(n), g(n), bounds, and inequality scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,

    /// Cache file for f values; loaded when it exists, written by `cache build`.
    #[arg(
        long,
        global = true,
        env = "RELPRIME_CACHE",
        default_value = "relprime-fcache.txt"
    )]
    cache: PathBuf,

    /// Recompute every cache line on load and fail on any mismatch.
    #[arg(long, global = true)]
    verify_cache: bool,

    /// Worker threads for scans (0 = auto). Never changes emitted values.
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,

    /// Print only the summary of a scan.
    #[arg(long, global = true)]
    summary: bool,

    /// Override the subset-enumeration resource guard (hard cap 63).
    #[arg(long, global = true)]
    force: bool,

    /// Expectation to check after a scan; any violation exits with code 1.
    #[arg(long, global = true, value_enum)]
    expect: Vec<ExpectArg>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum FormatArg {
    Plain,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ExpectArg {
    /// Every scanned delta must be strictly positive.
    AllPositive,
    /// Deltas must be positive at odd n and negative at even n.
    Alternating,
    /// Every scanned row must hold.
    AllHold,
}

impl ExpectArg {
    fn as_str(self) -> &'static str {
        match self {
            ExpectArg::AllPositive => "all-positive",
            ExpectArg::Alternating => "alternating",
            ExpectArg::AllHold => "all-hold",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute f(n), g(n), or the sandwich bounds around f(n).
    Compute {
        #[arg(value_enum)]
        what: ComputeWhat,
        n: u64,
    },
    /// Recount f(n) or g(n) by exhaustive subset enumeration.
    Oracle {
        #[arg(value_enum)]
        what: OracleWhat,
        n: u64,
    },
    /// Run a scan; one report line per index, then a summary.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Split g of a residue class into leading terms and exact tail.
    Decompose {
        /// Residue class: 6n-4, 6n-2 or 6n.
        #[arg(long)]
        class: String,
        /// Class parameter (n >= 2).
        #[arg(long)]
        n: u64,
    },
    /// Build or verify the persistent f-value cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(ValueEnum, Clone, Copy)]
enum ComputeWhat {
    F,
    G,
    Bounds,
}

#[derive(ValueEnum, Clone, Copy)]
enum OracleWhat {
    F,
    G,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Sign of f(n)^2 - f(n-k)*f(n+k) over a range of n.
    Delta {
        /// Gap k >= 1.
        #[arg(long)]
        k: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// The mod-6 ratio chain for g over n = 1..=horizon.
    Chain {
        /// Horizon; the largest g argument touched is 6*to+4.
        #[arg(long, default_value_t = 80)]
        to: u64,
    },
    /// A reduced dominant-term inequality (R1, R2 or R3).
    Reduced {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 100)]
        to: u64,
    },
    /// The exact power-of-two threshold catalog.
    Thresholds {
        /// Restrict to one case (T2, T3, T5..T9); default runs the catalog.
        #[arg(long)]
        case: Option<String>,
        /// Gap for case T9.
        #[arg(long)]
        k: Option<u64>,
        /// Start index; defaults to the case's claimed validity start.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, default_value_t = 500)]
        to: u64,
    },
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Compute and persist f(1..=n).
    Build {
        #[arg(long)]
        to: u64,
    },
    /// Recompute every stored entry and compare (sieve sized to --to or
    /// the largest entry, whichever is greater).
    Verify {
        #[arg(long)]
        to: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if cli.parallelism > 0 {
        // Affects wall time only; report assembly is index-ordered.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallelism)
            .build_global();
    }

    match run(&cli) {
        Ok(Outcome { output, violations }) => {
            print!("{output}");
            if violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                for v in violations {
                    eprintln!("expectation {v} violated");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceGuard { .. } => ExitCode::from(3),
                Error::CacheMismatch { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

struct Outcome {
    output: String,
    /// Descriptions of violated expectations, e.g. "all-positive at n=[3]".
    violations: Vec<String>,
}

impl Outcome {
    fn clean(output: String) -> Self {
        Self {
            output,
            violations: Vec::new(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Open the cache sized for `limit`, warm-started from the cache file when
/// one exists at the configured path.
fn open_cache(cli: &Cli, limit: u64) -> Result<FCache, Error> {
    let limit = limit.max(1);
    if cli.cache.exists() {
        FCache::load(&cli.cache, limit, cli.verify_cache)
    } else {
        FCache::new(limit)
    }
}

fn check_expectations_unused(cli: &Cli) -> Result<(), Error> {
    if cli.expect.is_empty() {
        Ok(())
    } else {
        Err(usage("--expect applies to scan subcommands only"))
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let format: Format = cli.format.into();
    match &cli.command {
        Command::Compute { what, n } => {
            check_expectations_unused(cli)?;
            let n = *n;
            match what {
                ComputeWhat::F => {
                    let cache = open_cache(cli, n)?;
                    let value = cache.f(n)?;
                    Ok(Outcome::clean(render_value("f", n, &value, format)))
                }
                ComputeWhat::G => {
                    let cache = open_cache(cli, n / 2)?;
                    let value = g_blocked(n, &cache)?;
                    Ok(Outcome::clean(render_value("g", n, &value, format)))
                }
                ComputeWhat::Bounds => {
                    let cache = open_cache(cli, n)?;
                    let f = cache.f(n)?;
                    Ok(Outcome::clean(render_bounds(
                        n,
                        &f_lower(n),
                        &f,
                        &f_upper(n),
                        format,
                    )))
                }
            }
        }
        Command::Oracle { what, n } => {
            check_expectations_unused(cli)?;
            let guard = if cli.force {
                ORACLE_HARD_CAP
            } else {
                relprime::DEFAULT_GUARD
            };
            let (op, count) = match what {
                OracleWhat::F => ("oracle-f", f_brute_with_guard(*n, guard)?),
                OracleWhat::G => ("oracle-g", g_brute_with_guard(*n, guard)?),
            };
            Ok(Outcome::clean(render_value(
                op,
                *n,
                &BigInt::from(count),
                format,
            )))
        }
        Command::Scan(scan) => run_scan(cli, scan, format),
        Command::Decompose { class, n } => {
            check_expectations_unused(cli)?;
            let class: GClass = class.parse()?;
            let cache = open_cache(cli, 3 * *n)?;
            let report = g_decompose(*n, class, &cache)?;
            Ok(Outcome::clean(render_decomposition(&report, format)))
        }
        Command::Cache(cmd) => {
            check_expectations_unused(cli)?;
            match cmd {
                CacheCommand::Build { to } => {
                    let cache = open_cache(cli, *to)?;
                    cache.warm_to(*to)?;
                    cache.save(&cli.cache)?;
                    Ok(Outcome::clean(format!(
                        "wrote {} entries to {} (sieve limit {})\n",
                        cache.len(),
                        cli.cache.display(),
                        cache.sieve_limit()
                    )))
                }
                CacheCommand::Verify { to } => {
                    let cache = FCache::load(&cli.cache, *to, true)?;
                    Ok(Outcome::clean(format!(
                        "verified {} entries in {}: OK\n",
                        cache.len(),
                        cli.cache.display()
                    )))
                }
            }
        }
    }
}

fn expect_only_all_hold(cli: &Cli, scan_name: &str) -> Result<bool, Error> {
    let mut check = false;
    for e in &cli.expect {
        match e {
            ExpectArg::AllHold => check = true,
            other => {
                return Err(usage(format!(
                    "--expect {} does not apply to scan {scan_name}",
                    other.as_str()
                )))
            }
        }
    }
    Ok(check)
}

fn run_scan(cli: &Cli, scan: &ScanCommand, format: Format) -> Result<Outcome, Error> {
    match scan {
        ScanCommand::Delta { k, from, to } => {
            let cache = open_cache(cli, to.saturating_add(*k))?;
            let result = scan_delta(*k, *from, *to, &cache)?;
            let mut violations = Vec::new();
            for e in &cli.expect {
                match e {
                    ExpectArg::AllPositive => {
                        let bad: Vec<u64> = result
                            .reports
                            .iter()
                            .filter(|r| r.sign != Sign::Pos)
                            .map(|r| r.n)
                            .collect();
                        if !bad.is_empty() {
                            violations.push(format!("all-positive at n={bad:?}"));
                        }
                    }
                    ExpectArg::Alternating => {
                        let bad: Vec<u64> = result
                            .reports
                            .iter()
                            .filter(|r| {
                                let expected =
                                    if r.n % 2 == 1 { Sign::Pos } else { Sign::Neg };
                                r.sign != expected
                            })
                            .map(|r| r.n)
                            .collect();
                        if !bad.is_empty() {
                            violations.push(format!("alternating at n={bad:?}"));
                        }
                    }
                    ExpectArg::AllHold => {
                        return Err(usage("--expect all-hold does not apply to scan delta"))
                    }
                }
            }
            Ok(Outcome {
                output: render_delta_scan(&result, format, cli.summary),
                violations,
            })
        }
        ScanCommand::Chain { to } => {
            let check = expect_only_all_hold(cli, "chain")?;
            let cache = open_cache(cli, 3 * to + 2)?;
            let result = scan_chain(*to, &cache)?;
            let mut violations = Vec::new();
            if check {
                let bad: Vec<u64> = result
                    .reports
                    .iter()
                    .filter(|r| !r.chain_holds)
                    .map(|r| r.n)
                    .collect();
                if !bad.is_empty() {
                    violations.push(format!("all-hold at n={bad:?}"));
                }
            }
            Ok(Outcome {
                output: render_chain_scan(&result, format, cli.summary),
                violations,
            })
        }
        ScanCommand::Reduced { which, from, to } => {
            let check = expect_only_all_hold(cli, "reduced")?;
            let which: ReducedInequality = which.parse()?;
            let cache = open_cache(cli, 3 * to + 2)?;
            let result = scan_reduced(which, *from, *to, &cache)?;
            let mut violations = Vec::new();
            if check && !result.violations.is_empty() {
                violations.push(format!("all-hold at n={:?}", result.violations));
            }
            Ok(Outcome {
                output: render_reduced_scan(&result, format, cli.summary),
                violations,
            })
        }
        ScanCommand::Thresholds { case, k, from, to } => {
            let check = expect_only_all_hold(cli, "thresholds")?;
            let result: ThresholdScan = match case {
                Some(case) => {
                    let case: ThresholdCase = case.parse()?;
                    let from = match from {
                        Some(from) => *from,
                        None => case.claimed_from(*k)?,
                    };
                    ThresholdScan::from_rows(scan_threshold_case(case, *k, from, *to)?)
                }
                None => {
                    if from.is_some() {
                        return Err(usage("--from requires --case for scan thresholds"));
                    }
                    if k.is_some() {
                        return Err(usage("--k requires --case T9 for scan thresholds"));
                    }
                    threshold_catalog(*to)?
                }
            };
            let mut violations = Vec::new();
            if check && !result.all_hold {
                let bad: Vec<String> = result
                    .violations
                    .iter()
                    .map(|r| format!("{}@{}", r.case, r.n))
                    .collect();
                violations.push(format!("all-hold at {bad:?}"));
            }
            Ok(Outcome {
                output: render_threshold_scan(&result, format, cli.summary),
                violations,
            })
        }
    }
}
