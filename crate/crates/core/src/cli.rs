//! The `latin-census` command line.
//!
//! Exit status: 0 on success, 2 when a verification report contains a FAIL
//! line, 1 on usage or runtime errors.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use thiserror::Error;

use crate::bipartite::{EdgeRule, FactorizationMemo, GraphError};
use crate::census::{two_regular_class_count, Census, CensusError, Checkpoint};
use crate::format::{number, OutputFormat};
use crate::latin::{count_reduced, LatinError};
use crate::number_theory::{self as nt, NumberTheoryError, Report};
use crate::permanent::{latin_count_via_permanents, MonicPolynomial, PermanentError};
use crate::symmetry::{bound_is_informative, bound_value, symmetry_census};

pub const DEFAULT_SEED: u64 = 0x5eed_1a71;
/// Environment variable naming the memo cache file when `--memo-cache` is absent.
pub const CACHE_ENV: &str = "LATIN_CENSUS_CACHE";
/// Largest `--max-n` accepted by `reproduce-tables`.
pub const MAX_REPRODUCE_N: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Permanent(#[from] PermanentError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "latin-census", version, about = "Exact counts of Latin rectangles and squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EdgeRuleArg {
    /// First edge of the canonical representative.
    Canonical,
    /// Pseudo-random edge derived from --seed.
    Seeded,
}

#[derive(Args, Debug)]
struct Options {
    /// Worker threads [default: one per core]
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    /// Memo cache file, loaded before and saved during census runs
    #[arg(long, global = true, value_name = "PATH")]
    memo_cache: Option<PathBuf>,
    /// Save the memo cache after every COUNT graph classes (0: only at the end)
    #[arg(long, global = true, value_name = "COUNT", default_value_t = 0)]
    checkpoint_every: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Seed for randomized choices
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Edge the 1-factorization recursion branches on
    #[arg(long, global = true, value_enum, default_value_t = EdgeRuleArg::Canonical)]
    edge_rule: EdgeRuleArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of reduced k x n Latin rectangles
    CountRectangles {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Number of reduced Latin squares of order n
    CountSquares {
        #[arg(long)]
        n: usize,
        /// Degree of the graph classes summed over [default: n/2]
        #[arg(long)]
        via_k: Option<usize>,
    },
    /// Minimum and maximum numbers of 1-factorizations over the k-regular classes
    CensusExtremal {
        #[arg(long)]
        n: usize,
        /// A single degree [default: every 2 <= k <= n-2]
        #[arg(long)]
        k: Option<usize>,
    },
    /// One representative per isomorphism class of k-regular bipartite graphs
    EnumerateGraphs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Number of Latin squares of order n from signed permanents
    PermanentCount {
        #[arg(long)]
        n: usize,
        /// Lower coefficients c0,c1,...,c(n-1) of the monic polynomial [default: z^n]
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        poly: Option<Vec<i64>>,
    },
    /// Consistency checks of the published constants
    VerifyPublished,
    /// Prime factorization of a value, or of the published R_n with --n
    Factorize {
        #[arg(required_unless_present = "n")]
        value: Option<String>,
        #[arg(long, conflicts_with = "value")]
        n: Option<usize>,
    },
    /// Factorial divisors of R_n, checked against the published value when known
    Divisors {
        #[arg(long)]
        n: usize,
    },
    /// Proportion of squares of order n with a non-trivial autoparatopism group
    SymmetryCensus {
        #[arg(long)]
        n: usize,
    },
    /// Recompute the published tables up to order --max-n and report differences
    ReproduceTables {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

enum Outcome {
    Ok,
    Failed,
}

struct Context {
    format: OutputFormat,
    census: Census,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                1
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.options.workers {
        builder = builder.num_threads(w as usize);
    }
    let result = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
        .and_then(|pool| pool.install(|| execute(&cli, out)));
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn cache_path(options: &Options) -> Option<PathBuf> {
    options.memo_cache.clone().or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn open_census(options: &Options) -> Result<Census> {
    let memo = Arc::new(FactorizationMemo::new());
    let rule = match options.edge_rule {
        EdgeRuleArg::Canonical => EdgeRule::Canonical,
        EdgeRuleArg::Seeded => EdgeRule::Seeded(options.seed),
    };
    let Some(path) = cache_path(options) else {
        return Ok(Census::new(memo).with_rule(rule));
    };
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        return Err(CliError::Usage(format!("memo cache directory {} does not exist", parent.display())));
    }
    if path.exists() {
        memo.load(BufReader::new(fs::File::open(&path)?))?;
    }
    Ok(Census::new(memo).with_rule(rule).with_checkpoint(Checkpoint { path, every: options.checkpoint_every }))
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<Outcome> {
    let format = match cli.options.format {
        FormatArg::Human => OutputFormat::Human,
        FormatArg::Machine => OutputFormat::Machine,
    };
    let ctx = Context { format, census: open_census(&cli.options)? };
    match &cli.command {
        Command::CountRectangles { k, n } => {
            writeln!(out, "{}", number(&ctx.census.reduced_rectangles(*k, *n)?, format))?;
        }
        Command::CountSquares { n, via_k } => {
            writeln!(out, "{}", number(&ctx.census.reduced_squares(*n, *via_k)?, format))?;
        }
        Command::CensusExtremal { n, k } => census_extremal(&ctx, *n, *k, out)?,
        Command::EnumerateGraphs { k, n } => enumerate_graphs(&ctx, *k, *n, out)?,
        Command::PermanentCount { n, poly } => return permanent_count(&ctx, *n, poly.as_deref(), out),
        Command::VerifyPublished => return emit_report(&nt::verify_published(), out),
        Command::Factorize { value, n } => factorize(&ctx, value.as_deref(), *n, out)?,
        Command::Divisors { n } => return divisors(&ctx, *n, out),
        Command::SymmetryCensus { n } => symmetry(&ctx, *n, out)?,
        Command::ReproduceTables { max_n } => return reproduce_tables(&ctx, *max_n, out),
    }
    Ok(Outcome::Ok)
}

fn emit_report(report: &Report, out: &mut dyn Write) -> Result<Outcome> {
    write!(out, "{report}")?;
    Ok(if report.all_passed() { Outcome::Ok } else { Outcome::Failed })
}

fn census_extremal(ctx: &Context, n: usize, k: Option<usize>, out: &mut dyn Write) -> Result<()> {
    let degrees: Vec<usize> = match k {
        Some(k) => vec![k],
        None if n >= 4 => (2..=n - 2).collect(),
        None => return Err(CliError::Usage("census-extremal needs n >= 4".into())),
    };
    for k in degrees {
        let r = ctx.census.extremal_m(k, n)?;
        match ctx.format {
            OutputFormat::Machine => writeln!(out, "{}", r.machine_line())?,
            OutputFormat::Human => writeln!(
                out,
                "n = {n}  k = {k}  min m(B) = {} ({} of {} classes)  max m(B) = {} ({})  R = {}",
                number(&r.min_m, ctx.format),
                r.min_count,
                r.class_count,
                number(&r.max_m, ctx.format),
                if r.max_count == 1 { "unique".to_string() } else { format!("{} classes", r.max_count) },
                number(&r.reduced_count, ctx.format),
            )?,
        }
    }
    Ok(())
}

fn enumerate_graphs(ctx: &Context, k: usize, n: usize, out: &mut dyn Write) -> Result<()> {
    let stream = crate::census::enumerate_graphs(k, n)?;
    let total = stream.len();
    for (i, class) in stream.enumerate() {
        match ctx.format {
            OutputFormat::Machine => writeln!(out, "CLASS {} {}", class.key.to_hex(), class.aut_order)?,
            OutputFormat::Human => {
                writeln!(out, "class {}  |Aut(B)| = {}", i + 1, number(&class.aut_order, ctx.format))?;
                write!(out, "{}", crate::bipartite::write_graph(&class.graph()))?;
            }
        }
    }
    match ctx.format {
        OutputFormat::Machine => writeln!(out, "CLASSES {n} {k} {total}")?,
        OutputFormat::Human => writeln!(out, "{total} classes")?,
    }
    Ok(())
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

fn permanent_count(ctx: &Context, n: usize, poly: Option<&[i64]>, out: &mut dyn Write) -> Result<Outcome> {
    let p = match poly {
        Some(c) => MonicPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())?,
        None => MonicPolynomial::power(n)?,
    };
    let l = latin_count_via_permanents(n, &p)?;
    writeln!(out, "{}", number(&l, ctx.format))?;
    let mut report = Report::default();
    if let Some(r) = nt::published_squares(n) {
        let expected = factorial(n) * factorial(n.saturating_sub(1)) * r;
        report.checks.push(nt::Check {
            id: format!("permanent-n{n}"),
            passed: l == expected,
            detail: format!("p(z) = {p}: {l} vs n!(n-1)!R_n = {expected}"),
        });
    }
    emit_report(&report, out)
}

fn factorize(ctx: &Context, value: Option<&str>, n: Option<usize>, out: &mut dyn Write) -> Result<()> {
    let v = match (value, n) {
        (_, Some(n)) => nt::published_squares(n).ok_or(NumberTheoryError::MissingConstant(n))?,
        (Some(s), None) => {
            let digits: String = s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(CliError::Usage(format!("not a decimal value: {s:?}")));
            }
            digits.parse().expect("validated digits")
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let f = nt::factorize(&v)?;
    writeln!(out, "{} = {f}", number(&v, ctx.format))?;
    Ok(())
}

fn divisors(ctx: &Context, n: usize, out: &mut dyn Write) -> Result<Outcome> {
    if n < 2 {
        return Err(CliError::Usage("divisors needs n >= 2".into()));
    }
    let half = nt::predicted_divisor(n).map(|d| number(&d, ctx.format)).unwrap_or_else(|e| e.to_string());
    let corollary = nt::corollary_divisor(n);
    writeln!(out, "half-order divisor of R_{n}: {half}")?;
    writeln!(out, "factorial divisor of R_{n}: {}", number(&corollary, ctx.format))?;
    match nt::published_squares(n) {
        Some(r) => emit_report(&nt::check_divisibility(n, &r), out),
        None => Ok(Outcome::Ok),
    }
}

fn symmetry(ctx: &Context, n: usize, out: &mut dyn Write) -> Result<()> {
    let c = symmetry_census(n)?;
    match ctx.format {
        OutputFormat::Machine => writeln!(out, "{}", c.machine_line())?,
        OutputFormat::Human => {
            writeln!(out, "order {n}: {} of {} reduced squares have symmetry", c.nontrivial_reduced, c.total_reduced)?;
            writeln!(out, "proportion {}/{}", c.proportion.numer(), c.proportion.denom())?;
            if n >= 2 {
                let b = bound_value(n);
                let note = if bound_is_informative(n) { "" } else { " (exceeds 1)" };
                writeln!(out, "bound {}/{}{note}", b.numer(), b.denom())?;
            }
        }
    }
    Ok(())
}

fn reproduce_tables(ctx: &Context, max_n: usize, out: &mut dyn Write) -> Result<Outcome> {
    if !(1..=MAX_REPRODUCE_N).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must be in 1..={MAX_REPRODUCE_N}")));
    }
    let mut report = Report::default();
    let mut check = |id: String, passed: bool, detail: String| report.checks.push(nt::Check { id, passed, detail });
    let brute_n = max_n.min(6);

    for n in 1..=max_n {
        for k in 1..=n {
            let got = ctx.census.reduced_rectangles(k, n)?;
            let want = nt::published_reduced(k, n).expect("published for n <= 11");
            check(format!("rectangles-k{k}-n{n}"), got == want, format!("computed {got}, published {want}"));
        }
    }
    for n in 1..=brute_n {
        let want = nt::published_squares(n).expect("published");
        for k in 0..=n {
            let got = ctx.census.reduced_squares(n, Some(k))?;
            check(format!("squares-n{n}-via-k{k}"), got == want, format!("computed {got}, published {want}"));
        }
        for k in 1..=n {
            let brute = BigUint::from(count_reduced(k, n)?);
            let formula = ctx.census.reduced_rectangles(k, n)?;
            check(format!("brute-force-k{k}-n{n}"), brute == formula, format!("enumerated {brute}, formula {formula}"));
        }
    }
    for n in 4..=max_n {
        for k in 2..=n - 2 {
            let r = ctx.census.extremal_m(k, n)?;
            let (lo, count, hi) = nt::published_extremal(k, n).expect("published for n <= 11");
            let passed = r.min_m == lo && r.min_count == count && r.max_m == hi && r.max_count == 1;
            check(
                format!("extremal-k{k}-n{n}"),
                passed,
                format!(
                    "computed ({}, {}, {} x{}), published ({lo}, {count}, {hi})",
                    r.min_m, r.min_count, r.max_m, r.max_count
                ),
            );
        }
    }
    for n in 1..=max_n.min(4) {
        let l = latin_count_via_permanents(n, &MonicPolynomial::power(n)?)?;
        let want = factorial(n) * factorial(n - 1) * nt::published_squares(n).expect("published");
        check(format!("permanent-n{n}"), l == want, format!("computed {l}, expected {want}"));
    }
    for n in 2..=11 {
        let got = crate::census::enumerate_graphs(2, n)?.len();
        let want = two_regular_class_count(n);
        check(format!("two-regular-classes-n{n}"), got == want, format!("generated {got}, partitions {want}"));
    }
    for n in 2..=brute_n {
        let c = symmetry_census(n)?;
        let bound = bound_value(n);
        let ok = c.proportion <= num_rational::BigRational::one() && (!bound_is_informative(n) || c.proportion <= bound);
        let note = if bound_is_informative(n) { "" } else { ", bound exceeds 1" };
        check(
            format!("symmetry-n{n}"),
            ok,
            format!("{} of {} reduced squares{note}", c.nontrivial_reduced, c.total_reduced),
        );
    }
    report.checks.extend(nt::verify_published().checks);
    emit_report(&report, out)
}
