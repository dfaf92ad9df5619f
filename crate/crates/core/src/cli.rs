//! Command-line front end. The `symprod` binary forwards to [`run`].
//!
//! Exit codes: 0 success, 1 invariant violation, 2 input error,
//! 3 undersampled loop.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagonal::{boundary_class, equality_partition};
use crate::error::Error;
use crate::field_file::{FieldFile, FieldTuples};
use crate::lemmas::{run_suite, SuiteConfig};
use crate::metric::{Engine, UnorderedTuple};
use crate::monodromy::{roots_loop_generator, track_loop};
use crate::perm::BRUTE_FORCE_CAP;
use crate::selection::{canonicalize, continuity_report_with, lift_field};
use crate::tuple::RealTuple;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDERSAMPLED: i32 = 3;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "SYMPROD_SEED";

/// Allowed deviation of the lift's continuity ratio from 1.
pub const LIFT_RATIO_TOLERANCE: f64 = 1e-6;

/// Largest `n` the bench runs the assignment engine for.
pub const BENCH_ASSIGNMENT_MAX_N: usize = 2000;

#[derive(Parser, Debug)]
#[command(name = "symprod", version, about = "Distances, sorting lifts and loop holonomy for unordered tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matching distance between two unordered tuples.
    Dist(DistArgs),
    /// Sorted representative of an unordered tuple.
    Canon(CanonArgs),
    /// Lift a sampled real field by sorting and report its continuity ratio.
    Lift(LiftArgs),
    /// Track a loop of unordered tuples and report the holonomy.
    Holonomy(HolonomyArgs),
    /// Run the diagonal-set property suite.
    Lemmas(LemmasArgs),
    /// Time the distance engines and cross-check them.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct DistArgs {
    /// First tuple, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Second tuple, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Field file whose first two samples are compared.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    file: Option<PathBuf>,
    #[arg(long, default_value = "sorted")]
    engine: Engine,
}

#[derive(Args, Debug)]
struct CanonArgs {
    /// Tuple, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Tolerance for grouping equal components.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args, Debug)]
struct LiftArgs {
    /// JSON-lines or CSV field file.
    #[arg(long)]
    input: PathBuf,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Engine computing the quotient distance in the continuity report.
    #[arg(long, default_value = "assignment")]
    engine: Engine,
}

#[derive(Args, Debug)]
struct HolonomyArgs {
    /// Root order: track the k-th roots of radius·e^{iθ}.
    #[arg(long, conflicts_with = "input")]
    k: Option<usize>,
    #[arg(long, default_value_t = 256)]
    steps: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Loop file (JSON lines, samples in loop order).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LemmasArgs {
    /// Tuple sizes, `lo..hi` (inclusive) or a single value.
    #[arg(long, default_value = "2..6")]
    n: String,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma separated tuple sizes.
    #[arg(long, default_value = "7,500,100000")]
    n: String,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undersampled { .. } | Error::TooFewSteps { .. } => EXIT_UNDERSAMPLED,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::input(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Dist(a) => cmd_dist(a, out),
        Command::Canon(a) => cmd_canon(a, out),
        Command::Lift(a) => cmd_lift(a, out, err),
        Command::Holonomy(a) => cmd_holonomy(a, out),
        Command::Lemmas(a) => cmd_lemmas(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Rounds to 12 significant digits and prints the shortest form.
pub fn human(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{rounded}")
}

fn parse_tuple(s: &str) -> std::result::Result<RealTuple, Failure> {
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::input(format!("invalid number '{}' in '{s}'", t.trim())))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(RealTuple::new(values)?)
}

fn format_tuple(x: &RealTuple) -> String {
    let parts: Vec<String> = x.as_slice().iter().map(|&v| human(v)).collect();
    format!("[{}]", parts.join(", "))
}

fn seed_or_env(seed: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn cmd_dist(args: DistArgs, out: &mut dyn Write) -> CmdResult {
    let (a, b) = match (&args.file, &args.a, &args.b) {
        (Some(path), _, _) => {
            let file = FieldFile::read(path)?;
            match file.tuples {
                FieldTuples::Real(t) if t.len() >= 2 => (t[0].clone(), t[1].clone()),
                FieldTuples::Real(_) => {
                    return Err(Failure::input("field file needs at least two samples"))
                }
                FieldTuples::Complex(_) => {
                    return Err(Failure::input("dist accepts real tuples only"))
                }
            }
        }
        (None, Some(a), Some(b)) => (parse_tuple(a)?, parse_tuple(b)?),
        _ => return Err(Failure::input("give --a and --b, or --file")),
    };
    let d = args.engine.distance(&a, &b)?;
    writeln!(out, "distance: {}", human(d.value))?;
    writeln!(out, "engine: {}", args.engine)?;
    writeln!(out, "permutation: {:?}", d.attaining_perm.as_slice())?;
    Ok(EXIT_OK)
}

fn cmd_canon(args: CanonArgs, out: &mut dyn Write) -> CmdResult {
    let x = parse_tuple(&args.a)?;
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(Failure::input("--tol must be non-negative"));
    }
    let canonical = canonicalize(&UnorderedTuple::new(x.clone()));
    writeln!(out, "canonical: {}", format_tuple(&canonical))?;
    writeln!(out, "input position: {}", boundary_class(&x))?;
    writeln!(out, "canonical position: {}", boundary_class(&canonical))?;
    writeln!(
        out,
        "equal blocks (tol {}): {}",
        args.tol,
        equality_partition(&x, args.tol)
    )?;
    Ok(EXIT_OK)
}

fn cmd_lift(args: LiftArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let file = FieldFile::read(&args.input)?;
    if file.tuples.is_complex() {
        return Err(Failure::input(
            "complex tuples have no continuous sorted lift; run `symprod holonomy --input` on this file instead",
        ));
    }
    let phi = file.to_sampled_field()?;
    let lifted = lift_field(&phi);
    let report = continuity_report_with(&lifted, &phi, args.engine)?;
    let text = FieldFile::from_lifted(&lifted, file.adjacency.clone()).to_jsonl();
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    writeln!(err, "max_ratio: {}", human(report.max_ratio))?;
    match report.worst_edge {
        Some((a, b)) => writeln!(err, "worst_edge: ({a}, {b})")?,
        None => writeln!(err, "worst_edge: none")?,
    }
    writeln!(
        err,
        "edges: {} (equal-class: {})",
        report.edges_checked, report.equal_class_edges
    )?;
    if (report.max_ratio - 1.0).abs() > LIFT_RATIO_TOLERANCE {
        writeln!(err, "error: lift is not an isometry on this field")?;
        return Ok(EXIT_INVARIANT);
    }
    Ok(EXIT_OK)
}

fn cmd_holonomy(args: HolonomyArgs, out: &mut dyn Write) -> CmdResult {
    let path = match (&args.input, args.k) {
        (Some(p), _) => FieldFile::read(p)?.to_loop()?,
        (None, Some(k)) => roots_loop_generator(k, args.steps, args.radius)?,
        (None, None) => return Err(Failure::input("give --k or --input")),
    };
    let h = track_loop(&path)?;
    writeln!(out, "holonomy: {}", h.permutation.cycle_notation())?;
    writeln!(out, "cycle type: {}", h.class_label())?;
    writeln!(out, "total cost: {}", human(h.total_path_cost))?;
    writeln!(out, "steps: {}", path.step_count())?;
    Ok(EXIT_OK)
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::input(format!("invalid n range '{s}' (expected lo..hi or a single n)"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((parse(lo)?, parse(hi)?))
        }
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn cmd_lemmas(args: LemmasArgs, out: &mut dyn Write) -> CmdResult {
    let (lo, hi) = parse_range(&args.n)?;
    let seed = seed_or_env(args.seed)?;
    let mut config = SuiteConfig::new(lo, hi, args.trials, seed)?;
    config.inject_fault = args.inject_fault;
    let report = run_suite(&config)?;
    write!(out, "{report}")?;
    let passed = report.all_passed();
    writeln!(
        out,
        "seed {seed}: {}",
        if passed { "all checks passed" } else { "FAILURES" }
    )?;
    Ok(if passed { EXIT_OK } else { EXIT_INVARIANT })
}

fn median_seconds(reps: usize, mut f: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write) -> CmdResult {
    if args.reps == 0 {
        return Err(Failure::input("--reps must be positive"));
    }
    let sizes = args
        .n
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::input(format!("invalid size list '{}'", args.n)))?;
    if sizes.contains(&0) {
        return Err(Failure::input("sizes must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_or_env(args.seed)?);
    let mut all_agree = true;
    writeln!(out, "{:>8} {:>11} {:>14} {:>18}  check", "n", "engine", "median_ms", "distance")?;
    for n in sizes {
        let mut sample = || -> RealTuple {
            RealTuple::new((0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()).expect("finite")
        };
        let (y, z) = (sample(), sample());
        let mut values = Vec::new();
        for engine in Engine::ALL {
            let runs = match engine {
                Engine::Brute => n <= BRUTE_FORCE_CAP,
                Engine::Sorted => true,
                Engine::Assignment => n <= BENCH_ASSIGNMENT_MAX_N,
            };
            if !runs {
                writeln!(out, "{n:>8} {:>11} {:>14} {:>18}  skipped", engine.name(), "-", "-")?;
                continue;
            }
            let mut value = 0.0;
            let secs = median_seconds(args.reps, || {
                value = engine.distance(&y, &z).expect("equal lengths").value;
            });
            values.push((engine, value));
            writeln!(
                out,
                "{n:>8} {:>11} {:>14.3} {:>18}",
                engine.name(),
                secs * 1e3,
                human(value)
            )?;
        }
        let reference = values
            .iter()
            .find(|(e, _)| *e == Engine::Brute)
            .or_else(|| values.iter().find(|(e, _)| *e == Engine::Sorted))
            .map(|&(_, v)| v)
            .expect("sorted always runs");
        let tol = if n <= BRUTE_FORCE_CAP { 1e-9 } else { 1e-9 * reference.abs().max(1.0) };
        let agree = values.iter().all(|&(_, v)| (v - reference).abs() <= tol);
        all_agree &= agree;
        writeln!(
            out,
            "{n:>8} {:>11} {:>14} {:>18}  {}",
            "cross-check",
            "-",
            "-",
            if agree { "agree" } else { "DISAGREE" }
        )?;
    }
    Ok(if all_agree { EXIT_OK } else { EXIT_INVARIANT })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_formatting() {
        assert_eq!(human(3.0), "3");
        assert_eq!(human(0.1 + 0.2), "0.3");
        assert_eq!(human(1.0 / 3.0), "0.333333333333");
        assert_eq!(human(2.0), "2");
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("2..6").ok(), Some((2, 6)));
        assert_eq!(parse_range("2..=5").ok(), Some((2, 5)));
        assert_eq!(parse_range("4").ok(), Some((4, 4)));
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!(parse_tuple("1, -5,2.5").ok().unwrap().as_slice(), &[1.0, -5.0, 2.5]);
        assert!(parse_tuple("1,,2").is_err());
        assert!(parse_tuple("nan").is_err());
    }
}
