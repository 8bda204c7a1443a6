//! Command-line front end: every library operation behind a subcommand,
//! with pair-count caching, CSV and JSON emission, and verification suites.
//!
//! JSON output is the machine contract: floats carry 17 significant digits
//! (so values round-trip exactly), every run echoes its effective
//! configuration, and documents validate against `schemas/output.schema.json`.
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 capacity.

use crate::dirichlet::{self, TruncationPlan};
use crate::error::Error;
use crate::kernels::SievingKernel;
use crate::sieve::PrimeTable;
use crate::singular::{self, SingularConstants};
use crate::verify::{self, Suite};
use crate::zeros::{Cutoff, CutoffR, SeriesResult, ZeroSet};
use crate::zerosum;
use crate::Result;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Prime pair counts, singular series constants, sieving kernels, zeta zero
/// sums, and truncated Dirichlet series.
#[derive(Debug, Parser)]
#[command(name = "primepair", version, max_term_width = 100)]
pub struct Cli {
    /// Output format (default: csv for count, json elsewhere).
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputKind>,

    /// Worker threads for the double-sum loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory for pair-count cache records.
    #[arg(long, global = true, env = "PRIMEPAIR_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count prime pairs (p, p + 2r) with p <= x at checkpoint values of x.
    Count {
        /// Largest x (accepts scientific notation; default: last checkpoint).
        #[arg(long)]
        max_x: Option<String>,
        /// Comma-separated even gaps 2r (default: the 14 reference gaps).
        #[arg(long)]
        two_r: Option<String>,
        /// Comma-separated checkpoints (default: powers of ten up to max-x).
        #[arg(long)]
        checkpoints: Option<String>,
    },
    /// Run verification suites and report pass/fail per check.
    Verify {
        /// table1, constants, kernels, identity, zeros, or paircorr
        /// (default: all that the supplied inputs allow).
        #[arg(long)]
        suite: Option<String>,
        /// Zero ordinate table, required by the zeros and paircorr suites.
        #[arg(long)]
        zeros_file: Option<PathBuf>,
        /// Extend the count table to x = 10^8.
        #[arg(long)]
        full: bool,
    },
    /// Singular series constants, gap ratios, partial sums, expected counts.
    Constants {
        /// Comma-separated even gaps (default: the 14 reference gaps).
        #[arg(long)]
        two_r: Option<String>,
        /// Also report the partial sum S_m of the gap constants.
        #[arg(long)]
        sum_m: Option<u64>,
        /// Comma-separated x values for li2 and rounded expected pair counts.
        #[arg(long)]
        li2: Option<String>,
        /// Also report the kernel-weighted remainder R(lambda).
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value = "jackson")]
        kernel: String,
        /// Euler product truncation for the twin constant.
        #[arg(long, default_value = "1e7")]
        prime_limit: String,
    },
    /// Kernel evaluations: E, E_hat, moments, Mellin transform, decay check.
    Kernel {
        /// fejer or jackson.
        #[arg(long = "type", default_value = "jackson")]
        kind: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Evaluate the dilated weight E(nu / lambda).
        #[arg(long, allow_hyphen_values = true)]
        eval_e: Option<f64>,
        /// Evaluate the transform E_hat at this argument.
        #[arg(long, allow_hyphen_values = true)]
        eval_e_hat: Option<f64>,
        /// Evaluate the Mellin transform at "re,im".
        #[arg(long, allow_hyphen_values = true)]
        eval_mellin: Option<String>,
        /// Evaluate the dilation-free moment factor at "re,im".
        #[arg(long, allow_hyphen_values = true)]
        moment: Option<String>,
        /// Check Mellin decay along the vertical line Re z = x.
        #[arg(long, allow_hyphen_values = true)]
        decay_x: Option<f64>,
    },
    /// Sums over zeta zeros: single, double, banded, and boundary probes.
    Zerosum {
        /// sigma1, sigma2, sigma4, glambda, or omega.
        #[arg(long)]
        op: String,
        #[arg(long)]
        zeros_file: PathBuf,
        /// Evaluation point "re,im".
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value = "jackson")]
        kernel: String,
        /// Cutoff height R, nudged to sit between consecutive ordinates.
        #[arg(long)]
        cutoff: Option<f64>,
        /// Keep the first `count` ordinates instead of a height cutoff.
        #[arg(long)]
        count: Option<usize>,
        /// Comma-separated descending deltas for the omega probe.
        #[arg(long)]
        delta_grid: Option<String>,
    },
    /// Truncated Dirichlet series over prime pairs and their probes.
    Series {
        /// d2r, d0, tlambda, vlambda, odd, d0pole, or c2rprobe.
        #[arg(long)]
        op: String,
        /// Evaluation point "re,im".
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, default_value_t = 2)]
        two_r: u64,
        /// Term budget (accepts scientific notation).
        #[arg(long)]
        terms: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value = "jackson")]
        kernel: String,
        /// Sieve capacity for the pole probes (adaptive budgets cap here).
        #[arg(long, default_value = "1e6")]
        limit: String,
        /// Comma-separated deltas for the pole probes.
        #[arg(long)]
        delta_grid: Option<String>,
    },
    /// Pair correlation statistic of zero ordinates.
    Paircorr {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        zeros_file: PathBuf,
        /// Use the first `count` ordinates (T defaults to the last one).
        #[arg(long)]
        count: Option<usize>,
        /// Explicit T, within the table span.
        #[arg(long)]
        t: Option<f64>,
    },
}

/// Parses arguments, runs the command, prints the output, and returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        // a pool may already exist (tests, embedding); that is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(rendered) => {
            print!("{}", rendered.text);
            rendered.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Rendered {
    text: String,
    exit: i32,
}

/// One command's payload: the JSON result object plus a CSV rendering.
struct Output {
    command: &'static str,
    config: Value,
    result: Value,
    csv: String,
    exit: i32,
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let out = match &cli.command {
        Command::Count { max_x, two_r, checkpoints } => {
            cmd_count(cli, max_x.as_deref(), two_r.as_deref(), checkpoints.as_deref())?
        }
        Command::Verify { suite, zeros_file, full } => {
            cmd_verify(suite.as_deref(), zeros_file.as_deref(), *full)?
        }
        Command::Constants { two_r, sum_m, li2, lambda, kernel, prime_limit } => cmd_constants(
            two_r.as_deref(),
            *sum_m,
            li2.as_deref(),
            *lambda,
            kernel,
            prime_limit,
        )?,
        Command::Kernel { kind, lambda, eval_e, eval_e_hat, eval_mellin, moment, decay_x } => {
            cmd_kernel(
                kind,
                *lambda,
                *eval_e,
                *eval_e_hat,
                eval_mellin.as_deref(),
                moment.as_deref(),
                *decay_x,
            )?
        }
        Command::Zerosum { op, zeros_file, s, lambda, kernel, cutoff, count, delta_grid } => {
            cmd_zerosum(
                op,
                zeros_file,
                s.as_deref(),
                *lambda,
                kernel,
                *cutoff,
                *count,
                delta_grid.as_deref(),
            )?
        }
        Command::Series { op, s, two_r, terms, lambda, kernel, limit, delta_grid } => cmd_series(
            op,
            s.as_deref(),
            *two_r,
            terms.as_deref(),
            *lambda,
            kernel,
            limit,
            delta_grid.as_deref(),
        )?,
        Command::Paircorr { alpha, zeros_file, count, t } => {
            cmd_paircorr(*alpha, zeros_file, *count, *t)?
        }
    };

    let default_kind = match cli.command {
        Command::Count { .. } | Command::Verify { .. } => OutputKind::Csv,
        _ => OutputKind::Json,
    };
    let kind = cli.output.unwrap_or(default_kind);
    let mut config = out.config;
    {
        let map = config.as_object_mut().expect("config is an object");
        map.insert(
            "output".into(),
            json!(match kind {
                OutputKind::Csv => "csv",
                OutputKind::Json => "json",
            }),
        );
        map.insert("threads".into(), cli.threads.map_or(Value::Null, |n| json!(n)));
        map.insert(
            "cache_dir".into(),
            cli.cache_dir.as_ref().map_or(Value::Null, |p| json!(p.display().to_string())),
        );
    }
    let text = match kind {
        OutputKind::Json => to_json_string(&json!({
            "command": out.command,
            "config": config,
            "result": out.result,
        })),
        OutputKind::Csv => {
            let mut text = format!("# command: {}\n", out.command);
            let obj = config.as_object().expect("config is an object");
            for (key, value) in obj {
                let _ = writeln!(text, "# {key}: {}", scalar_text(value));
            }
            text.push_str(&out.csv);
            text
        }
    };
    Ok(Rendered { text, exit: out.exit })
}

/// Serializes with floats at 17 significant digits so every f64 round-trips.
fn to_json_string(value: &Value) -> String {
    struct Sci;
    impl serde_json::ser::Formatter for Sci {
        fn write_f64<W: std::io::Write + ?Sized>(
            &mut self,
            writer: &mut W,
            value: f64,
        ) -> std::io::Result<()> {
            write!(writer, "{value:.16e}")
        }
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sci);
    value.serialize(&mut ser).expect("in-memory serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("serialized json is utf8")
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => to_json_string(other).trim_end().to_string(),
    }
}

fn csv_quote(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

// flag parsers; all failures are configuration errors (exit 2)

fn parse_count(flag: &str, text: &str) -> Result<u64> {
    let bad = || Error::Config(format!("--{flag}: {text:?} is not a nonnegative integer"));
    if let Ok(n) = text.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = text.parse().map_err(|_| bad())?;
    if !(x.is_finite() && x >= 0.0 && x <= 2f64.powi(53) && x.fract() == 0.0) {
        return Err(bad());
    }
    Ok(x as u64)
}

fn parse_count_list(flag: &str, text: &str) -> Result<Vec<u64>> {
    text.split(',').map(|part| parse_count(flag, part.trim())).collect()
}

fn parse_f64_list(flag: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("--{flag}: {part:?} is not a number")))
        })
        .collect()
}

fn parse_point(flag: &str, text: &str) -> Result<Complex64> {
    let parts = parse_f64_list(flag, text)?;
    match parts[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(Error::Config(format!("--{flag}: expected \"re\" or \"re,im\", got {text:?}"))),
    }
}

fn parse_kernel(name: &str) -> Result<SievingKernel> {
    match name {
        "fejer" => Ok(SievingKernel::fejer()),
        "jackson" => Ok(SievingKernel::jackson()),
        other => Err(Error::Config(format!("--kernel: {other:?} is not fejer or jackson"))),
    }
}

fn require<T>(value: Option<T>, message: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(message.into()))
}

// count

fn cmd_count(
    cli: &Cli,
    max_x: Option<&str>,
    two_r: Option<&str>,
    checkpoints: Option<&str>,
) -> Result<Output> {
    let gaps = match two_r {
        Some(text) => parse_count_list("two-r", text)?,
        None => verify::TABLE_GAPS.to_vec(),
    };
    if gaps.is_empty() {
        return Err(Error::Config("--two-r: need at least one gap".into()));
    }
    let mut checkpoints = match checkpoints {
        Some(text) => parse_count_list("checkpoints", text)?,
        None => {
            let max = parse_count("max-x", require(max_x, "count needs --max-x or --checkpoints")?)?;
            let mut cps: Vec<u64> = (3u32..=12)
                .map(|k| 10u64.pow(k))
                .take_while(|&p| p <= max)
                .collect();
            if cps.last() != Some(&max) {
                cps.push(max);
            }
            cps
        }
    };
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let max_x = match max_x {
        Some(text) => parse_count("max-x", text)?,
        None => *checkpoints.last().unwrap(),
    };
    if *checkpoints.last().unwrap() > max_x {
        return Err(Error::Config(format!(
            "checkpoint {} exceeds --max-x {max_x}",
            checkpoints.last().unwrap()
        )));
    }

    let counts = cached_counts(cli.cache_dir.as_deref(), max_x, &gaps, &checkpoints)?;

    let constants = SingularConstants::new(10_000_000)?;
    let mut expected = Vec::with_capacity(checkpoints.len());
    for &x in &checkpoints {
        expected.push((2.0 * constants.c2() * singular::li2(x as f64)?).round() as u64);
    }

    let mut rows = Vec::new();
    let mut csv = String::from("two_r");
    for &x in &checkpoints {
        let _ = write!(csv, ",{x}");
    }
    csv.push('\n');
    for &gap in &gaps {
        let row: Vec<u64> = checkpoints.iter().map(|x| counts[&(gap, *x)]).collect();
        let _ = write!(csv, "{gap}");
        for c in &row {
            let _ = write!(csv, ",{c}");
        }
        csv.push('\n');
        rows.push(json!({ "two_r": gap, "counts": row }));
    }
    csv.push_str("expected");
    for e in &expected {
        let _ = write!(csv, ",{e}");
    }
    csv.push('\n');

    Ok(Output {
        command: "count",
        config: json!({
            "max_x": max_x,
            "two_r": gaps,
            "checkpoints": checkpoints,
        }),
        result: json!({
            "checkpoints": checkpoints,
            "rows": rows,
            "expected": expected,
        }),
        csv,
        exit: 0,
    })
}

/// Pair counts served from `cache_dir/pairs/<max_x>/<two_r>.csv` when
/// present; missing cells trigger one shared sieve and a cache rewrite.
fn cached_counts(
    cache_dir: Option<&Path>,
    max_x: u64,
    gaps: &[u64],
    checkpoints: &[u64],
) -> Result<BTreeMap<(u64, u64), u64>> {
    let dir = cache_dir.map(|d| d.join("pairs").join(max_x.to_string()));
    let mut per_gap: BTreeMap<u64, BTreeMap<u64, u64>> = BTreeMap::new();
    if let Some(dir) = &dir {
        for &gap in gaps {
            per_gap.insert(gap, read_cache_record(&dir.join(format!("{gap}.csv")))?);
        }
    }
    let missing = gaps.iter().any(|gap| {
        let cached = per_gap.get(gap);
        checkpoints.iter().any(|x| cached.is_none_or(|m| !m.contains_key(x)))
    });
    if missing {
        let limit = max_x + gaps.iter().max().unwrap();
        let table = PrimeTable::build(limit)?;
        let fresh = table.count_prime_pairs_batch(gaps, checkpoints)?;
        for (row, &gap) in fresh.iter().zip(gaps) {
            let entry = per_gap.entry(gap).or_default();
            for rec in row {
                entry.insert(rec.x, rec.count);
            }
        }
        if let Some(dir) = &dir {
            fs::create_dir_all(dir)?;
            for &gap in gaps {
                write_cache_record(&dir.join(format!("{gap}.csv")), &per_gap[&gap])?;
            }
        }
    }
    let mut flat = BTreeMap::new();
    for &gap in gaps {
        for &x in checkpoints {
            flat.insert((gap, x), per_gap[&gap][&x]);
        }
    }
    Ok(flat)
}

fn read_cache_record(path: &Path) -> Result<BTreeMap<u64, u64>> {
    let mut map = BTreeMap::new();
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(map),
        Err(e) => return Err(e.into()),
    };
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (x, count) = line.split_once(',').ok_or_else(|| {
            Error::Config(format!("cache record {}: malformed line {line:?}", path.display()))
        })?;
        let parse = |s: &str| {
            s.parse::<u64>().map_err(|_| {
                Error::Config(format!("cache record {}: malformed line {line:?}", path.display()))
            })
        };
        map.insert(parse(x)?, parse(count)?);
    }
    Ok(map)
}

fn write_cache_record(path: &Path, counts: &BTreeMap<u64, u64>) -> Result<()> {
    let mut body = String::new();
    for (x, count) in counts {
        let _ = writeln!(body, "{x},{count}");
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(body.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

// verify

fn cmd_verify(suite: Option<&str>, zeros_file: Option<&Path>, full: bool) -> Result<Output> {
    let zeros = zeros_file.map(ZeroSet::load).transpose()?;
    let requested: Vec<Suite> = match suite {
        Some(name) => vec![Suite::parse(name)?],
        None => verify::ALL_SUITES
            .iter()
            .copied()
            .filter(|s| zeros.is_some() || !s.needs_zeros())
            .collect(),
    };
    let skipped: Vec<&str> = verify::ALL_SUITES
        .iter()
        .filter(|s| !requested.contains(s))
        .map(|s| s.name())
        .collect();

    let mut suites = Vec::new();
    let mut csv = String::from("result,suite,check,measured,required\n");
    let mut all_passed = true;
    for &suite in &requested {
        let report = verify::run_suite(suite, zeros.as_ref(), full)?;
        all_passed &= report.passed();
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    if c.passed { "PASS" } else { "FAIL" },
                    report.suite,
                    csv_quote(c.name),
                    csv_quote(&c.measured),
                    csv_quote(&c.required),
                );
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "required": c.required,
                })
            })
            .collect();
        suites.push(json!({
            "suite": report.suite,
            "passed": report.passed(),
            "checks": checks,
        }));
    }
    for name in &skipped {
        let _ = writeln!(csv, "SKIP,{name},,,");
    }

    Ok(Output {
        command: "verify",
        config: json!({
            "suite": suite.map_or(Value::Null, |s| json!(s)),
            "zeros_file": zeros_file.map_or(Value::Null, |p| json!(p.display().to_string())),
            "full": full,
        }),
        result: json!({
            "suites": suites,
            "skipped": skipped,
            "passed": all_passed,
        }),
        csv,
        exit: if all_passed { 0 } else { 1 },
    })
}

// constants

fn cmd_constants(
    two_r: Option<&str>,
    sum_m: Option<u64>,
    li2: Option<&str>,
    lambda: Option<f64>,
    kernel: &str,
    prime_limit: &str,
) -> Result<Output> {
    let gaps = match two_r {
        Some(text) => parse_count_list("two-r", text)?,
        None => verify::TABLE_GAPS.to_vec(),
    };
    let prime_limit = parse_count("prime-limit", prime_limit)?;
    let constants = SingularConstants::new(prime_limit)?;

    let mut rows = Vec::new();
    let mut csv = format!("c2,{:.10}\n", constants.c2());
    csv.push_str("two_r,ratio,c_2r\n");
    for &gap in &gaps {
        if gap == 0 || gap % 2 != 0 {
            return Err(Error::Domain(format!("pair gap {gap} must be even and positive")));
        }
        let ratio = SingularConstants::ratio(gap / 2)?;
        let c = constants.c_2r(gap / 2)?;
        let _ = writeln!(csv, "{gap},{}/{},{:.10}", ratio.num, ratio.den, c);
        rows.push(json!({
            "two_r": gap,
            "ratio_num": ratio.num,
            "ratio_den": ratio.den,
            "c_2r": c,
        }));
    }
    let mut result = Map::new();
    result.insert("c2".into(), json!(constants.c2()));
    result.insert("rows".into(), json!(rows));

    if let Some(m) = sum_m {
        let s = constants.singular_sum(m)?;
        result.insert("singular_sum".into(), json!({ "m": m, "value": s }));
        let _ = writeln!(csv, "singular_sum_{m},{s:.10}");
    }
    if let Some(text) = li2 {
        let mut li_rows = Vec::new();
        for x in parse_f64_list("li2", text)? {
            let value = singular::li2(x)?;
            let expected = (2.0 * constants.c2() * value).round() as u64;
            let _ = writeln!(csv, "li2_{x},{value:.10},{expected}");
            li_rows.push(json!({ "x": x, "value": value, "expected_pairs": expected }));
        }
        result.insert("li2".into(), json!(li_rows));
    }
    if let Some(lambda) = lambda {
        let k = parse_kernel(kernel)?;
        let r = constants.remainder_r(lambda, &k)?;
        result.insert(
            "remainder".into(),
            json!({ "lambda": lambda, "kernel": k.name(), "value": r }),
        );
        let _ = writeln!(csv, "remainder_{lambda},{r:.10}");
    }

    Ok(Output {
        command: "constants",
        config: json!({
            "two_r": gaps,
            "sum_m": sum_m.map_or(Value::Null, |m| json!(m)),
            "li2": li2.map_or(Value::Null, |t| json!(t)),
            "lambda": lambda.map_or(Value::Null, |l| json!(l)),
            "kernel": kernel,
            "prime_limit": prime_limit,
        }),
        result: Value::Object(result),
        csv,
        exit: 0,
    })
}

// kernel

fn cmd_kernel(
    kind: &str,
    lambda: f64,
    eval_e: Option<f64>,
    eval_e_hat: Option<f64>,
    eval_mellin: Option<&str>,
    moment: Option<&str>,
    decay_x: Option<f64>,
) -> Result<Output> {
    let kernel = parse_kernel(kind)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Config(format!("--lambda must be positive, got {lambda}")));
    }
    let mut result = Map::new();
    result.insert("name".into(), json!(kernel.name()));
    result.insert("a_e".into(), json!(kernel.a_e()));
    result.insert("mellin_min_re".into(), json!(kernel.mellin_min_re()));
    result.insert("lambda".into(), json!(lambda));
    let mut csv = format!(
        "name,{}\na_e,{}\nmellin_min_re,{}\nlambda,{}\n",
        kernel.name(),
        kernel.a_e(),
        kernel.mellin_min_re(),
        lambda
    );

    if let Some(nu) = eval_e {
        let v = kernel.eval_e(nu / lambda);
        result.insert("e".into(), json!({ "nu": nu, "value": v }));
        let _ = writeln!(csv, "e({nu}),{v:.10e}");
    }
    if let Some(t) = eval_e_hat {
        let v = kernel.eval_e_hat(lambda, t);
        result.insert("e_hat".into(), json!({ "t": t, "value": v }));
        let _ = writeln!(csv, "e_hat({t}),{v:.10e}");
    }
    if let Some(text) = eval_mellin {
        let z = parse_point("eval-mellin", text)?;
        let v = kernel.mellin(lambda, z)?;
        result.insert(
            "mellin".into(),
            json!({
                "z": { "re": z.re, "im": z.im },
                "value": { "re": v.value.re, "im": v.value.im },
                "is_near_pole": v.is_near_pole,
            }),
        );
        let _ = writeln!(csv, "mellin({text}),{:.10e},{:.10e}", v.value.re, v.value.im);
    }
    if let Some(text) = moment {
        let z = parse_point("moment", text)?;
        let v = kernel.moment(z);
        result.insert(
            "moment".into(),
            json!({
                "z": { "re": z.re, "im": z.im },
                "value": { "re": v.re, "im": v.im },
            }),
        );
        let _ = writeln!(csv, "moment({text}),{:.10e},{:.10e}", v.re, v.im);
    }
    if let Some(x) = decay_x {
        let ys = [1.0, 3.16, 10.0, 31.6, 100.0, 316.0, 1000.0];
        let report = kernel.mellin_bound_check(lambda, x, &ys)?;
        let samples: Vec<Value> = report
            .samples
            .iter()
            .map(|s| json!({ "y": s.y, "modulus": s.modulus, "ratio": s.ratio }))
            .collect();
        result.insert(
            "decay".into(),
            json!({
                "exponent": report.exponent,
                "bounded": report.bounded,
                "samples": samples,
            }),
        );
        let _ = writeln!(csv, "decay_exponent,{}", report.exponent);
        let _ = writeln!(csv, "decay_bounded,{}", report.bounded);
        for s in &report.samples {
            let _ = writeln!(csv, "decay_sample,{},{:.6e},{:.6e}", s.y, s.modulus, s.ratio);
        }
    }

    Ok(Output {
        command: "kernel",
        config: json!({
            "type": kind,
            "lambda": lambda,
            "eval_e": eval_e.map_or(Value::Null, |v| json!(v)),
            "eval_e_hat": eval_e_hat.map_or(Value::Null, |v| json!(v)),
            "eval_mellin": eval_mellin.map_or(Value::Null, |t| json!(t)),
            "moment": moment.map_or(Value::Null, |t| json!(t)),
            "decay_x": decay_x.map_or(Value::Null, |v| json!(v)),
        }),
        result: Value::Object(result),
        csv,
        exit: 0,
    })
}

// zerosum

fn series_result_json(r: &SeriesResult) -> Value {
    let cutoff = match &r.cutoff {
        Cutoff::Height(c) => json!({
            "kind": "height",
            "value": c.value,
            "straddles": c.straddles,
            "below_first": c.below_first,
        }),
        Cutoff::Terms(n) => json!({ "kind": "terms", "count": n }),
    };
    json!({
        "value": { "re": r.value.re, "im": r.value.im },
        "terms_used": r.terms_used,
        "tail_estimate": r.tail_estimate,
        "cutoff": cutoff,
    })
}

fn series_result_csv(r: &SeriesResult) -> String {
    let mut csv = format!(
        "value_re,{:.10e}\nvalue_im,{:.10e}\nterms_used,{}\ntail_estimate,{:.10e}\n",
        r.value.re, r.value.im, r.terms_used, r.tail_estimate
    );
    match &r.cutoff {
        Cutoff::Height(c) => {
            let _ = writeln!(csv, "cutoff_height,{}", c.value);
        }
        Cutoff::Terms(n) => {
            let _ = writeln!(csv, "cutoff_terms,{n}");
        }
    }
    csv
}

#[allow(clippy::too_many_arguments)]
fn cmd_zerosum(
    op: &str,
    zeros_file: &Path,
    s: Option<&str>,
    lambda: f64,
    kernel_name: &str,
    cutoff: Option<f64>,
    count: Option<usize>,
    delta_grid: Option<&str>,
) -> Result<Output> {
    let kernel = parse_kernel(kernel_name)?;
    let zeros = ZeroSet::load(zeros_file)?;
    if cutoff.is_some() && count.is_some() {
        return Err(Error::Config("--cutoff and --count are mutually exclusive".into()));
    }
    let resolve_cutoff = |zeros: &ZeroSet| -> Result<CutoffR> {
        match (cutoff, count) {
            (Some(t), _) => zeros.choose_cutoff(t),
            (None, Some(n)) => zeros.cutoff_for_count(n),
            (None, None) => zeros.cutoff_for_count(1_000.min(zeros.len() - 1)),
        }
    };
    let parse_s = || -> Result<Complex64> {
        parse_point("s", require(s, "this op needs --s \"re,im\"")?)
    };

    let (result, csv) = match op {
        "sigma1" => {
            let r = resolve_cutoff(&zeros)?;
            let v = zerosum::sigma1(parse_s()?, lambda, &kernel, &zeros, &r)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "sigma2" => {
            let r = resolve_cutoff(&zeros)?;
            let v = zerosum::sigma2_square(parse_s()?, lambda, &kernel, &zeros, &r)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "sigma4" => {
            let z = match count {
                Some(n) => zeros.truncated(n)?,
                None => zeros.clone(),
            };
            let v = zerosum::sigma4(parse_s()?, lambda, &kernel, &z)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "glambda" => {
            let r = resolve_cutoff(&zeros)?;
            let constants = SingularConstants::new(1_000_000)?;
            let v = zerosum::g_lambda(parse_s()?, lambda, &kernel, &zeros, &r, &constants)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "omega" => {
            let grid = match delta_grid {
                Some(text) => parse_f64_list("delta-grid", text)?,
                None => vec![0.24, 0.2, 0.16, 0.12],
            };
            let z = match count {
                Some(n) => zeros.truncated(n)?,
                None => zeros.clone(),
            };
            let report = zerosum::omega_probe(lambda, &kernel, &z, &grid)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "delta": r.delta,
                        "scaled_difference": r.scaled_difference,
                        "tail_estimate": r.tail_estimate,
                    })
                })
                .collect();
            let mut csv = String::from("delta,scaled_difference,tail_estimate\n");
            for r in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{:.10e},{:.10e}",
                    r.delta, r.scaled_difference, r.tail_estimate
                );
            }
            let _ = writeln!(csv, "extrapolate,{:.10e}", report.extrapolate);
            let _ = writeln!(csv, "label,{}", report.label);
            (
                json!({
                    "lambda": report.lambda,
                    "rows": rows,
                    "extrapolate": report.extrapolate,
                    "label": report.label,
                }),
                csv,
            )
        }
        other => {
            return Err(Error::Config(format!(
                "--op: {other:?} is not sigma1, sigma2, sigma4, glambda, or omega"
            )))
        }
    };

    Ok(Output {
        command: "zerosum",
        config: json!({
            "op": op,
            "zeros_file": zeros_file.display().to_string(),
            "s": s.map_or(Value::Null, |t| json!(t)),
            "lambda": lambda,
            "kernel": kernel.name(),
            "cutoff": cutoff.map_or(Value::Null, |c| json!(c)),
            "count": count.map_or(Value::Null, |n| json!(n)),
            "delta_grid": delta_grid.map_or(Value::Null, |t| json!(t)),
        }),
        result,
        csv,
        exit: 0,
    })
}

// series

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    op: &str,
    s: Option<&str>,
    two_r: u64,
    terms: Option<&str>,
    lambda: f64,
    kernel_name: &str,
    limit: &str,
    delta_grid: Option<&str>,
) -> Result<Output> {
    let kernel = parse_kernel(kernel_name)?;
    let parse_s = || -> Result<Complex64> {
        parse_point("s", require(s, "this op needs --s \"re,im\"")?)
    };
    let parse_terms = || -> Result<u64> {
        parse_count("terms", require(terms, "this op needs --terms")?)
    };
    // the sieve must hold every band partner beyond the term budget
    let band_reach = (lambda.ceil() as u64).max(1) - 1;

    let (result, csv) = match op {
        "d2r" | "d0" => {
            let s = parse_s()?;
            let n = parse_terms()?;
            let gap = if op == "d0" { 0 } else { two_r };
            let plan = TruncationPlan::new(n, s, gap)?;
            let table = PrimeTable::build((n + gap).max(16))?;
            let v = dirichlet::d_2r(s, gap, &plan, &table)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "tlambda" | "odd" => {
            let s = parse_s()?;
            let n = parse_terms()?;
            let plan = TruncationPlan::new(n, s, 2 * band_reach)?;
            let table = PrimeTable::build((n + band_reach).max(16))?;
            let v = if op == "tlambda" {
                dirichlet::t_lambda_expansion(s, lambda, &kernel, &plan, &table)?
            } else {
                dirichlet::odd_difference_terms(s, lambda, &kernel, &plan, &table)?
            };
            (series_result_json(&v), series_result_csv(&v))
        }
        "vlambda" => {
            let s = parse_s()?;
            let n = parse_terms()?;
            let largest_gap = if lambda >= 2.0 { (lambda / 2.0).floor() as u64 * 2 } else { 0 };
            let plan = TruncationPlan::new(n, s, largest_gap.max(2))?;
            let table = PrimeTable::build((n + largest_gap).max(16))?;
            let v = dirichlet::v_lambda(s, lambda, &kernel, &plan, &table)?;
            (series_result_json(&v), series_result_csv(&v))
        }
        "d0pole" => {
            let grid = match delta_grid {
                Some(text) => parse_f64_list("delta-grid", text)?,
                None => vec![0.2, 0.15, 0.1],
            };
            let table = PrimeTable::build(parse_count("limit", limit)?)?;
            let report = dirichlet::d0_pole_probe(&grid, &table)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "delta": r.delta,
                        "n_terms": r.n_terms,
                        "scaled": r.scaled,
                        "completed": r.completed,
                        "scaled_tail": r.scaled_tail,
                        "target_met": r.target_met,
                    })
                })
                .collect();
            let mut csv = String::from("delta,n_terms,scaled,completed,scaled_tail,target_met\n");
            for r in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{:.6},{:.6},{:.3e},{}",
                    r.delta, r.n_terms, r.scaled, r.completed, r.scaled_tail, r.target_met
                );
            }
            let _ = writeln!(csv, "target,{}", report.target);
            (json!({ "target": report.target, "rows": rows }), csv)
        }
        "c2rprobe" => {
            let grid = match delta_grid {
                Some(text) => parse_f64_list("delta-grid", text)?,
                None => vec![0.2, 0.1, 0.05],
            };
            let table = PrimeTable::build(parse_count("limit", limit)?)?;
            let constants = SingularConstants::new(1_000_000)?;
            let report = dirichlet::c2r_residue_probe(two_r, &grid, &table, &constants)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "delta": r.delta,
                        "n_terms": r.n_terms,
                        "scaled": r.scaled,
                        "scaled_tail": r.scaled_tail,
                        "target_met": r.target_met,
                    })
                })
                .collect();
            let mut csv = String::from("delta,n_terms,scaled,scaled_tail,target_met\n");
            for r in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{:.6},{:.3e},{}",
                    r.delta, r.n_terms, r.scaled, r.scaled_tail, r.target_met
                );
            }
            let _ = writeln!(csv, "target,{}", report.target);
            (
                json!({ "two_r": report.two_r, "target": report.target, "rows": rows }),
                csv,
            )
        }
        other => {
            return Err(Error::Config(format!(
                "--op: {other:?} is not d2r, d0, tlambda, vlambda, odd, d0pole, or c2rprobe"
            )))
        }
    };

    Ok(Output {
        command: "series",
        config: json!({
            "op": op,
            "s": s.map_or(Value::Null, |t| json!(t)),
            "two_r": two_r,
            "terms": terms.map_or(Value::Null, |t| json!(t)),
            "lambda": lambda,
            "kernel": kernel.name(),
            "limit": limit,
            "delta_grid": delta_grid.map_or(Value::Null, |t| json!(t)),
        }),
        result,
        csv,
        exit: 0,
    })
}

// paircorr

fn cmd_paircorr(
    alpha: f64,
    zeros_file: &Path,
    count: Option<usize>,
    t: Option<f64>,
) -> Result<Output> {
    let zeros = ZeroSet::load(zeros_file)?;
    let z = match count {
        Some(n) => zeros.truncated(n)?,
        None => zeros,
    };
    let t = t.unwrap_or_else(|| *z.ordinates().last().unwrap());
    let value = zerosum::pair_correlation_f(alpha, &z, t)?;
    let used = z.count_below(t);
    let csv = format!(
        "alpha,{alpha}\nt,{t}\nlog_t,{:.10e}\nvalue,{value:.10e}\nzeros_used,{used}\n",
        t.ln()
    );
    Ok(Output {
        command: "paircorr",
        config: json!({
            "alpha": alpha,
            "zeros_file": zeros_file.display().to_string(),
            "count": count.map_or(Value::Null, |n| json!(n)),
            "t": t,
        }),
        result: json!({
            "alpha": alpha,
            "t": t,
            "log_t": t.ln(),
            "value": value,
            "zeros_used": used,
        }),
        csv,
        exit: 0,
    })
}
