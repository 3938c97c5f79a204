//! The `kron-stab` command line, exposed as a library so it can be driven
//! in-process by tests.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use kronstab::characters::cache::CharacterCache;
use kronstab::characters::{mn_character, CharacterTable};
use kronstab::coefficients::{
    kronecker, littlewood_richardson, plethysm_coeff, verify_schur_weyl_dim, CoefficientKind,
};
use kronstab::stability::{
    coefficient_sequence, stability, summarize_fit, CoeffSequence, FitSummary, StabilityOptions,
    StabilityReport, Verdict, DEFAULT_PERIOD_MAX, DEFAULT_WINDOW,
};
use kronstab::{Engine, EngineConfig, Error, Partition, PartitionTriple, DEFAULT_RANK_CAP};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

/// Result of one invocation: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "kron-stab",
    version,
    about = "Exact Kronecker, Littlewood-Richardson and plethysm coefficients and their stability"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Machine-readable JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output
    #[arg(long, global = true)]
    csv: bool,
    /// Character-table cache directory (default: $KRONSTAB_CACHE_DIR or the user cache dir)
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the character-table cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest symmetric-group rank to compute with
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,
    /// Worker threads (default: one per core)
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[arg(value_parser = parse_partition)]
    lambda: Partition,
    #[arg(value_parser = parse_partition)]
    mu: Partition,
    #[arg(value_parser = parse_partition)]
    nu: Partition,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kronecker coefficient g_{λ,μ,ν}
    Kron(TripleArgs),
    /// Littlewood-Richardson coefficient c^λ_{μ,ν}
    Lr(TripleArgs),
    /// Plethysm coefficient a^ν_{λ,μ}, the multiplicity of S_ν in S_λ(S_μ)
    Pleth(TripleArgs),
    /// Character value χ_λ(μ)
    Char {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        #[arg(value_parser = parse_partition)]
        mu: Partition,
    },
    /// Character table of S_n
    Chartable { n: usize },
    /// Stretched coefficient sequence for d = 0..dmax
    Seq {
        #[arg(long, value_parser = parse_kind)]
        kind: CoefficientKind,
        #[arg(long, num_args = 3, required = true, value_names = ["ALPHA", "BETA", "GAMMA"], value_parser = parse_partition)]
        base: Vec<Partition>,
        #[arg(long, num_args = 3, value_names = ["LAMBDA", "MU", "NU"], value_parser = parse_partition)]
        shift: Option<Vec<Partition>>,
        #[arg(long)]
        dmax: usize,
    },
    /// Stability verdict for a triple
    StableCheck {
        #[arg(long, value_parser = parse_kind)]
        kind: CoefficientKind,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Also generate this shifted sequence and report where it stabilizes
        #[arg(long, num_args = 3, value_names = ["LAMBDA", "MU", "NU"], value_parser = parse_partition)]
        shift: Option<Vec<Partition>>,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Fit a quasi-polynomial to values d = 0, 1, ... (one integer per line)
    Fit {
        #[arg(long, default_value_t = DEFAULT_PERIOD_MAX)]
        period_max: usize,
        /// Read from this file instead of stdin
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        /// Input is the JSON output of `seq --json`
        #[arg(long)]
        json_in: bool,
    },
    /// Dimension check of the Schur-Weyl decomposition of S_λ(C^a ⊗ C^b)
    VerifySw {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        a: usize,
        b: usize,
    },
    /// Character-table cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    /// Print the cache directory
    Path,
    /// Delete all cached tables
    Clear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Csv,
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    text.parse::<Partition>()
        .map_err(|e| format!("`{text}`: {e}"))
}

fn parse_kind(text: &str) -> Result<CoefficientKind, String> {
    text.parse::<CoefficientKind>().map_err(|e| e.to_string())
}

fn triple_of(parts: Vec<Partition>) -> PartitionTriple {
    let [a, b, c]: [Partition; 3] = parts.try_into().expect("clap enforces three values");
    PartitionTriple::new(a, b, c)
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut piped = String::new();
    if let Command::Fit { input: None, .. } = cli.command {
        if let Err(e) = stdin.read_to_string(&mut piped) {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot read stdin: {e}\n"),
            };
        }
    }
    let result = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &piped)),
            Err(e) => Err(Failure::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(&cli, &piped),
    };
    match result {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_refusal() => EXIT_REFUSED,
            Failure::Core(e) if e.is_integrity() => EXIT_INTEGRITY,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Output = Result<String, Failure>;

fn cache_dir(global: &GlobalArgs) -> PathBuf {
    global
        .cache_dir
        .clone()
        .unwrap_or_else(CharacterCache::default_dir)
}

fn engine(global: &GlobalArgs) -> Engine {
    let cache = (!global.no_cache).then(|| CharacterCache::new(cache_dir(global)));
    Engine::new(EngineConfig {
        rank_cap: global.rank_cap,
        cache,
        ..EngineConfig::default()
    })
}

fn dispatch(cli: &Cli, piped: &str) -> Output {
    let format = if cli.global.json {
        Format::Json
    } else if cli.global.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let engine = engine(&cli.global);
    match &cli.command {
        Command::Kron(t) => {
            let v = kronecker(&engine, &t.lambda, &t.mu, &t.nu)?;
            Ok(coefficient_output(CoefficientKind::Kronecker, t, &v, format))
        }
        Command::Lr(t) => {
            let v = littlewood_richardson(&t.lambda, &t.mu, &t.nu)?;
            Ok(coefficient_output(CoefficientKind::LittlewoodRichardson, t, &v, format))
        }
        Command::Pleth(t) => {
            let v = plethysm_coeff(&engine, &t.lambda, &t.mu, &t.nu)?;
            Ok(coefficient_output(CoefficientKind::Plethysm, t, &v, format))
        }
        Command::Char { lambda, mu } => {
            let n = lambda.size();
            if n > engine.rank_cap() {
                return Err(Error::CapExceeded {
                    what: "rank n",
                    requested: n,
                    cap: engine.rank_cap(),
                    hint: String::new(),
                }
                .into());
            }
            let v = mn_character(lambda, mu)?;
            Ok(character_output(lambda, mu, &v, format))
        }
        Command::Chartable { n } => {
            let table = engine.character_table(*n)?;
            Ok(table_output(&table, format))
        }
        Command::Seq {
            kind,
            base,
            shift,
            dmax,
        } => {
            let base = triple_of(base.clone());
            let shift = shift.clone().map_or_else(PartitionTriple::empty, triple_of);
            let seq = coefficient_sequence(&engine, *kind, &base, &shift, *dmax)?;
            Ok(sequence_output(&seq, format))
        }
        Command::StableCheck {
            kind,
            triple,
            dmax,
            shift,
            window,
        } => {
            if *window == 0 {
                return Err(Failure::Usage("--window must be positive".into()));
            }
            let base = PartitionTriple::new(triple.lambda.clone(), triple.mu.clone(), triple.nu.clone());
            let options = StabilityOptions {
                dmax: *dmax,
                shift: shift.clone().map(triple_of),
                window: *window,
            };
            let report = stability(&engine, *kind, &base, &options)?;
            Ok(report_output(&report, format))
        }
        Command::Fit {
            period_max,
            input,
            json_in,
        } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
                None => piped.to_string(),
            };
            let values = if *json_in {
                let seq: CoeffSequence = serde_json::from_str(&text)
                    .map_err(|e| Failure::Usage(format!("malformed sequence JSON: {e}")))?;
                seq.values_as_integers()
            } else {
                parse_values(&text)?
            };
            if *period_max == 0 {
                return Err(Failure::Usage("--period-max must be positive".into()));
            }
            fit_output(&values, *period_max, format)
        }
        Command::VerifySw { lambda, a, b } => {
            let report = verify_schur_weyl_dim(&engine, lambda, *a, *b)?;
            Ok(match format {
                Format::Json => line(&json!({
                    "lambda": lambda,
                    "a": a,
                    "b": b,
                    "lhs": natural(&report.lhs),
                    "rhs": natural(&report.rhs),
                    "equal": report.equal,
                })),
                Format::Csv => csv_text(
                    &["lambda", "a", "b", "lhs", "rhs", "equal"],
                    &[vec![
                        lambda.to_string(),
                        a.to_string(),
                        b.to_string(),
                        report.lhs.to_string(),
                        report.rhs.to_string(),
                        report.equal.to_string(),
                    ]],
                ),
                Format::Table => format!(
                    "dim S_({lambda})(C^{a} ⊗ C^{b}) = {}\nsum over μ, ν of g·dim·dim = {}\nequal: {}\n",
                    report.lhs, report.rhs, report.equal
                ),
            })
        }
        Command::Cache { action } => {
            let dir = cache_dir(&cli.global);
            match action {
                CacheAction::Path => Ok(format!("{}\n", dir.display())),
                CacheAction::Clear => {
                    let removed = CharacterCache::new(&dir).clear()?;
                    Ok(format!("removed {removed} cached table(s) from {}\n", dir.display()))
                }
            }
        }
    }
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output types serialize");
    s.push('\n');
    s
}

/// A JSON number when it fits in 64 bits, else a decimal string.
fn natural(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

fn integer(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

fn coefficient_output(kind: CoefficientKind, t: &TripleArgs, v: &BigUint, format: Format) -> String {
    match format {
        Format::Table => format!("{v}\n"),
        Format::Json => line(&json!({
            "kind": kind.name(),
            "lambda": t.lambda,
            "mu": t.mu,
            "nu": t.nu,
            "value": natural(v),
        })),
        Format::Csv => csv_text(
            &["kind", "lambda", "mu", "nu", "value"],
            &[vec![
                kind.name().to_string(),
                t.lambda.to_string(),
                t.mu.to_string(),
                t.nu.to_string(),
                v.to_string(),
            ]],
        ),
    }
}

fn character_output(lambda: &Partition, mu: &Partition, v: &BigInt, format: Format) -> String {
    match format {
        Format::Table => format!("{v}\n"),
        Format::Json => line(&json!({ "lambda": lambda, "mu": mu, "value": integer(v) })),
        Format::Csv => csv_text(
            &["lambda", "mu", "value"],
            &[vec![lambda.to_string(), mu.to_string(), v.to_string()]],
        ),
    }
}

fn table_output(table: &CharacterTable, format: Format) -> String {
    match format {
        Format::Json => line(&json!({
            "n": table.n(),
            "class_order": "revlex",
            "classes": table.classes(),
            "rows": table.rows().iter().map(|(lambda, values)| json!({
                "lambda": lambda,
                "values": values.iter().map(integer).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut header = vec!["lambda".to_string()];
            header.extend(table.classes().iter().map(|c| c.shape.to_string()));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = table
                .rows()
                .iter()
                .map(|(lambda, values)| {
                    std::iter::once(lambda.to_string())
                        .chain(values.iter().map(ToString::to_string))
                        .collect()
                })
                .collect();
            csv_text(&header, &rows)
        }
        Format::Table => {
            let mut grid: Vec<Vec<String>> = Vec::new();
            grid.push(
                std::iter::once("λ \\ μ".to_string())
                    .chain(table.classes().iter().map(|c| c.shape.to_string()))
                    .collect(),
            );
            for (lambda, values) in table.rows() {
                grid.push(
                    std::iter::once(lambda.to_string())
                        .chain(values.iter().map(ToString::to_string))
                        .collect(),
                );
            }
            aligned(&grid)
        }
    }
}

/// Left-aligned first column, right-aligned others.
fn aligned(grid: &[Vec<String>]) -> String {
    let cols = grid.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in grid {
        let mut text = String::new();
        for (j, cell) in row.iter().enumerate() {
            let pad = widths[j] - cell.chars().count();
            if j == 0 {
                text.push_str(cell);
                text.push_str(&" ".repeat(pad));
            } else {
                text.push_str("  ");
                text.push_str(&" ".repeat(pad));
                text.push_str(cell);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

fn sequence_output(seq: &CoeffSequence, format: Format) -> String {
    match format {
        Format::Json => to_json(seq),
        Format::Csv => csv_text(
            &["d", "value"],
            &seq.values
                .iter()
                .enumerate()
                .map(|(d, v)| vec![d.to_string(), v.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut out = format!(
                "kind: {}\nbase: {}\nshift: {}\n",
                seq.kind.name(),
                seq.base,
                seq.shift
            );
            let mut grid = vec![vec!["d".to_string(), "value".to_string()]];
            grid.extend(
                seq.values
                    .iter()
                    .enumerate()
                    .map(|(d, v)| vec![d.to_string(), v.to_string()]),
            );
            out.push_str(&aligned(&grid));
            out
        }
    }
}

fn verdict_text(v: &Verdict, report: &StabilityReport) -> String {
    match v {
        Verdict::NotStable { witness_d: 1, .. } if report.g_base == BigUint::default() => {
            "NotStable (g_base = 0, so the triple is not stable by definition)".to_string()
        }
        Verdict::NotStable { witness_d, witness_value } => {
            format!("NotStable (witness d = {witness_d}, diagonal value {witness_value} != 1)")
        }
        Verdict::CertifiedUpTo { dmax } => {
            format!("CertifiedUpTo({dmax}) (diagonal values are 1 for 1 <= d <= {dmax}; not a proof for all d)")
        }
        Verdict::DecidedStable => format!("DecidedStable (c = {})", report.g_base),
        Verdict::DecidedNotStable => format!("DecidedNotStable (c = {})", report.g_base),
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::NotStable { .. } => "not-stable",
        Verdict::CertifiedUpTo { .. } => "certified-up-to",
        Verdict::DecidedStable => "decided-stable",
        Verdict::DecidedNotStable => "decided-not-stable",
    }
}

fn joined(values: &[BigUint]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn report_output(report: &StabilityReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let (witness_d, witness_value) = match &report.verdict {
                Verdict::NotStable { witness_d, witness_value } => (witness_d.to_string(), witness_value.to_string()),
                _ => (String::new(), String::new()),
            };
            let certified = match report.verdict {
                Verdict::CertifiedUpTo { dmax } => dmax.to_string(),
                _ => String::new(),
            };
            csv_text(
                &[
                    "kind",
                    "alpha",
                    "beta",
                    "gamma",
                    "verdict",
                    "witness_d",
                    "witness_value",
                    "certified_dmax",
                    "g_base",
                    "diagonal_values",
                ],
                &[vec![
                    report.kind.name().to_string(),
                    report.triple.first.to_string(),
                    report.triple.second.to_string(),
                    report.triple.third.to_string(),
                    verdict_name(&report.verdict).to_string(),
                    witness_d,
                    witness_value,
                    certified,
                    report.g_base.to_string(),
                    joined(&report.diagonal_values),
                ]],
            )
        }
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "triple: {}", report.triple);
            let _ = writeln!(out, "kind: {}", report.kind.name());
            let _ = writeln!(out, "g_base: {}", report.g_base);
            if report.kind != CoefficientKind::LittlewoodRichardson {
                let _ = writeln!(out, "diagonal (d = 1..): {}", joined(&report.diagonal_values));
            }
            let _ = writeln!(out, "verdict: {}", verdict_text(&report.verdict, report));
            if let Some(shift) = &report.shift {
                let _ = writeln!(out, "shift: {shift}");
                let _ = writeln!(out, "shifted values (d = 0..): {}", joined(&report.shifted_values));
                match &report.stable_value {
                    Some(s) => {
                        let _ = writeln!(
                            out,
                            "stable value: {} from d = {} (heuristic: constant over the observed tail)",
                            s.value, s.onset
                        );
                    }
                    None => {
                        let _ = writeln!(out, "stable value: not observed");
                    }
                }
            }
            out
        }
    }
}

fn parse_values(text: &str) -> Result<Vec<BigInt>, Failure> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::Usage(format!("line {}: `{}` is not an integer", i + 1, l.trim())))
        })
        .collect()
}

fn polynomial_text(coeffs: &[num_rational::BigRational]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| match k {
            0 => format!("{c}"),
            1 => format!("({c})·d"),
            _ => format!("({c})·d^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fit_output(values: &[BigInt], period_max: usize, format: Format) -> Output {
    let summary = match summarize_fit(values, period_max) {
        Ok(s) => s,
        Err(Error::NoFit { diagnostics, .. }) => {
            return Ok(match format {
                Format::Json => line(&json!({
                    "values": values.iter().map(integer).collect::<Vec<_>>(),
                    "fit": null,
                    "diagnostics": diagnostics,
                })),
                Format::Csv => csv_text(&["fit", "diagnostics"], &[vec!["none".into(), diagnostics]]),
                Format::Table => format!("no quasi-polynomial fit with period <= {period_max}\n{diagnostics}\n"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(match format {
        Format::Json => fit_json(values, &summary),
        Format::Csv => {
            let q = &summary.quasi_polynomial;
            let rows: Vec<Vec<String>> = q
                .components()
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    vec![
                        q.period().to_string(),
                        j.to_string(),
                        c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect();
            csv_text(&["period", "residue", "coefficients"], &rows)
        }
        Format::Table => {
            let q = &summary.quasi_polynomial;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "values (d = 0..{}): {}",
                values.len().saturating_sub(1),
                values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            );
            if summary.fit_start > 0 {
                let _ = writeln!(out, "fitted from d = {}", summary.fit_start);
            }
            let _ = writeln!(out, "period: {}", q.period());
            for (j, c) in q.components().iter().enumerate() {
                let _ = writeln!(out, "d ≡ {j} mod {}: {}", q.period(), polynomial_text(c));
            }
            let _ = writeln!(
                out,
                "krull estimate: {}{}",
                summary.krull_estimate,
                if summary.krull_tentative { " (tentative: few samples)" } else { "" }
            );
            if summary.reciprocity_violations.is_empty() {
                let _ = writeln!(out, "reciprocity: p(d) >= |p(-d)| holds on the scanned range");
            }
            for v in &summary.reciprocity_violations {
                let _ = writeln!(out, "reciprocity violation at d = {}: p(d) = {}, p(-d) = {}", v.d, v.value, v.mirror);
            }
            out
        }
    })
}

fn fit_json(values: &[BigInt], summary: &FitSummary) -> String {
    let mut v = serde_json::to_value(summary).expect("fit summary serializes");
    let obj = v.as_object_mut().expect("fit summary is an object");
    let fit = obj.remove("quasi_polynomial").expect("field present");
    let mut out = serde_json::Map::new();
    out.insert("values".into(), Value::from(values.iter().map(integer).collect::<Vec<_>>()));
    out.insert("fit".into(), fit);
    for (k, val) in std::mem::take(obj) {
        out.insert(k, val);
    }
    line(&Value::Object(out))
}
