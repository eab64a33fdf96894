//! Command-line front end: verification suites that print JSON reports, and
//! deterministic sample dumps for inspecting what the suites consume. Reports
//! go to stdout (or --out); everything diagnostic goes to stderr. Exit codes:
//! 0 all checks passed, 1 at least one check failed, 2 usage or runtime
//! error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use strandlab::cosimplicial::{sample_config_ladder, sample_numeric_ladder, BoundaryAnchors};
use strandlab::error::{Error, Result};
use strandlab::report::VerificationReport;
use strandlab::rng::task_rng;
use strandlab::sphere::{gauss_map, sample_configuration, Configuration, SampleDomain, SphereMap};
use strandlab::suites::run_suite;

/// Environment variable holding the default worker thread count.
const THREADS_VAR: &str = "STRANDLAB_THREADS";

#[derive(Parser)]
#[command(name = "strandlab", version, about = "Verification laboratory for divided-power bimodule actions on sphere-valued configuration tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit its JSON report.
    Verify(VerifyArgs),
    /// Emit a deterministic sample (configuration, Gauss table, or ladder).
    Sample(SampleArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Operad,
    Bimodule,
    Alpha,
    Chains,
    Kontsevich,
    Closure,
    Cosimplicial,
    ConfigModel,
}

impl Suite {
    fn label(self) -> &'static str {
        match self {
            Suite::Operad => "operad",
            Suite::Bimodule => "bimodule",
            Suite::Alpha => "alpha",
            Suite::Chains => "chains",
            Suite::Kontsevich => "kontsevich",
            Suite::Closure => "closure",
            Suite::Cosimplicial => "cosimplicial",
            Suite::ConfigModel => "config-model",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// Row count of the divided-power grading.
    #[arg(long)]
    m: Option<usize>,
    /// Sweep bound: largest arity (or composition total, for closure).
    #[arg(long)]
    max_arity: Option<usize>,
    /// Largest part count of swept compositions (closure only).
    #[arg(long)]
    k: Option<usize>,
    /// Ambient dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Number of random samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Base seed for all derived task seeds.
    #[arg(long)]
    seed: Option<u64>,
    /// Override every residual tolerance in the suite.
    #[arg(long)]
    tol: Option<f64>,
    /// Four-consistency mode: tensor or probe (kontsevich only).
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated unit vector overriding the doubling direction
    /// (config-model only).
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<f64>>,
    /// Largest ladder level.
    #[arg(long)]
    level: Option<usize>,
    /// Documented corruption label; turns the run into a negative control.
    #[arg(long)]
    corrupt: Option<String>,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum SampleKind {
    Config,
    Gauss,
    Ladder,
}

#[derive(Copy, Clone, ValueEnum)]
enum LadderFlavor {
    Config,
    Numeric,
}

#[derive(Args)]
struct SampleArgs {
    /// What to sample.
    #[arg(value_enum)]
    kind: SampleKind,
    /// Point count (config and gauss).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Row count (ladder).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Ambient dimension.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Base seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest ladder level.
    #[arg(long, default_value_t = 2)]
    level: usize,
    /// Entries per ladder level.
    #[arg(long = "per-level", default_value_t = 2)]
    per_level: usize,
    /// Ladder flavor.
    #[arg(long, value_enum, default_value_t = LadderFlavor::Config)]
    flavor: LadderFlavor,
    /// Smallest pairwise separation of sampled points.
    #[arg(long = "min-sep", default_value_t = 0.05)]
    min_sep: f64,
    /// Sampling domain: cube or ball.
    #[arg(long, default_value = "cube")]
    domain: String,
    /// Comma-separated unit vector overriding the doubling direction
    /// (config ladder).
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<f64>>,
    /// Write the sample to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Sample(args) => run_sample(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| Error::invalid(format!("{THREADS_VAR} must be a thread count, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::invalid(format!("cannot configure {threads} worker threads: {e}")))
}

fn run_verify(a: VerifyArgs) -> Result<bool> {
    let start = Instant::now();
    let mut params = Map::new();
    if let Some(v) = a.m {
        params.insert("m".into(), json!(v));
    }
    if let Some(v) = a.max_arity {
        params.insert("maxArity".into(), json!(v));
    }
    if let Some(v) = a.k {
        params.insert("k".into(), json!(v));
    }
    if let Some(v) = a.n {
        params.insert("n".into(), json!(v));
    }
    if let Some(v) = a.samples {
        params.insert("samples".into(), json!(v));
    }
    if let Some(v) = a.seed {
        params.insert("seed".into(), json!(v));
    }
    if let Some(v) = a.tol {
        params.insert("tol".into(), json!(v));
    }
    if let Some(v) = &a.mode {
        params.insert("mode".into(), json!(v));
    }
    if let Some(v) = &a.u {
        params.insert("u".into(), json!(v));
    }
    if let Some(v) = a.level {
        params.insert("level".into(), json!(v));
    }
    if let Some(v) = &a.corrupt {
        params.insert("corrupt".into(), json!(v));
    }

    let suite = a.suite.label();
    let run = run_suite(suite, &Value::Object(params))?;
    let report =
        VerificationReport::new(suite, run.parameters, run.checks, start.elapsed().as_secs_f64());
    emit(&report.to_json(), &a.out)?;
    Ok(report.passed())
}

fn run_sample(a: SampleArgs) -> Result<()> {
    let domain: SampleDomain = a.domain.parse()?;
    let value = match a.kind {
        SampleKind::Config => {
            let mut rng = task_rng(a.seed, &format!("sample-config-{}-{}", a.k, a.n));
            let config = sample_configuration(&mut rng, a.k, a.n, domain, a.min_sep)?;
            json!({
                "kind": "config",
                "k": a.k,
                "n": a.n,
                "seed": a.seed,
                "minSep": a.min_sep,
                "domain": a.domain,
                "points": points_json(&config),
            })
        }
        SampleKind::Gauss => {
            let mut rng = task_rng(a.seed, &format!("sample-config-{}-{}", a.k, a.n));
            let config = sample_configuration(&mut rng, a.k, a.n, domain, a.min_sep)?;
            let map = gauss_map(&config)?;
            json!({
                "kind": "gauss",
                "k": a.k,
                "n": a.n,
                "seed": a.seed,
                "minSep": a.min_sep,
                "domain": a.domain,
                "points": points_json(&config),
                "table": table_json(&map),
            })
        }
        SampleKind::Ladder => ladder_json(&a)?,
    };
    emit(&serde_json::to_string_pretty(&value).expect("sample serialization cannot fail"), &a.out)
}

/// The same task names the suites use, so a dumped ladder is byte-for-byte
/// the one the matching suite run verifies.
fn ladder_json(a: &SampleArgs) -> Result<Value> {
    match a.flavor {
        LadderFlavor::Config => {
            let standard = BoundaryAnchors::standard(a.n)?;
            let anchors = match &a.u {
                None => standard,
                Some(u) => BoundaryAnchors::new(
                    standard.x_minus().to_vec(),
                    standard.x_plus().to_vec(),
                    u.clone(),
                )?,
            };
            let mut rng = task_rng(a.seed, "config-ladder");
            let ladder =
                sample_config_ladder(&mut rng, a.m, a.n, a.level, a.per_level, anchors)?;
            let levels: Vec<Value> = (0..=ladder.max_level())
                .map(|k| {
                    json!({
                        "level": k,
                        "configs": ladder
                            .corpus(k)
                            .iter()
                            .map(|dc| json!({
                                "points": points_json(&dc.config),
                                "table": table_json(&dc.map),
                            }))
                            .collect::<Vec<Value>>(),
                    })
                })
                .collect();
            Ok(json!({
                "kind": "ladder",
                "flavor": "config",
                "m": a.m,
                "n": a.n,
                "level": a.level,
                "perLevel": a.per_level,
                "seed": a.seed,
                "anchors": {
                    "xMinus": ladder.anchors().x_minus(),
                    "xPlus": ladder.anchors().x_plus(),
                    "u": ladder.anchors().u(),
                },
                "levels": levels,
            }))
        }
        LadderFlavor::Numeric => {
            let mut rng = task_rng(a.seed, "cosimplicial-numeric");
            let ladder = sample_numeric_ladder(&mut rng, a.m, a.n, a.level, a.per_level)?;
            let levels: Vec<Value> = (0..=ladder.max_level())
                .map(|k| {
                    json!({
                        "level": k,
                        "maps": ladder
                            .corpus(k)
                            .iter()
                            .map(table_json)
                            .collect::<Vec<Value>>(),
                    })
                })
                .collect();
            Ok(json!({
                "kind": "ladder",
                "flavor": "numeric",
                "m": a.m,
                "n": a.n,
                "level": a.level,
                "perLevel": a.per_level,
                "seed": a.seed,
                "levels": levels,
            }))
        }
    }
}

fn points_json(c: &Configuration) -> Value {
    let points: Vec<Vec<f64>> = (1..=c.k()).map(|i| c.point(i).to_vec()).collect();
    json!(points)
}

fn table_json(f: &SphereMap) -> Value {
    let mut entries = Vec::new();
    for i in 1..=f.arity() {
        for j in (i + 1)..=f.arity() {
            entries.push(json!({ "i": i, "j": j, "v": f.entry(i, j) }));
        }
    }
    json!(entries)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => {
                    other.map_err(|e| Error::invalid(format!("cannot write to stdout: {e}")))
                }
            }
        }
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| {
            Error::invalid(format!("cannot write {}: {e}", path.display()))
        }),
    }
}
