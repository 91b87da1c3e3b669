//! `ordered-ramsey`: certified pattern and bi-clique extraction from the
//! command line. Records go to stdout as JSON lines, summaries to stderr.
//!
//! Exit codes: 0 success, 1 input error or failed run, 2 precondition
//! violation.

mod batch;
mod commands;
mod record;
mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ordered_ramsey::generators::{GenKind, GenSpec};
use ordered_ramsey::geometry::CurveOrder;
use ordered_ramsey::io::validate_document;

use commands::{CliError, CliResult, Loaded, MatchingArgs, Run, EXIT_INPUT, EXIT_PRECONDITION};
use record::{Outcome, OutcomeRecord};
use verify::{seal, verify_record, Verb};

#[derive(Parser, Debug)]
#[command(name = "ordered-ramsey", version, about = "Certified induced patterns and bi-cliques in ordered graphs and curve families")]
struct Cli {
    /// Add elapsed_ms to every record (records are then no longer byte-stable).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a seeded instance file.
    Gen(GenArgs),
    #[command(subcommand)]
    Patterns(PatternsCmd),
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    #[command(subcommand)]
    Curves(CurvesCmd),
    #[command(subcommand)]
    Magical(MagicalCmd),
    #[command(subcommand)]
    Threshold(ThresholdCmd),
    /// Exhaustive maximum balanced bi-clique (small graphs).
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Search the complement instead.
        #[arg(long)]
        complement: bool,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Same as `magical verify-claim`.
    VerifyClaim,
    /// Run a seeded experiment suite.
    Batch {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// json: stats as the last stdout line; tsv: stats table on stderr.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check instance files, or re-verify a record stream against its input.
    Validate {
        files: Vec<PathBuf>,
        /// JSON-lines record file to re-verify.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Input document the records were computed from.
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 4)]
    segs: usize,
    #[arg(long, default_value_t = 2)]
    amp: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    x0: i64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum PatternsCmd {
    /// Find an order-preserving induced copy of a pattern.
    Find {
        /// P<k>, M1, matching:a-b,c-d,... or a graph file.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum RamseyCmd {
    /// Induced monotone path on k vertices or a co-bi-clique.
    Path {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Induced ordered matching or a co-bi-clique.
    Matching {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        retries: Option<u64>,
        /// Fall back to exhaustive search over the edge systems.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CurvesCmd {
    /// Intersection graph of a curve family.
    Graph {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::None)]
        order: OrderArg,
    },
    /// Linear co-bi-clique in the intersection graph.
    Ramsey {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Look for induced M1 and complement-P4 in a grounded family.
    CheckGrounded {
        #[arg(long)]
        curves: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum MagicalCmd {
    /// Exhaustive check over all triple orderings of five vertices.
    VerifyClaim,
    /// Inspect a graph under orders <2 and <3 (comma-separated rank vectors).
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        perm2: String,
        #[arg(long)]
        perm3: String,
        #[arg(long, requires = "witness2")]
        witness1: Option<PathBuf>,
        #[arg(long, requires = "witness1")]
        witness2: Option<PathBuf>,
    },
    /// Double-magical witness at x = line, then the dense extractor.
    Extract {
        #[arg(long)]
        curves: PathBuf,
        /// p, p/q or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
}

#[derive(Subcommand, Debug)]
enum ThresholdCmd {
    /// Co-bi-clique in a sparse family of x-monotone curves.
    Run {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    TwoClique,
    FourClique,
    RandomOrdered,
    GroundedCurves,
    CrossingCurves,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> GenKind {
        match k {
            KindArg::TwoClique => GenKind::TwoClique,
            KindArg::FourClique => GenKind::FourClique,
            KindArg::RandomOrdered => GenKind::RandomOrdered,
            KindArg::GroundedCurves => GenKind::GroundedCurves,
            KindArg::CrossingCurves => GenKind::CrossingCurves,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    GroundedY,
    RightEndpoint,
    None,
}

impl From<OrderArg> for CurveOrder {
    fn from(o: OrderArg) -> CurveOrder {
        match o {
            OrderArg::GroundedY => CurveOrder::GroundedYOrder,
            OrderArg::RightEndpoint => CurveOrder::RightEndpointOrder,
            OrderArg::None => CurveOrder::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

fn emit(rec: &OutcomeRecord) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", rec.to_line()).expect("stdout");
}

fn summary(rec: &OutcomeRecord) {
    let sizes: Vec<String> = rec.sizes.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let timing = rec.elapsed_ms.map(|t| format!(" in {t} ms")).unwrap_or_default();
    eprintln!("{}: {} [{}]{timing}", rec.command.join(" "), rec.variant, sizes.join(" "));
}

/// Runs one verb, seals its record and reports it.
fn single(
    command: Vec<String>,
    timing: bool,
    seed: Option<u64>,
    input: Option<&Loaded>,
    f: impl FnOnce() -> CliResult<Run>,
) -> CliResult<u8> {
    let start = Instant::now();
    let result = f();
    let elapsed = timing.then(|| start.elapsed().as_millis() as u64);
    let digest = input.map(|i| i.digest.clone()).unwrap_or_default();
    let (outcome, digest) = match result {
        Ok(run) => (run.outcome, run.input_digest),
        Err(CliError::Precondition(m)) => (
            Outcome::new("precondition_violation", serde_json::json!({ "error": m })).exit(EXIT_PRECONDITION),
            digest,
        ),
        Err(e) => return Err(e),
    };
    let exit = outcome.exit;
    let rec = seal(outcome, command, digest, seed, elapsed, input.map(|i| &i.doc)).map_err(CliError::Failure)?;
    emit(&rec);
    summary(&rec);
    Ok(exit)
}

fn validate(files: &[PathBuf], records: Option<&Path>, against: Option<&Path>) -> CliResult<u8> {
    let mut bad = 0usize;
    for f in files {
        let text = fs::read_to_string(f).map_err(|e| CliError::Input(format!("{}: {e}", f.display())))?;
        match validate_document(&text) {
            Ok(_) => eprintln!("{}: ok", f.display()),
            Err(diags) => {
                bad += 1;
                for d in diags {
                    eprintln!("{}: {d}", f.display());
                }
            }
        }
    }
    if let Some(path) = records {
        let input = against.map(commands::load).transpose()?;
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut checked = 0usize;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let at = format!("{}: line {}", path.display(), i + 1);
            let value: serde_json::Value = match serde_json::from_str(line) {
                Ok(v) => v,
                Err(e) => {
                    bad += 1;
                    eprintln!("{at}: {e}");
                    continue;
                }
            };
            if value.get("stats").is_some() {
                continue;
            }
            let problem = match serde_json::from_value::<OutcomeRecord>(value) {
                Err(e) => Some(format!("not an outcome record: {e}")),
                Ok(rec) => {
                    let verb = Verb::from_command(&rec.command);
                    if rec.variant == "error" {
                        Some("run failed when recorded".into())
                    } else if verb.is_some_and(Verb::needs_input) && input.is_none() {
                        Some("needs --against to re-verify".into())
                    } else if input.as_ref().is_some_and(|l| l.digest != rec.input_digest)
                        && verb.is_some_and(Verb::needs_input)
                    {
                        Some("input digest does not match --against".into())
                    } else {
                        verify_record(&rec, input.as_ref().map(|l| &l.doc)).err()
                    }
                }
            };
            checked += 1;
            if let Some(p) = problem {
                bad += 1;
                eprintln!("{at}: {p}");
            }
        }
        eprintln!("{}: {checked} records checked", path.display());
    }
    Ok(if bad == 0 { 0 } else { EXIT_INPUT })
}

fn run(cli: Cli, argv: Vec<String>) -> CliResult<u8> {
    let timing = cli.timing;
    let command: Vec<String> = argv.into_iter().skip(1).filter(|a| a != "--timing").collect();
    match cli.cmd {
        Cmd::Gen(a) => {
            let spec = GenSpec {
                kind: a.kind.into(),
                n: a.n,
                p: a.p,
                epsilon: a.epsilon,
                segs: a.segs,
                amp: a.amp,
                x0: a.x0,
                seed: a.seed,
            };
            single(command, timing, Some(a.seed), None, || commands::gen(&spec, &a.out))
        }
        Cmd::Patterns(PatternsCmd::Find { pattern, input }) => {
            let pattern = commands::parse_pattern(&pattern)?;
            let input = commands::load(&input)?;
            single(command, timing, None, Some(&input), || commands::patterns_find(&pattern, &input))
        }
        Cmd::Ramsey(RamseyCmd::Path { k, input, seed }) => {
            let input = commands::load(&input)?;
            single(command, timing, Some(seed), Some(&input), || commands::ramsey_path(k, &input))
        }
        Cmd::Ramsey(RamseyCmd::Matching {
            pattern,
            input,
            seed,
            retries,
            exhaustive,
        }) => {
            let pattern = commands::parse_pattern(&pattern)?;
            let input = commands::load(&input)?;
            let args = MatchingArgs {
                seed,
                retries,
                exhaustive,
            };
            single(command, timing, Some(seed), Some(&input), || {
                commands::ramsey_matching(&pattern, &args, &input)
            })
        }
        Cmd::Curves(CurvesCmd::Graph { curves, order }) => {
            let input = commands::load(&curves)?;
            single(command, timing, None, Some(&input), || commands::curves_graph(order.into(), &input))
        }
        Cmd::Curves(CurvesCmd::Ramsey { curves, seed }) => {
            let input = commands::load(&curves)?;
            single(command, timing, Some(seed), Some(&input), || commands::curves_ramsey_run(seed, &input))
        }
        Cmd::Curves(CurvesCmd::CheckGrounded { curves }) => {
            let input = commands::load(&curves)?;
            single(command, timing, None, Some(&input), || commands::check_grounded(&input))
        }
        Cmd::Magical(MagicalCmd::VerifyClaim) | Cmd::VerifyClaim => {
            single(command, timing, None, None, commands::verify_claim)
        }
        Cmd::Magical(MagicalCmd::Check {
            input,
            perm2,
            perm3,
            witness1,
            witness2,
        }) => {
            let input = commands::load(&input)?;
            let perm2 = commands::parse_perm(&perm2)?;
            let perm3 = commands::parse_perm(&perm3)?;
            let witness = match (witness1, witness2) {
                (Some(a), Some(b)) => {
                    let (a, b) = (commands::load(&a)?, commands::load(&b)?);
                    Some((a.graph()?.clone(), b.graph()?.clone()))
                }
                _ => None,
            };
            single(command, timing, None, Some(&input), || {
                commands::magical_check(&input, perm2, perm3, witness)
            })
        }
        Cmd::Magical(MagicalCmd::Extract { curves, line }) => {
            let input = commands::load(&curves)?;
            single(command, timing, None, Some(&input), || commands::magical_extract(&line, &input))
        }
        Cmd::Threshold(ThresholdCmd::Run { curves, epsilon }) => {
            let input = commands::load(&curves)?;
            single(command, timing, None, Some(&input), || commands::threshold(epsilon, &input))
        }
        Cmd::Oracle { input, complement, cap } => {
            let input = commands::load(&input)?;
            single(command, timing, None, Some(&input), || commands::oracle(complement, cap, &input))
        }
        Cmd::Batch { spec, threads, format } => {
            let text = fs::read_to_string(&spec).map_err(|e| CliError::Input(format!("{}: {e}", spec.display())))?;
            let suite: batch::Suite = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: line {}, column {}: {e}", spec.display(), e.line(), e.column())))?;
            for job in &suite.jobs {
                job.check()?;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let records = pool.install(|| batch::run_suite(&suite, timing));
            for r in &records {
                emit(r);
            }
            let stats = batch::stats(&records);
            match format {
                Format::Json => {
                    let line = serde_json::json!({ "stats": stats });
                    println!("{line}");
                }
                Format::Tsv => eprint!("{}", batch::stats_tsv(&stats)),
            }
            let failed = records.iter().filter(|r| r.variant == "error").count();
            eprintln!("batch: {} runs, {failed} failed", records.len());
            Ok(if failed == 0 { 0 } else { EXIT_INPUT })
        }
        Cmd::Validate { files, records, against } => validate(&files, records.as_deref(), against.as_deref()),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
