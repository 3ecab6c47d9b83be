//! Command-line front end. Results go to stdout as JSON, logs to stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{parse_coloring, serialize_coloring};
use crate::constructions::{clique_coloring, lemma_coloring};
use crate::formulas::ar_family;
use crate::graph::{build_pattern, parse_graph, Graph, PatternSpec};
use crate::oracle::{max_rainbow_free_spec, verify_range, OracleError, OracleOutcome};
use crate::qcover::q_cover;
use crate::rainbow::find_rainbow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "antiramsey",
    version,
    about = "Anti-Ramsey bounds, rainbow search and exact small-n computation"
)]
pub struct Cli {
    /// Log verbosity on stderr (-v info, -vv debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds for a pattern family
    Formula {
        #[arg(long)]
        family: PatternSpec,
        #[arg(long, required_unless_present = "grid")]
        n: Option<i64>,
        /// Inclusive range `A..B`; prints one report per n
        #[arg(long, value_parser = parse_range)]
        grid: Option<(i64, i64)>,
    },
    /// Fewest vertices covering all but j edges
    Qcover {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        j: usize,
    },
    /// Write an extremal coloring to a file
    Construct {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long, required_if_eq("mode", "lemma"))]
        r1: Option<usize>,
        #[arg(long, required_if_eq("mode", "lemma"))]
        s: Option<usize>,
        #[arg(long, required_if_eq("mode", "clique"))]
        m: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search a colored complete graph for a rainbow copy
    Rainbow {
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Exact maximum number of colors without a rainbow copy
    Oracle {
        #[arg(long)]
        family: PatternSpec,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Omit node counts and timings
        #[arg(long)]
        no_meta: bool,
    },
    /// Compare the oracle with the closed forms over a range of n
    Verify {
        #[arg(long)]
        family: PatternSpec,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PatternArg {
    #[arg(long)]
    family: Option<PatternSpec>,
    /// Pattern in the edge-list format
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Node budget for the exact search
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lemma,
    Clique,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

impl PatternArg {
    fn graph(&self) -> Result<Graph, Failure> {
        match (&self.family, &self.graph) {
            (Some(spec), _) => build_pattern(spec).map_err(usage),
            (None, Some(path)) => parse_graph(&read(path)?).map_err(usage),
            (None, None) => Err(usage("one of --family or --graph is required")),
        }
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    let code = match e {
        OracleError::Infeasible(_) | OracleError::BudgetExhausted(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    };
    usage(e).with_code(code)
}

impl Failure {
    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

/// Executes a parsed command. `Ok` carries the JSON for stdout and the exit
/// code to use.
pub fn execute(cli: &Cli) -> Result<(Value, i32), Failure> {
    match &cli.command {
        Command::Formula { family, n, grid } => {
            let report = |n: i64| ar_family(n, family);
            match grid {
                Some((a, b)) => {
                    let rows: Vec<Value> = (*a..=*b)
                        .map(|n| match report(n) {
                            Ok(r) => r.to_json(),
                            Err(e) => json!({ "family": family.to_string(), "n": n, "error": e.to_string() }),
                        })
                        .collect();
                    Ok((Value::Array(rows), EXIT_OK))
                }
                None => {
                    let n = n.expect("clap requires --n without --grid");
                    Ok((report(n).map_err(usage)?.to_json(), EXIT_OK))
                }
            }
        }
        Command::Qcover { pattern, j } => {
            let r = q_cover(&pattern.graph()?, *j).map_err(usage)?;
            Ok((serde_json::to_value(r).expect("plain struct"), EXIT_OK))
        }
        Command::Construct { mode, n, r1, s, m, out } => {
            let coloring = match mode {
                Mode::Lemma => lemma_coloring(*n, r1.expect("required"), s.expect("required")),
                Mode::Clique => clique_coloring(*n, m.expect("required")),
            }
            .map_err(usage)?;
            std::fs::write(out, serialize_coloring(&coloring)).map_err(|e| usage(format!("{}: {e}", out.display())))?;
            let mode = match mode {
                Mode::Lemma => "lemma",
                Mode::Clique => "clique",
            };
            Ok((
                json!({ "mode": mode, "n": n, "colors": coloring.num_colors(), "out": out.display().to_string() }),
                EXIT_OK,
            ))
        }
        Command::Rainbow { coloring, pattern } => {
            let c = parse_coloring(&read(coloring)?).map_err(usage)?;
            let g = pattern.graph()?;
            let emb = find_rainbow(&c, &g).map_err(usage)?;
            let embedding = emb.as_ref().map(|e| e.map.clone());
            Ok((json!({ "found": emb.is_some(), "embedding": embedding }), EXIT_OK))
        }
        Command::Oracle {
            family,
            n,
            search,
            no_meta,
        } => {
            let out = max_rainbow_free_spec(*n, family, search.budget, search.threads).map_err(oracle_failure)?;
            let code = match out {
                OracleOutcome::Exact(_) => EXIT_OK,
                OracleOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            };
            Ok((out.to_json(!no_meta), code))
        }
        Command::Verify {
            family,
            n_from,
            n_to,
            search,
        } => {
            let report = verify_range(family, *n_from, *n_to, search.budget, search.threads).map_err(oracle_failure)?;
            Ok((report.to_json(), EXIT_OK))
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .format_timestamp(None)
        .try_init();
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. JSON goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    init_logging(cli.verbose);
    match execute(&cli) {
        Ok((value, code)) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json values serialize")
            );
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
