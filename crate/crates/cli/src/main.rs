use std::fmt::Write as _;
use std::io::{IsTerminal, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invhecke::braid::{braid_graph_dot, verify_connectivity_rank, BraidGraph};
use invhecke::eta::{
    apply_theta, theta_plan, verify_conjecture, DEFAULT_SEED, EXACT_RANK_CAP, VERIFY_RANK_CAP,
};
use invhecke::istar::{enumerate_involutions, reduced_istar_expressions};
use invhecke::rsk::{
    hook_length_count, involution_count_identity, partitions, rsk_insert, std_count,
};
use invhecke::{Error, IStarWord, Involution, LvTable, Permutation, VerifyOptions};

/// Largest rank for listing commands (involutions, rho, rsk).
const LIST_RANK_CAP: usize = 10;
/// Largest rank for commands that enumerate reduced expressions.
const EXPRESSION_RANK_CAP: usize = 7;
/// Largest rank for the bar-invariant basis table.
const PSIGMA_RANK_CAP: usize = 6;
/// Largest rank verified without `--slow`.
const FAST_VERIFY_CAP: usize = 5;

#[derive(Parser)]
#[command(
    name = "invhecke",
    version,
    about = "Involutions in S_n, braid moves on reduced I*-expressions, and the Hecke module of involutions"
)]
struct Cli {
    /// Output format; `dot` is only meaningful for braid-graph.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the specialization point used by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for parallel checks.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,

    /// Report `elapsed_ms` as 0 so that output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the involutions of S_n.
    Involutions {
        #[arg(long)]
        n: usize,
    },
    /// Rank of an involution: the length of its reduced I*-expressions.
    Rho {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
    },
    /// All reduced I*-expressions of an involution.
    Expressions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
    },
    /// The braid-move graph on the reduced I*-expressions of an involution.
    BraidGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        /// Emit Graphviz DOT (same as `--format dot`).
        #[arg(long)]
        dot: bool,
    },
    /// Check that every braid-move graph of rank n is connected.
    VerifyBraid {
        #[arg(long)]
        n: usize,
    },
    /// Polynomials P_{y,w} of the bar-invariant basis.
    Psigma {
        #[arg(long)]
        n: usize,
        /// Restrict to a single w.
        #[arg(long)]
        w: Option<String>,
    },
    /// Operator steps and the image of X_∅ along a reduced I*-expression.
    Theta {
        #[arg(long)]
        n: usize,
        /// Comma-separated generator indices, e.g. `1,2`.
        #[arg(long)]
        word: String,
    },
    /// Verify that H X_∅ has dimension equal to the number of involutions.
    Verify {
        #[arg(long)]
        n: usize,
        /// Allow n = 6.
        #[arg(long)]
        slow: bool,
        /// Also compute the rank over Z[v, v^-1] exactly (n <= 3).
        #[arg(long)]
        exact: bool,
    },
    /// Robinson-Schensted tableaux of w, or tableau counts for rank n.
    Rsk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RankMismatch(..)
            | Error::InvalidPermutation(_)
            | Error::InvalidGenerator { .. }
            | Error::NotAnInvolution(_)
            | Error::RankTooLarge { .. }
            | Error::Parse(_)
            | Error::NotReduced { .. }
            | Error::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// What a command produced: JSON, a text rendering, and whether the
/// verification it ran succeeded.
struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            dot: None,
            ok: true,
        }
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn verdict(&self, ok: bool) -> String {
        match (ok, self.color) {
            (true, true) => "\x1b[32mPASS\x1b[0m".to_string(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".to_string(),
            (true, false) => "PASS".to_string(),
            (false, false) => "FAIL".to_string(),
        }
    }
}

fn check_rank(n: usize, cap: usize) -> Result<(), Failure> {
    if n == 0 || n > cap {
        return Err(Failure::Usage(format!(
            "--n must be between 1 and {cap}, got {n}"
        )));
    }
    Ok(())
}

fn parse_involution(n: usize, s: &str) -> Result<Involution, Failure> {
    let w: Involution = s.parse()?;
    if w.n() != n {
        return Err(Failure::Usage(format!(
            "{s} has rank {}, expected {n}",
            w.n()
        )));
    }
    Ok(w)
}

fn letters(word: &IStarWord) -> Value {
    json!(word.letters())
}

fn run(cli: &Cli, style: &Style) -> Result<Output, Failure> {
    match &cli.command {
        Command::Involutions { n } => {
            check_rank(*n, LIST_RANK_CAP)?;
            let ws = enumerate_involutions(*n);
            let text = ws.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output::new(json!(ws), text))
        }
        Command::Rho { n, w } => {
            check_rank(*n, LIST_RANK_CAP)?;
            let w = parse_involution(*n, w)?;
            Ok(Output::new(json!(w.rho()), format!("{}\n", w.rho())))
        }
        Command::Expressions { n, w } => {
            check_rank(*n, EXPRESSION_RANK_CAP)?;
            let w = parse_involution(*n, w)?;
            let words = reduced_istar_expressions(&w)?;
            let text = words.iter().map(|x| format!("{x}\n")).collect();
            Ok(Output::new(
                Value::Array(words.iter().map(letters).collect()),
                text,
            ))
        }
        Command::BraidGraph { n, w, .. } => {
            check_rank(*n, EXPRESSION_RANK_CAP)?;
            let w = parse_involution(*n, w)?;
            let g = BraidGraph::build(&w)?;
            let edges: Vec<Value> = g
                .edges
                .iter()
                .map(|(a, b, kind)| json!({"from": a, "to": b, "kind": kind}))
                .collect();
            let mut text = String::new();
            for v in &g.vertices {
                writeln!(text, "{v}").unwrap();
            }
            for (a, b, kind) in &g.edges {
                writeln!(text, "{} -- {} {kind}", g.vertices[*a], g.vertices[*b]).unwrap();
            }
            let json = json!({
                "involution": w,
                "vertices": g.vertices.iter().map(letters).collect::<Vec<_>>(),
                "edges": edges,
            });
            let mut out = Output::new(json, text);
            out.dot = Some(braid_graph_dot(&w)?);
            Ok(out)
        }
        Command::VerifyBraid { n } => {
            check_rank(*n, EXPRESSION_RANK_CAP)?;
            let reports = verify_connectivity_rank(*n)?;
            let ok = reports.iter().all(|r| r.connected);
            let mut text = String::new();
            for r in &reports {
                writeln!(
                    text,
                    "{} {} vertices={} edges={} diameter={}",
                    style.verdict(r.connected),
                    r.involution,
                    r.vertices,
                    r.edges,
                    r.diameter
                )
                .unwrap();
            }
            writeln!(
                text,
                "{} all {} graphs connected",
                style.verdict(ok),
                reports.len()
            )
            .unwrap();
            let json = json!({"n": n, "all_connected": ok, "graphs": reports});
            let mut out = Output::new(json, text);
            out.ok = ok;
            Ok(out)
        }
        Command::Psigma { n, w } => {
            check_rank(*n, PSIGMA_RANK_CAP)?;
            let only = w.as_deref().map(|w| parse_involution(*n, w)).transpose()?;
            let table = LvTable::new(*n)?;
            let rows: Vec<_> = table
                .rows()
                .into_iter()
                .filter(|r| only.as_ref().is_none_or(|w| &r.w == w))
                .collect();
            let mut text = String::new();
            for r in &rows {
                writeln!(text, "{}\t{}\t{}", r.y, r.w, r.text).unwrap();
            }
            Ok(Output::new(json!(rows), text))
        }
        Command::Theta { n, word } => {
            check_rank(*n, VERIFY_RANK_CAP)?;
            let word = IStarWord::parse(*n, word)?;
            let plan = theta_plan(&word)?;
            let image = apply_theta(&plan, *n)?;
            let w = word.eval();
            let mut text = format!("word {word} evaluates to {w}\n");
            for step in &plan.steps {
                writeln!(text, "{}", serde_json::to_string(step).unwrap()).unwrap();
            }
            writeln!(text, "{image}").unwrap();
            let json = json!({
                "word": letters(&word),
                "involution": w,
                "steps": plan.steps,
                "image": image,
            });
            Ok(Output::new(json, text))
        }
        Command::Verify { n, slow, exact } => {
            check_rank(*n, VERIFY_RANK_CAP)?;
            if *n > FAST_VERIFY_CAP && !slow {
                return Err(Failure::Usage(format!("verify --n {n} requires --slow")));
            }
            if *exact && *n > EXACT_RANK_CAP {
                return Err(Failure::Usage(format!(
                    "--exact supports n <= {EXACT_RANK_CAP}, got {n}"
                )));
            }
            let opts = VerifyOptions {
                seed: cli.seed,
                exact: *exact,
            };
            let mut report = verify_conjecture(*n, &opts)?;
            if cli.no_timing {
                report.elapsed_ms = 0;
            }
            let json = serde_json::to_value(&report).unwrap();
            let mut text = String::new();
            if let Value::Object(map) = &json {
                for (k, v) in map {
                    writeln!(text, "{k}: {v}").unwrap();
                }
            }
            writeln!(
                text,
                "{} dim H X_∅ = {} for {} involutions",
                style.verdict(report.conjecture_certified),
                report.dim_image,
                report.involution_count
            )
            .unwrap();
            let mut out = Output::new(json, text);
            out.ok = report.conjecture_certified;
            Ok(out)
        }
        Command::Rsk { n, w: Some(w) } => {
            check_rank(*n, LIST_RANK_CAP)?;
            let w: Permutation = w.parse()?;
            if w.n() != *n {
                return Err(Failure::Usage(format!(
                    "{w} has rank {}, expected {n}",
                    w.n()
                )));
            }
            let (p, q) = rsk_insert(&w);
            let text = format!("shape {}\nP:\n{p}\nQ:\n{q}\n", p.shape());
            let json = json!({
                "w": w,
                "shape": p.shape(),
                "p": p,
                "q": q,
                "involution": w.is_involution(),
            });
            Ok(Output::new(json, text))
        }
        Command::Rsk { n, w: None } => {
            check_rank(*n, LIST_RANK_CAP)?;
            let identity = involution_count_identity(*n);
            let shapes: Vec<Value> = partitions(*n)
                .iter()
                .map(|l| json!({"shape": l, "std_count": std_count(l), "hook_length_count": hook_length_count(l).to_string()}))
                .collect();
            let mut text = String::new();
            for l in partitions(*n) {
                writeln!(text, "{l}\t{}", std_count(&l)).unwrap();
            }
            writeln!(
                text,
                "{} sum of #Std = {}, involutions = {}",
                style.verdict(identity.equal),
                identity.lhs,
                identity.rhs
            )
            .unwrap();
            let mut out = Output::new(
                json!({"n": n, "shapes": shapes, "identity": identity}),
                text,
            );
            out.ok = identity.equal;
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let wants_dot = matches!(cli.command, Command::BraidGraph { dot: true, .. });
    let format = if wants_dot { Format::Dot } else { cli.format };
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    let style = Style {
        color: format == Format::Text && !no_color && std::io::stdout().is_terminal(),
    };

    let out = match run(&cli, &style) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let rendered = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap()),
        Format::Text => out.text,
        Format::Dot => match out.dot {
            Some(dot) => dot,
            None => {
                eprintln!("error: --format dot is only available for braid-graph");
                return ExitCode::from(2);
            }
        },
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(rendered.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
