use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use unicayley::algebra::DEFAULT_ORDER_CAP;
use unicayley::cayley::DEFAULT_GRAPH_CAP;
use unicayley::indsets::Budget;

mod commands;

/// Unitary Cayley graphs of finite rings.
///
/// Rings are written as Z(m), GF(q), M(n,R), T(n,R) and prod(R,S,...).
/// Exit status: 0 for a definite answer, 2 when a budget ran out first,
/// 1 for usage and input errors.
#[derive(Parser, Debug)]
#[command(name = "unicayley", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Search-node limit for enumeration and searches.
    #[arg(long, env = "UNICAYLEY_BUDGET_NODES", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit in seconds for enumeration and searches.
    #[arg(long, env = "UNICAYLEY_BUDGET_SECONDS", global = true, value_parser = parse_seconds)]
    pub budget_seconds: Option<f64>,
    /// Enumeration worker threads.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u64).range(1..256))]
    pub threads: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest ring order that may be constructed.
    #[arg(long, env = "UNICAYLEY_MAX_ORDER", default_value_t = DEFAULT_ORDER_CAP, global = true, value_parser = positive)]
    pub max_order: usize,
    /// Largest graph that may be built.
    #[arg(long, env = "UNICAYLEY_MAX_VERTICES", default_value_t = DEFAULT_GRAPH_CAP, global = true, value_parser = positive)]
    pub max_vertices: usize,
}

impl Common {
    pub fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget_nodes, max_time: self.budget_seconds.map(Duration::from_secs_f64) }
    }
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring order, units and radical; or a single arithmetic query.
    Ring(commands::RingArgs),
    /// The unitary Cayley graph.
    Graph(commands::RingOnly),
    /// Independence number with a maximum independent set.
    Alpha(commands::RingOnly),
    /// Decide well-coveredness by enumerating maximal independent sets.
    Wellcovered(commands::WellCoveredArgs),
    /// Answer a question from the structure of the ring alone.
    Classify(commands::ClassifyArgs),
    /// Jacobson radical and the semisimple quotient.
    Radical(commands::RingOnly),
    /// Independence complex: facets, purity, connectivity and shellings.
    Complex(commands::ComplexArgs),
    /// Explicit matrices and witness sets.
    Construct {
        #[command(subcommand)]
        what: commands::Construct,
    },
    /// Edge ideal or Stanley-Reisner ideal in computer-algebra syntax.
    Export(commands::ExportArgs),
    /// Run the built-in verification checks.
    VerifyPaper(commands::VerifyArgs),
}

/// What a command produced, rendered according to `--format`.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub dot: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Definite,
    Inconclusive,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let common = cli.common;
    let result = match cli.command {
        Command::Ring(a) => commands::ring(&common, &a),
        Command::Graph(a) => commands::graph(&common, &a),
        Command::Alpha(a) => commands::alpha(&common, &a),
        Command::Wellcovered(a) => commands::wellcovered(&common, &a),
        Command::Classify(a) => commands::classify(&common, &a),
        Command::Radical(a) => commands::radical(&common, &a),
        Command::Complex(a) => commands::complex(&common, &a),
        Command::Construct { what } => commands::construct(&common, &what),
        Command::Export(a) => commands::export(&common, &a),
        Command::VerifyPaper(a) => commands::verify(&common, &a),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let body = match common.format {
        Format::Text => report.text,
        Format::Json => {
            let mut s = serde_json::to_string(&report.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Dot => match report.dot {
            Some(d) => d,
            None => {
                eprintln!("error: --format dot is only available for the graph command");
                return ExitCode::from(1);
            }
        },
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    match report.status {
        Status::Definite => ExitCode::SUCCESS,
        Status::Inconclusive => ExitCode::from(2),
        Status::Failed => ExitCode::from(1),
    }
}
