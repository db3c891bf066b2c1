//! Command-line front end: certified case bounds, family analysis, and the
//! brute-force searches.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "nagel2",
    version,
    about = "Exact LP bounds and small-case checks for union-closed families"
)]
struct Cli {
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also print decimal approximations of rational values.
    #[arg(long, global = true)]
    approx: bool,
    /// Cap the number of worker threads.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The grid of case bounds for |S| = 4, 5 and |C| = 0, 1, 2, 3+.
    Table(TableArgs),
    /// One certified case bound.
    SolveCase(SolveCaseArgs),
    /// The base program bound.
    SolveBase(SolveBaseArgs),
    /// Minimize another objective over the base program.
    MinObjective(MinObjectiveArgs),
    /// Frequencies, minimal 2-good sets and trace counts of a family.
    Analyze(AnalyzeArgs),
    /// Minimal covers of a family and the involution check.
    Covers(FamilyInput),
    /// Exhaustive f_2 >= 1/3 check over union-closed families covering {1..n}.
    SearchNagel(SearchNagelArgs),
    /// Counting checks of the three lemmas for one family and base set.
    CheckLemmas(CheckLemmasArgs),
    /// Minimal-cover involution over all antichains up to n (sampled at 5).
    CoverTheorem(CoverTheoremArgs),
    /// Lemma counting checks over a seeded random corpus.
    LemmaCorpus(LemmaCorpusArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Embed the dual or Farkas weights (JSON only).
    #[arg(long)]
    certificates: bool,
    /// Write each cell's program in LP text form into this directory.
    #[arg(long, value_name = "DIR")]
    dump_lp: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveCaseArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
    s: u8,
    /// Number of covered elements; 3 stands for 3 or more.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
    c: u8,
    /// Print the program in LP text form before the result.
    #[arg(long)]
    dump_lp: bool,
    /// Print the primal point and certificate weights.
    #[arg(long)]
    certificate: bool,
}

#[derive(Args, Debug)]
struct SolveBaseArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
    s: u8,
    /// Add the q_b + q_c + q_bc constraint (|S| = 5 only).
    #[arg(long)]
    aux_bc: bool,
    #[arg(long)]
    dump_lp: bool,
    #[arg(long)]
    certificate: bool,
}

#[derive(Args, Debug)]
struct MinObjectiveArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
    s: u8,
    /// `q_singleton` (q_a), `sum_singletons`, `total`, or variable names
    /// joined by `+` such as `q_a+q_ab`.
    #[arg(long)]
    objective: String,
    #[arg(long)]
    certificate: bool,
}

#[derive(Args, Debug)]
struct FamilyInput {
    /// Family file (`.json` or text).
    file: PathBuf,
    /// Override the format implied by the extension.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: FamilyInput,
    /// Base set for trace counts, e.g. `2,3,4`.
    #[arg(long)]
    base: Option<String>,
    /// Add the empty set before analysing.
    #[arg(long)]
    add_empty: bool,
}

#[derive(Args, Debug)]
struct SearchNagelArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
    n: u8,
    /// Only families containing the empty set.
    #[arg(long)]
    require_empty: bool,
    /// Only families with at most this many members.
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Args, Debug)]
struct CheckLemmasArgs {
    #[command(flatten)]
    input: FamilyInput,
    /// Minimal 2-good base set, e.g. `2,3,4`.
    #[arg(long)]
    base: String,
}

#[derive(Args, Debug)]
struct CoverTheoremArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=5))]
    n_max: u8,
}

#[derive(Args, Debug)]
struct LemmaCorpusArgs {
    #[arg(long, default_value_t = 1000)]
    instances: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
enum CliError {
    /// Bad arguments or an I/O problem: exit 1.
    Usage(String),
    /// The input family is unreadable or violates a requirement: exit 2.
    Input(String),
    /// A certificate or self-check failed: exit 3.
    Consistency(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Consistency(m) => m,
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let approx = cli.approx;
    match &cli.command {
        Command::Table(a) => commands::table(a, approx),
        Command::SolveCase(a) => commands::solve_case(a, approx),
        Command::SolveBase(a) => commands::solve_base(a, approx),
        Command::MinObjective(a) => commands::min_objective(a, approx),
        Command::Analyze(a) => commands::analyze(a, approx),
        Command::Covers(a) => commands::covers(a),
        Command::SearchNagel(a) => commands::search_nagel(a),
        Command::CheckLemmas(a) => commands::check_lemmas(a),
        Command::CoverTheorem(a) => commands::cover_theorem(a),
        Command::LemmaCorpus(a) => commands::lemma_corpus(a),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match cli.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.into())
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn emit(cli: &Cli, output: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("writing output: {e}"));
    match &cli.out {
        Some(path) => std::fs::write(path, output).map_err(io),
        None => std::io::stdout().write_all(output.as_bytes()).map_err(io),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
