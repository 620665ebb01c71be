mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_TABLE: &str = "fixtures/zeros_2001_d3011.txt";
const DEEP_TABLE: &str = "fixtures/zeros_650_d4817.txt";

#[derive(Parser, Debug)]
#[command(name = "gosc", version, about = "Rigorous bounds on the oscillation of the Goldbach summatory term")]
struct Cli {
    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unconditional upper bound on |G(x)|.
    UpperBound(UpperBoundArgs),
    /// Conditional lower bounds for a list of N at fixed ε.
    ConditionalTable(ConditionalArgs),
    /// Lattice reduction search for approximation witnesses.
    Otr(OtrArgs),
    /// Certify the bundled published witnesses over the first K zeros.
    #[command(name = "verify-figure1")]
    VerifyFigure1(Figure1Args),
    /// Compare Σ R(n) with the explicit formula.
    Goldbach(GoldbachArgs),
    /// Validate zero-table fixtures and print their identifiers.
    GenFixturesCheck(FixturesArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Zero table file.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Working precision in bits.
    #[arg(long, default_value_t = gosc_core::DEFAULT_PREC)]
    pub precision: u32,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Common {
    pub fn table_or(&self, default: &str) -> PathBuf {
        self.table.clone().unwrap_or_else(|| PathBuf::from(default))
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Args, Debug)]
pub struct UpperBoundArgs {
    #[command(flatten)]
    pub common: Common,
    /// Truncation height of the γ⁻⁴ sum.
    #[arg(long = "t1", default_value = "1420.41")]
    pub t1: String,
    /// Truncation height of the γ⁻⁶ sum.
    #[arg(long = "t2", default_value = "1420.41")]
    pub t2: String,
}

#[derive(Args, Debug)]
pub struct ConditionalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated list of zero counts.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,
    #[arg(long, default_value = "0.01")]
    pub eps: String,
}

#[derive(Args, Debug)]
pub struct OtrArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    /// Lattice precision b.
    #[arg(long)]
    pub bits: u32,
    #[arg(long, default_value_t = gosc_core::otr::DEFAULT_C)]
    pub c: u32,
    #[arg(long, default_value_t = gosc_core::otr::DEFAULT_D)]
    pub d: u32,
    /// ε above which a run is considered under-precisioned.
    #[arg(long, default_value = "0.01")]
    pub eps: String,
    /// Extra attempts with a larger b when ε exceeds the threshold.
    #[arg(long, default_value_t = 0)]
    pub retries: u32,
    /// Increase of b per retry; defaults to b/4.
    #[arg(long)]
    pub bits_step: Option<u32>,
    /// Directory for the witness records; defaults to the directory of --out, else the current one.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Figure1Args {
    #[command(flatten)]
    pub common: Common,
    /// Number of leading zeros to verify against.
    #[arg(long, default_value_t = 70)]
    pub depth: usize,
}

#[derive(Args, Debug)]
pub struct GoldbachArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated list of x values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<u64>,
    /// Truncation height of the zero sum.
    #[arg(long = "t", default_value = "1420")]
    pub t: String,
    #[arg(long, default_value_t = gosc_core::goldbach::DEFAULT_MAX_X)]
    pub max_x: u64,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    /// Tables to check; defaults to the bundled fixtures.
    pub tables: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "warn" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();

    let result = match &cli.command {
        Command::UpperBound(args) => commands::upper_bound(args, DEFAULT_TABLE),
        Command::ConditionalTable(args) => commands::conditional_table(args, DEFAULT_TABLE),
        Command::Otr(args) => commands::otr(args, DEFAULT_TABLE),
        Command::VerifyFigure1(args) => commands::verify_figure1(args, DEEP_TABLE),
        Command::Goldbach(args) => commands::goldbach(args, DEFAULT_TABLE),
        Command::GenFixturesCheck(args) => commands::fixtures_check(args, &[DEFAULT_TABLE, DEEP_TABLE]),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
