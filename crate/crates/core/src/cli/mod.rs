//! Command-line front end. [`run`] does the work and maps failures onto
//! the documented exit codes; `main` only parses and exits.

mod bench;
mod commands;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::exec::{set_worker_limit, Execution};

pub use bench::{fit_log2_per_n, fit_power_law};

pub const EXIT_OK: u8 = 0;
/// Two methods or a method and the oracle disagree.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
/// Enumeration or grid guard tripped, or an I/O failure.
pub const EXIT_RESOURCE: u8 = 3;
/// Rounding failed even after precision escalation.
pub const EXIT_NUMERIC: u8 = 4;
/// An internal consistency check failed.
pub const EXIT_INTERNAL: u8 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Lib(Error::Io(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Lib(e) => match e {
                Error::GuardExceeded { .. } | Error::Io(_) => EXIT_RESOURCE,
                Error::Rounding { .. } | Error::InexactDivision(_) => EXIT_NUMERIC,
                Error::DegreeBound { .. } | Error::PrecisionMismatch(..) => EXIT_INTERNAL,
                Error::PrecisionTooLow(_)
                | Error::InvalidSpec(_)
                | Error::LengthMismatch { .. }
                | Error::SymbolOutOfRange { .. }
                | Error::EmptyCode
                | Error::Precondition(_)
                | Error::Unsupported(_)
                | Error::Format(_)
                | Error::Json(_) => EXIT_USAGE,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "distenum",
    version,
    about = "Distance enumerators of SC, BLC and VT codes"
)]
pub struct Cli {
    /// Worker threads for the parallel loops; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distance enumerator of one code by one or all methods.
    Spectrum(SpectrumArgs),
    /// Hamming enumerators of VT_a(n), one column per d = gcd(a, n+1).
    Table1(Table1Args),
    /// Cross-checks fast, spectral and B-table results against the oracle.
    Verify(VerifyArgs),
    /// Times the methods over a list of lengths.
    Bench(BenchArgs),
    /// Writes or reads a cached B-table.
    #[command(subcommand)]
    Btable(BtableCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Spectral,
    Fast,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Optimized,
    Naive,
    Direct,
}

impl From<StrategyArg> for crate::vtfast::Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Optimized => crate::vtfast::Strategy::Optimized,
            StrategyArg::Naive => crate::vtfast::Strategy::Naive,
            StrategyArg::Direct => crate::vtfast::Strategy::Direct,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    /// Working precision in bits (at least 64); default 2m + 64.
    #[arg(long, env = "DISTENUM_PRECISION")]
    pub precision: Option<u32>,

    /// Refuse brute-force enumeration of more than 2^BITS words.
    #[arg(long, default_value_t = 34)]
    pub guard_bits: u32,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[command(group = clap::ArgGroup::new("family").required(true).args(["vt", "blc", "spec_file"]))]
pub struct CodeArgs {
    /// VT_a(n); needs --n and --a.
    #[arg(long)]
    pub vt: bool,

    /// Binary linear congruence code; needs --n, --m, --a and --h.
    #[arg(long)]
    pub blc: bool,

    /// Code spec as JSON (`{"kind": "vt" | "blc" | "sc", ...}`).
    #[arg(long)]
    pub spec_file: Option<PathBuf>,

    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub a: Option<u64>,

    #[arg(long)]
    pub m: Option<u64>,

    /// Comma-separated weights, e.g. `--h=1,-2,3`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub h: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub code: CodeArgs,

    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,

    /// hamming | insdel | levenshtein | lee (Lee uses the code alphabet).
    #[arg(long, default_value = "hamming")]
    pub distance: String,

    /// B-table cache to use with the fast method.
    #[arg(long)]
    pub btable: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = StrategyArg::Optimized)]
    pub strategy: StrategyArg,

    #[command(flatten)]
    pub numeric: NumericArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct Table1Args {
    #[arg(long, default_value_t = 15)]
    pub n: usize,

    /// Skip the brute-force cross-check of each column.
    #[arg(long)]
    pub no_brute: bool,

    #[command(flatten)]
    pub numeric: NumericArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Largest VT length for the fast-vs-brute sweep.
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,

    /// Number of random BLC codes for the spectral-vs-brute check.
    #[arg(long, default_value_t = 100)]
    pub corpus: usize,

    #[arg(long, default_value_t = 20240101)]
    pub seed: u64,

    /// Largest modulus for the B-table property suite.
    #[arg(long, default_value_t = 24)]
    pub m_max: u64,

    #[command(flatten)]
    pub numeric: NumericArgs,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchMethod {
    Brute,
    Spectral,
    Fast,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Comma-separated VT lengths.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [BenchMethod::Brute, BenchMethod::Fast])]
    pub methods: Vec<BenchMethod>,

    #[arg(long, default_value_t = 3)]
    pub repeats: usize,

    /// Lengths above this are skipped for the brute-force method.
    #[arg(long, default_value_t = 20)]
    pub brute_max_n: usize,

    #[command(flatten)]
    pub numeric: NumericArgs,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BtableCommand {
    /// Builds the table for modulus m and writes it as JSON.
    Dump {
        #[arg(long)]
        m: u64,

        #[arg(long, value_enum, default_value_t = StrategyArg::Optimized)]
        strategy: StrategyArg,

        #[arg(long, env = "DISTENUM_PRECISION")]
        precision: Option<u32>,

        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reads a cached table and prints a summary.
    Load {
        #[arg(long)]
        input: PathBuf,

        /// Rebuild the table and compare cell by cell.
        #[arg(long)]
        verify: bool,
    },
}

pub(crate) fn open_output(path: Option<&PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn execution(jobs: Option<usize>) -> Execution {
    match jobs {
        Some(1) => Execution::Sequential,
        Some(j) => {
            set_worker_limit(j);
            Execution::Parallel
        }
        None => Execution::default(),
    }
}

/// Runs one parsed command line; diagnostics go to `err`.
pub fn run(cli: Cli, err: &mut dyn Write) -> CliResult<()> {
    let exec = execution(cli.jobs);
    match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a, exec),
        Command::Table1(a) => commands::table1(&a, exec),
        Command::Verify(a) => commands::verify(&a, exec, err),
        Command::Bench(a) => bench::bench(&a, exec),
        Command::Btable(c) => commands::btable(c, exec),
    }
}

/// Entry point shared by the binary: parse, run, report, exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut stderr = io::stderr();
    match run(cli, &mut stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
