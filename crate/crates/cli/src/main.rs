//! `weightlab`: weight spectral sequences of real toric varieties, filtered
//! ℤ₂ chain complexes, cubical diagrams and Euler-calculus chains.
//!
//! Exit codes: 0 on success, 2 for unreadable or unparseable input, 3 when
//! input parses but fails validation, 4 when a property check fails.

mod commands;
mod render;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weightlab::checks::Suite;
use weightlab::cubical::CubicalError;
use weightlab::euler::EulerError;
use weightlab::fcomplex::FcomplexError;
use weightlab::toricfan::ToricError;

#[derive(Parser, Debug)]
#[command(name = "weightlab", version, about = "Weight spectral sequences over Z/2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarize a fan: rays, cones, f-vector, cell counts and the orbit sum.
    FanInfo {
        #[command(flatten)]
        fan: FanSource,
        /// Size parameter for `--standard`.
        #[arg(long, requires = "standard")]
        param: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pages of a weight spectral sequence with their first-quadrant reindexing.
    Ss(SsArgs),
    /// Virtual Poincaré polynomial of a fan, against the orbit sum.
    Vpoly {
        #[command(flatten)]
        fan: FanSource,
        /// Size parameter for `--standard`.
        #[arg(long, requires = "standard")]
        param: Option<i64>,
        /// `first-page` reads β off E¹ in the subgroup basis; `pages` runs the full sequence.
        #[arg(long, value_enum, default_value_t = Method::FirstPage)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in property suites over the fixture corpus.
    Check {
        /// toric, euler, fcomplex, cubical, all or none.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Simple filtered complex of a cubical diagram, or the comparison for a hyperresolution.
    CubicalSs(CubicalArgs),
    /// Euler calculus on a finite cell complex: integrals, links, chains and pushforwards.
    Euler(EulerArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FanSource {
    /// Fan document.
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// Built-in fan: P, trivial, affine, hirzebruch, P1xP1, P112, A1, P2-minus-cone, square-cone.
    #[arg(long)]
    pub standard: Option<String>,
}

#[derive(Args, Debug)]
pub struct SsArgs {
    #[command(flatten)]
    pub input: SsInput,
    /// Size parameter for `--standard`.
    #[arg(long, requires = "standard")]
    pub param: Option<i64>,
    /// Defaults to toric for fans, file for complexes and skeleton for hyperresolutions.
    #[arg(long, value_enum)]
    pub filtration: Option<FiltrationKind>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the filtered complex that was analysed, as a complex document.
    #[arg(long)]
    pub emit_complex: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SsInput {
    /// Fan document.
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// Built-in fan, as for `fan-info`.
    #[arg(long)]
    pub standard: Option<String>,
    /// Complex document, with or without a filtration.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Hyperresolution document.
    #[arg(long)]
    pub hyperres: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CubicalArgs {
    #[command(flatten)]
    pub input: CubicalInput,
    /// Replace every object's filtration by the canonical one.
    #[arg(long, requires = "diagram")]
    pub canonical: bool,
    /// Complement complex for an inclusion arrow; runs the additivity check.
    #[arg(long, requires = "diagram")]
    pub complement: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CubicalInput {
    /// Diagram document.
    #[arg(long)]
    pub diagram: Option<PathBuf>,
    /// Hyperresolution document.
    #[arg(long)]
    pub hyperres: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EulerArgs {
    /// Cell complex document; defaults to the one named by the function document.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Constructible function document.
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Chain document.
    #[arg(long)]
    pub chain: Option<PathBuf>,
    /// Cellular map document; needs `--target`.
    #[arg(long, requires = "target")]
    pub map: Option<PathBuf>,
    /// Target cell complex of `--map`.
    #[arg(long, requires = "map")]
    pub target: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// JSON document.
    Doc,
    Csv,
    /// Aligned columns.
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    Toric,
    Canonical,
    Skeleton,
    File,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    FirstPage,
    Pages,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failed invocation and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::Parse(_) => Failure::parse(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<FcomplexError> for Failure {
    fn from(e: FcomplexError) -> Self {
        match e {
            FcomplexError::Parse(_) => Failure::parse(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<CubicalError> for Failure {
    fn from(e: CubicalError) -> Self {
        match e {
            CubicalError::Parse(_) | CubicalError::Complex(FcomplexError::Parse(_)) => Failure::parse(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<EulerError> for Failure {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::Parse(_) => Failure::parse(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

/// Output text, and whether a property check in it failed.
pub struct Report {
    pub text: String,
    pub failed: bool,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("WEIGHTLAB_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::parse(format!("WEIGHTLAB_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::invalid(format!("cannot size the thread pool: {e}")))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    configure_threads()?;
    match cli.command {
        Command::FanInfo { fan, param, format } => commands::fan_info(&fan, param, format),
        Command::Ss(args) => commands::ss(&args),
        Command::Vpoly { fan, param, method, format } => commands::vpoly(&fan, param, method, format),
        Command::Check { suite, format } => Ok(commands::check(suite, format)),
        Command::CubicalSs(args) => commands::cubical_ss(&args),
        Command::Euler(args) => commands::euler(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(report.text.as_bytes());
            if report.failed {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
