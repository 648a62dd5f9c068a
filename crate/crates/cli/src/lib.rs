//! Command-line surface: argument parsing, run configuration, the seven
//! subcommands and their CSV / JSON / text renderings.

mod commands;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::run;
pub use render::{Output, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] wallach_core::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 3 when certification or classification could not
    /// conclude, 4 for internal errors.
    pub fn exit_code(&self) -> i32 {
        use wallach_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::BadLine(_)
                | E::BadParams(_)
                | E::BadParam(_)
                | E::OutOfCube(_)
                | E::OutOfRange(_)
                | E::BoundaryInput
                | E::NonPositiveMetric
                | E::NonPositiveStart
                | E::BadBounds(_)
                | E::BoundaryTriple(_) => 2,
                E::IndistinguishableAtTolerance
                | E::SegmentInconclusive(_)
                | E::CertificationFailure(_)
                | E::DegenerateSystem(_)
                | E::StepTooLarge(_) => 3,
                E::ZeroPolynomial | E::EndpointRoot(_) | E::BothConstant | E::NotIsolating(_) => 4,
            },
            CliError::Invariant(_) | CliError::Io(_) | CliError::Csv(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Core(e) => e.name(),
            CliError::Invariant(_) => "Invariant",
            CliError::Io(_) => "Io",
            CliError::Csv(_) => "Csv",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "wallach", version, about = "Generalized Wallach spaces: regions, Einstein metrics, Ricci flow")]
pub struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Digits after the decimal point in decimal output
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: usize,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps
    #[arg(long, global = true, env = "WALLACH_WORKERS")]
    pub workers: Option<usize>,
    /// Seed for random perturbations
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// The space to work on: an `a` point or a triple `(k, l, m)`.
#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct SpaceArgs {
    /// Exact parameters, e.g. `--a 1/6 1/4 1/3`
    #[arg(long, num_args = 3, value_names = ["A1", "A2", "A3"])]
    pub a: Option<Vec<String>>,
    /// Triple for SO(k+l+m)/SO(k)xSO(l)xSO(m)
    #[arg(long, num_args = 3, value_names = ["K", "L", "M"])]
    pub so: Option<Vec<u64>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region of a point of the open cube
    Classify {
        #[arg(num_args = 3, value_names = ["A1", "A2", "A3"])]
        a: Vec<String>,
    },
    /// Certified Einstein metrics up to homothety
    Solve {
        #[command(flatten)]
        space: SpaceArgs,
        /// Accept a coordinate equal to 1/2
        #[arg(long)]
        boundary: bool,
    },
    /// RK4 trajectory of the normalized Ricci flow
    Flow {
        #[command(flatten)]
        space: SpaceArgs,
        /// Start metric, comma separated
        #[arg(long, default_value = "1,1,1.01")]
        x0: String,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Emit every n-th sample
        #[arg(long, default_value_t = 1)]
        every: usize,
        /// Random volume-preserving relative perturbation of x0 (uses --seed)
        #[arg(long)]
        perturb: Option<f64>,
    },
    /// Reduced field on a grid plus classified equilibria
    Portrait {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        /// `x1lo,x1hi,x2lo,x2hi`; defaults to a box around the equilibria
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Sign of G over small triples
    Census {
        /// Largest k+l+m
        #[arg(long, default_value_t = 18)]
        max: u64,
        /// Also count metrics with the certified solver
        #[arg(long)]
        solve: bool,
        /// Reproduce the 45-row reference table with a status column
        #[arg(long)]
        table3: bool,
    },
    /// Triples with G = 0
    ScanZeros {
        #[arg(long, default_value_t = 30)]
        max: u64,
    },
    /// Catalog of spaces with simple isometry group
    Catalog {
        #[arg(long)]
        line: Option<u32>,
        /// Family parameters for lines 1 to 3
        #[arg(long, num_args = 3, value_names = ["K", "L", "M"])]
        klm: Option<Vec<u64>>,
        /// Family parameter for lines 4 and 5
        #[arg(long)]
        l: Option<u64>,
    },
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: usize,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub workers: usize,
    pub seed: u64,
}

pub const MIN_DIGITS: usize = 6;

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        if cli.digits < MIN_DIGITS {
            return Err(CliError::Usage(format!("--digits must be at least {MIN_DIGITS}")));
        }
        let workers = match cli.workers {
            Some(0) => return Err(CliError::Usage("worker count must be at least 1".into())),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(RunConfig {
            digits: cli.digits,
            format: cli.format,
            output: cli.output.clone(),
            workers,
            seed: cli.seed,
        })
    }
}
