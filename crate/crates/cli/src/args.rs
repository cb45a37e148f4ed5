use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Representation-dimension bounds, induced-generator witnesses and
/// verification suites for Hecke and symmetric group algebras.
#[derive(Debug, Parser)]
#[command(name = "repdim", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Maximal syzygy depth (and Ext degree); defaults depend on the command.
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    /// Largest group order (equivalently Hecke algebra dimension) to build.
    #[arg(long, global = true, default_value_t = 5040)]
    pub max_order: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form lower and upper bounds.
    Bounds(BoundsArgs),
    /// Run an induced-generator pipeline and report the bound it witnesses.
    Witness(WitnessArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Build an algebra, write its serialization and check the round trip.
    Algebra(AlgebraArgs),
    /// List the indecomposable modules of a serial algebra.
    Indecomposables(AlgebraArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bounds(_) => "bounds",
            Command::Witness(_) => "witness",
            Command::Verify(_) => "verify",
            Command::Algebra(_) => "algebra",
            Command::Indecomposables(_) => "indecomposables",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "heckeA")]
    HeckeA,
    #[value(name = "heckeB")]
    HeckeB,
    #[value(name = "heckeD")]
    HeckeD,
    #[value(name = "arikiKoike")]
    ArikiKoike,
    /// `kS_n` over `F_p`.
    #[value(name = "group")]
    Group,
    /// `kC_n` for the cyclic group of order `n`.
    #[value(name = "cyclic")]
    Cyclic,
    /// `k[x]/(x^n)`.
    #[value(name = "truncated")]
    Truncated,
}

/// Parameters shared by the commands that build an algebra.
#[derive(Clone, Debug, Args)]
pub struct Params {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Number of points (rank of the Coxeter group, or `n` in `x^n`).
    #[arg(long)]
    pub n: Option<usize>,
    /// Order of the root of unity `q`.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Characteristic for group algebras.
    #[arg(long)]
    pub p: Option<usize>,
    /// Second type-B parameter, written in the field of `q` (`z` is the root
    /// of unity, e.g. `2` or `1 + 3*z`).
    #[arg(long = "Q", alias = "big-q")]
    pub big_q: Option<String>,
    /// Ariki–Koike cyclotomic parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Field characteristic for cyclic and truncated algebras (0 for ℚ).
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
}

#[derive(Clone, Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: Params,
}

#[derive(Clone, Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub params: Params,
    /// Write the serialized algebras and modules into this directory
    /// (defaults to `$REPDIM_OUT_DIR` when that is set).
    #[arg(long)]
    pub artifacts: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Casimir,
    Trace,
    ExtInjectivity,
    Mackey,
    Xi,
    GldimComparison,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Casimir => "casimir",
            Suite::Trace => "trace",
            Suite::ExtInjectivity => "ext-injectivity",
            Suite::Mackey => "mackey",
            Suite::Xi => "xi",
            Suite::GldimComparison => "gldim-comparison",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubKind {
    /// Sylow subgroup (groups) or maximal ℓ-parabolic (Hecke algebras).
    Default,
    /// The scalars.
    Scalar,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Defaults to `group` for the mackey suite and `truncated` for xi.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Subalgebra for the casimir suite.
    #[arg(long, value_enum, default_value_t = SubKind::Default)]
    pub sub: SubKind,
    /// Composition of `n` picking a parabolic subalgebra (casimir, heckeA).
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<usize>,
    /// Sample count for the trace suite.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Highest Ext degree for the ext-injectivity suite.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Second truncation degree for the xi suite (defaults to `n`).
    #[arg(long)]
    pub n2: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct AlgebraArgs {
    #[command(flatten)]
    pub params: Params,
    /// Serialization file (defaults to `<name>.alg` under `$REPDIM_OUT_DIR`,
    /// or the current directory).
    #[arg(long)]
    pub file: Option<PathBuf>,
}
