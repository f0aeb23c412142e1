//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Clone, Parser)]
#[command(name = "unital", version, about = "Proto-norms, Unital Norms and geometric-mean regularization")]
pub struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the verification tolerance of the command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Browse the built-in algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Solve for Proto-norm families.
    #[command(subcommand)]
    Protonorm(ProtonormCmd),
    /// Evaluate and verify Unital Norms.
    #[command(subcommand)]
    Unorm(UnormCmd),
    /// Upper-triangular Toeplitz checks.
    #[command(subcommand)]
    Toeplitz(ToeplitzCmd),
    /// Morphisms between Proto-norm families.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// Regularized solutions of linear inverse problems.
    #[command(subcommand)]
    Reg(RegCmd),
    /// Anti-wedge product identities.
    #[command(subcommand)]
    Antiwedge(AntiwedgeCmd),
    /// Runs acceptance criteria 1 to 9 and prints one line per check.
    Suite,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArg {
    /// Catalog id (see `algebra list`) or path to an algebra JSON file.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum AlgebraCmd {
    List,
    Show(AlgebraArg),
}

#[derive(Debug, Clone, Subcommand)]
pub enum ProtonormCmd {
    Solve {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Number of sampled units (default `3·dim²`).
        #[arg(long)]
        samples: Option<usize>,
    },
    TransposeInduced(AlgebraArg),
}

#[derive(Debug, Clone, Subcommand)]
pub enum UnormCmd {
    Eval {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Comma-separated family parameters for catalog algebras.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        params: String,
        /// Comma-separated coordinates of the point.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "segment")]
        path: String,
    },
    /// Compares path integrals with the closed forms on seeded units.
    #[command(name = "verify-table1", alias = "verify")]
    VerifyTable1 {
        /// `all` or a comma-separated list of catalog ids.
        #[arg(long, default_value = "all")]
        rows: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum ToeplitzCmd {
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest matrix size checked (from 2).
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum FunctorCmd {
    /// With `--ideal`, checks `A/I → target`; without it, asks for an
    /// exclusion certificate.
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// JSON list of coordinate vectors spanning the ideal.
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Target algebra (defaults to the quotient itself).
        #[arg(long)]
        target: Option<String>,
        /// Exit with status 2 unless the verdict matches.
        #[arg(long)]
        expect: Option<Expectation>,
    },
    /// The nine reference verdicts.
    Examples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Expectation {
    Exists,
    Excluded,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Problem JSON file, or `none` for a synthetic problem.
    #[arg(long, default_value = "none")]
    pub problem: String,
    #[arg(long, default_value = "i^-2")]
    pub spectrum: String,
    /// Exact solution law in the right singular basis (`i^-p` or `zero`).
    #[arg(long, default_value = "i^-3")]
    pub x_true: String,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Noise level; required for synthetic problems.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Defaults to `delta`.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum RegCmd {
    Run {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "geomfp")]
        method: String,
        /// TSVD truncation level (default: discrepancy principle).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Geometric fixed point with `ε = δ` over a decreasing list of `δ`.
    Converge {
        #[arg(long, default_value = "i^-2")]
        spectrum: String,
        #[arg(long, default_value = "i^-3")]
        x_true: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4,1e-5")]
        delta: Vec<f64>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum AntiwedgeCmd {
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Fixed boost speed; random in [-0.99, 0.99] when absent.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<f64>,
    },
}
