use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use casimir_core::sampling::DEFAULT_SEED;

/// Exact construction and verification of central elements of U(gl_N),
/// U(so_N) and U(g2).
///
/// Exit status: 0 when every verdict holds, 1 when a mathematical claim is
/// falsified (the witness is printed), 2 on usage errors.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
pub struct Cli {
    /// Width of the parallel reductions. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Permit computations that may run for hours.
    #[arg(long, global = true)]
    pub allow_long: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a Lie algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Omega tensors over the imaginary octonion units.
    Omega {
        #[command(subcommand)]
        action: OmegaCmd,
    },
    /// Commutative invariants of M.
    Poly {
        #[command(subcommand)]
        action: PolyCmd,
    },
    /// Central elements of the enveloping algebra.
    Element {
        #[command(subcommand)]
        action: ElementCmd,
    },
    /// Pfaffian and determinant identities.
    Relations {
        #[command(subcommand)]
        action: RelationsCmd,
    },
    /// Run the quick verification suite.
    Selftest,
    /// Time representative workloads with one thread and with the full pool.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Basis, dimensions and structure checks (e.g. `--name so4`, `gl3`, `g2`).
    Info {
        #[arg(long)]
        name: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OmegaCmd {
    /// Nonzero entries of the order-k omega tensor, one JSON object per line.
    Table {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyFamily {
    Trace,
    Pf,
    Det,
    Ck,
    Sumpf2,
    G,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    General,
    Skew,
}

#[derive(Debug, Subcommand)]
pub enum PolyCmd {
    /// Checks that a family polynomial is annihilated by every basis element.
    VerifyInvariant {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum)]
        family: PolyFamily,
        /// JSON parameters, e.g. '{"k":2}', '{"indices":[1,2,3,4]}',
        /// '{"rows":[3],"cols":[3]}'. Matrix indices are 1-based.
        #[arg(long)]
        params: Option<String>,
        /// Graph document for `--family graph`.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Override the family's natural domain.
        #[arg(long, value_enum)]
        domain: Option<DomainArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ElementFamily {
    Casimir,
    Det,
    Pf,
    Sumpf2,
    #[value(name = "g2G", alias = "g2g")]
    G2G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetMode {
    Polynomial,
    Spot,
}

#[derive(Debug, Subcommand)]
pub enum ElementCmd {
    /// Builds a central element and verifies it.
    Build {
        #[arg(long, value_enum)]
        family: ElementFamily,
        /// JSON parameters: "N", "k", "algebra", "rows", "cols".
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Reads an element (or a `build` output) and checks centrality.
    VerifyCentral {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use the uncached leftmost-inversion rewriter.
        #[arg(long)]
        brute_force: bool,
    },
    /// Degree-seven g2 check against the 7x7 determinant.
    G2DetCheck {
        #[arg(long, value_enum, default_value_t = DetMode::Polynomial)]
        mode: DetMode,
        /// 1-based basis generators for spot mode.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
        generators: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RelationsCmd {
    /// Evaluates one identity: 1, 2, 3, 4 or `charpoly`.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Repetitions per workload.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
}
