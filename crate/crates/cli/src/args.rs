use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Local cohomology with respect to a pair of ideals.
///
/// Ideal arguments are either names declared in the session file or
/// comma-separated polynomials in the session ring.
#[derive(Debug, Parser)]
#[command(name = "pairloc", version)]
pub struct Cli {
    /// Session file declaring the ring and named ideals.
    #[arg(long, global = true)]
    pub session: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Leave timings out so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,
    /// Seed for randomized suites; overrides the session option.
    #[arg(long, global = true, env = "PAIRLOC_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// The pair `(I, J)`.
#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long = "I")]
    pub i: String,
    #[arg(long = "J")]
    pub j: String,
}

/// The pair `(I, J)` acting on `R/K`.
#[derive(Debug, Args)]
pub struct ContextArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Module `R/K`; defaults to `R`.
    #[arg(long = "K", default_value = "0")]
    pub k: String,
}

#[derive(Debug, Args)]
pub struct TwoIdeals {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct IdealPoly {
    #[arg(long)]
    pub ideal: String,
    #[arg(long)]
    pub poly: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BettiMethod {
    Koszul,
    Hochster,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb {
        #[arg(long)]
        ideal: String,
    },
    /// Ideal membership.
    Member(IdealPoly),
    /// Radical membership.
    RadicalMember(IdealPoly),
    Intersect(TwoIdeals),
    /// Ideal quotient `(a : b)`.
    Colon(TwoIdeals),
    /// Saturation `(a : b^∞)`.
    Saturate(TwoIdeals),
    /// Krull dimension of `R/ideal`.
    Dim {
        #[arg(long)]
        ideal: String,
    },
    /// Whether the prime `p` lies in `W(I, J)`.
    WMember {
        #[arg(long)]
        p: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Whether the ideal `a` lies in `W̃(I, J)`.
    WtildeMember {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Search for `a^n + j ∈ p` with `j ∈ J`.
    SCertificate {
        #[arg(long)]
        p: String,
        /// A polynomial.
        #[arg(long)]
        a: String,
        #[arg(long = "J")]
        j: String,
        /// Extra multipliers for the generators of `J`.
        #[arg(long)]
        pool: Vec<String>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Lift of `Γ_{I,J}(R/K)` for monomial `K`.
    Gamma(ContextArgs),
    /// Whether `x` (read in `R/K`) is `(I, J)`-torsion.
    GammaMember {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Whether all of `R/K` is `(I, J)`-torsion.
    IsTorsion(ContextArgs),
    /// Depth of `R/K` for monomial `K`.
    Depth {
        #[arg(long = "K")]
        k: String,
    },
    /// Depth of `R/K` localized at a face prime.
    DepthAtFace {
        #[arg(long = "K")]
        k: String,
        /// Comma-separated variables generating the face prime.
        #[arg(long)]
        face: String,
    },
    /// Multigraded Betti numbers of `R/K`.
    Betti {
        #[arg(long = "K")]
        k: String,
        #[arg(long, value_enum, default_value = "koszul")]
        method: BettiMethod,
    },
    /// Lowest nonvanishing degree as an infimum of depths over `W(I, J)`.
    PairDepth {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Additional candidate prime; repeatable.
        #[arg(long)]
        extra: Vec<String>,
    },
    /// Upper vanishing bounds.
    Bounds(ContextArgs),
    /// Top nonvanishing degree for `I + J` primary to the irrelevant ideal.
    TopDegree(ContextArgs),
    /// Vanishing of the cohomology in degree `dim R/K`.
    Lh(ContextArgs),
    /// Upper bound for the arithmetic rank of `I` modulo `√(J + K)`.
    AraBound(ContextArgs),
    /// Term lattice of the Čech complex of a generator list.
    Cech {
        /// Comma-separated polynomials.
        #[arg(long)]
        a: String,
        #[arg(long = "J")]
        j: String,
        /// Module for the position-0 kernel; defaults to `R`.
        #[arg(long = "K", default_value = "0")]
        k: String,
        /// Drop factors with `a_i ∈ √J`.
        #[arg(long)]
        collapse: bool,
    },
    /// Run a randomized property suite.
    Check {
        #[arg(long)]
        suite: String,
        /// Defaults to the suite's standard sample count.
        #[arg(long)]
        samples: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Member(_) => "member",
            Command::RadicalMember(_) => "radical-member",
            Command::Intersect(_) => "intersect",
            Command::Colon(_) => "colon",
            Command::Saturate(_) => "saturate",
            Command::Dim { .. } => "dim",
            Command::WMember { .. } => "w-member",
            Command::WtildeMember { .. } => "wtilde-member",
            Command::SCertificate { .. } => "s-certificate",
            Command::Gamma(_) => "gamma",
            Command::GammaMember { .. } => "gamma-member",
            Command::IsTorsion(_) => "is-torsion",
            Command::Depth { .. } => "depth",
            Command::DepthAtFace { .. } => "depth-at-face",
            Command::Betti { .. } => "betti",
            Command::PairDepth { .. } => "pair-depth",
            Command::Bounds(_) => "bounds",
            Command::TopDegree(_) => "top-degree",
            Command::Lh(_) => "lh",
            Command::AraBound(_) => "ara-bound",
            Command::Cech { .. } => "cech",
            Command::Check { .. } => "check",
        }
    }
}
