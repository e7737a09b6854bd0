use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "defkit", version, about = "Exact invariants of isolated singularities, their deformations and resolutions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every pseudo-random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of standard-basis elements.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_basis: Option<u64>,
    /// Maximum number of ideal quotients in a saturation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_saturation: Option<u64>,
    /// Largest truncation degree of the jet oracle.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jet_cap: Option<u32>,
    /// Maximum number of Jacobian minors in a smoothness check.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_minors: Option<u64>,
    /// Largest n accepted by `resolve an`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub resolution_cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of a singularity at the origin.
    #[command(subcommand)]
    Singularity(SingularityCmd),
    /// Semiuniversal deformations and their fibres.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Simultaneous and small resolutions.
    #[command(subcommand)]
    Resolve(ResolveCmd),
    /// Quotients by diagonal sign actions.
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Numerics of surfaces of general type and nodal surfaces.
    #[command(subcommand)]
    Surface(SurfaceCmd),
}

/// Variables and equations; `--poly -` reads the equation from stdin.
#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<String>,
    #[arg(long = "poly", required = true, allow_hyphen_values = true)]
    pub polys: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum SingularityCmd {
    /// μ, τ, T¹ basis and ADE type (one equation), or T¹ of a complete intersection.
    Analyze(PolyArgs),
    /// Dynkin and Weyl data of a configuration of rational double points.
    Weyl {
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeformCmd {
    /// The semiuniversal family.
    Semiuniversal(PolyArgs),
    /// Singular points of one fibre of the semiuniversal family.
    Scan {
        #[command(flatten)]
        eqs: PolyArgs,
        /// Parameter values, comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ResolveCmd {
    /// Simultaneous resolution of the A_n family after the Weyl base change.
    An {
        #[arg(long)]
        n: usize,
        /// Number of base points whose fibres are certified, origin included.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// The two small resolutions of the 3-fold node family.
    Node,
    /// Indeterminacy of the flop between the small resolutions.
    Flop,
}

#[derive(Debug, Subcommand)]
pub enum QuotientCmd {
    /// Invariant ring of a (Z/2)^k sign action and the image of a family.
    Bidouble {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Sign characters of the generators, e.g. "1,1,-1,1; -1,-1,1,1".
        #[arg(long, allow_hyphen_values = true)]
        action: String,
        /// Equations of the family upstairs.
        #[arg(long = "poly", allow_hyphen_values = true)]
        polys: Vec<String>,
        /// Names of the invariant generators.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
        /// A group element whose fixed locus is imaged, e.g. "1,1,-1,1".
        #[arg(long, allow_hyphen_values = true)]
        fixed: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// Hilbert polynomial of the 5-canonical model and the Enriques bound.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        k2: i64,
        #[arg(long, allow_hyphen_values = true)]
        h0_theta: Option<i64>,
        /// Evaluate P(m) for m = 1..=m_max.
        #[arg(long, default_value_t = 3)]
        m_max: i64,
    },
    /// Severi, Segre and asymptotic node bounds with the known records.
    NodalBounds {
        /// A single degree; the table for 2..=6 otherwise.
        #[arg(long)]
        d: Option<u32>,
        /// Search limit for the first degree where the Segre count beats the Severi bound.
        #[arg(long, default_value_t = 100)]
        search: u32,
    },
    /// A Segre surface L1⋯Ld − M² and its node count.
    Segre {
        #[arg(long)]
        d: u32,
        /// Build the surface without counting the nodes.
        #[arg(long)]
        no_count: bool,
    },
    /// Weighted hypersurface families with their singularities.
    Catalog {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: u8,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Double covers of abelian surfaces with polarization (d1, d2).
    DoubleCover {
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
    },
    /// Euler number of a surface isogenous to a product of curves.
    Isogenous {
        #[arg(long)]
        g1: i64,
        #[arg(long)]
        g2: i64,
        #[arg(long)]
        order: i64,
    },
}
