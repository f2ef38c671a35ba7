use clap::{Args, Parser, Subcommand, ValueEnum};
use qcoherence_core::{Polynomial, Rational};

#[derive(Debug, Parser)]
#[command(name = "qcoherence", version, about = "Exact verification of discrete coherent pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monic polynomials P_0 .. P_n of a family.
    Gen(GenArgs),
    /// Moments of the normalized functional of a family.
    Moments(MomentsArgs),
    /// Check an identity exactly; exit 1 if it fails.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Classify a self-coherent sequence from (pi, beta0, gamma1).
    Classify(ClassifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Pearson equation D(phi u) = psi u on a family's moments
    Pearson(PearsonArgs),
    /// Structure relation between two families
    Structure(StructureArgs),
    /// Psi and phi identities, determinant equations and oracles for a coherent pair
    Coherence(CoherenceArgs),
    /// One reduction or limit identity at seeded parameter points
    Reduction(ReductionArgs),
    /// Both Leibniz expansions of D^n(f u)
    Leibniz(LeibnizArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Output {
    #[default]
    Json,
    Csv,
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Coefficients from the constant term up, separated by commas.
pub fn parse_poly(s: &str) -> Result<Polynomial<Rational>, String> {
    s.split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map(Polynomial::new)
}

// A family: `L`, `J`, or a classical label, with its parameters in order.
#[derive(Clone, Debug, Default, Args)]
pub struct FamilyArgs {
    /// L, J, or one of the classical labels (e.g. BigQJacobi, l_n)
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub d: Option<Rational>,
    /// Family base; defaults to --q
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub base: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub scale: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub offset: Option<Rational>,
    /// Translate the family by w0 = w / (1 - q) on top of --offset
    #[arg(long)]
    pub offset_omega0: bool,
}

#[derive(Clone, Debug, Args)]
pub struct HahnArgs {
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub q: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
    pub omega: Rational,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Base of the family
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub q: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
    pub omega: Rational,
    #[arg(long = "n", env = "QCOHERENCE_NMAX", default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub q: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
    pub omega: Rational,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// D_{q,w}(phi u) = psi u
    Forward,
    /// D_{1/q,-w/q}(phi u) = psi u
    Backward,
}

#[derive(Debug, Args)]
pub struct PearsonArgs {
    /// Functional of this family; without it the functional comes from
    /// the recurrence attached to (phi, psi)
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub hahn: HahnArgs,
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub phi: Polynomial<Rational>,
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub psi: Polynomial<Rational>,
    #[arg(long, value_enum, default_value = "backward")]
    pub direction: DirectionArg,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Second family as JSON, same shape as the "family" objects this tool
    /// prints; defaults to the first family
    #[arg(long)]
    pub other: Option<String>,
    #[command(flatten)]
    pub hahn: HahnArgs,
    /// Monic pi, coefficients from the constant term up
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true, default_value = "1")]
    pub pi: Polynomial<Rational>,
    /// M
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long = "n", env = "QCOHERENCE_NMAX", default_value_t = 10)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Rows n = 0 .. rows of psi and phi
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct ReductionArgs {
    /// Identity name, e.g. asc-roundtrip
    #[arg(long)]
    pub identity: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of admissible parameter points
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Degree bound; limits default to 6, the rest to 8
    #[arg(long = "n")]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LeibnizArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub hahn: HahnArgs,
    /// Multiplier f; drawn from --seed when absent
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub f: Option<Polynomial<Rational>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Power of the operator
    #[arg(long = "power", default_value_t = 3)]
    pub power: usize,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true, default_value = "1")]
    pub pi: Polynomial<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub beta0: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub gamma1: Rational,
    #[command(flatten)]
    pub hahn: HahnArgs,
    #[arg(long = "n", env = "QCOHERENCE_NMAX", default_value_t = 10)]
    pub n_max: usize,
}
