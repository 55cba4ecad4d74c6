use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "ramcoh", version, about = "Ramification, torsion exponents and cohomology computations")]
pub struct Cli {
    /// Prime used by commands that take one.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// p-adic working precision (at least 4).
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Different exponent of a Galois extension from its ramification filtration.
    Different(ProfileArgs),
    /// Herbrand functions phi and psi of a filtration profile.
    Herbrand(HerbrandArgs),
    /// Upper ramification jumps and step differents of a cyclotomic tower.
    Jumps(JumpsArgs),
    /// Sufficient-ramification check with per-level slack.
    Suffram(SufframArgs),
    /// Trace inequalities on random elements of cyclotomic levels.
    Tracelab(TracelabArgs),
    /// Symbolic torsion-exponent ledger.
    Ledger(LedgerArgs),
    /// Chevalley–Eilenberg cohomology of integral Lie algebras.
    Liecoh(LiecohArgs),
    /// Decalage and triangle checks on random complexes.
    Decalage(DecalageArgs),
    /// Balls in the Bruhat–Tits building and their cohomology.
    Btball(BtballArgs),
    /// Graded dimensions of the exterior algebra on generators of degree 1 - 2i.
    Theorema(TheoremaArgs),
    /// Witt vectors, unit series splitting and Artin–Schreier roots.
    Witt(WittArgs),
    /// Built-in checks; --full runs the acceptance suite.
    Selftest(SelftestArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Different(_) => "different",
            Command::Herbrand(_) => "herbrand",
            Command::Jumps(_) => "jumps",
            Command::Suffram(_) => "suffram",
            Command::Tracelab(_) => "tracelab",
            Command::Ledger(_) => "ledger",
            Command::Liecoh(_) => "liecoh",
            Command::Decalage(_) => "decalage",
            Command::Btball(_) => "btball",
            Command::Theorema(_) => "theorema",
            Command::Witt(_) => "witt",
            Command::Selftest(_) => "selftest",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ProfileArgs {
    /// JSON list of [u, #G_u] breaks; defaults to Q_p(zeta_{p^n})/Q_p.
    #[arg(long)]
    pub profile: Option<String>,
    /// Cyclotomic level used when no profile is given.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct HerbrandArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Points (rationals such as 5/2) at which to evaluate phi and psi.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct JumpsArgs {
    /// Ramification index of the tame base.
    #[arg(long, default_value_t = 1)]
    pub e_l: u64,
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    /// Levels for which step differents are listed.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SufframArgs {
    /// Ramification index of the base; defaults to p - 1.
    #[arg(long)]
    pub e_l: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct TracelabArgs {
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    #[arg(long, default_value_t = 200)]
    pub samples: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Paper,
    Conservative,
}

#[derive(Debug, Args, Serialize)]
pub struct LedgerArgs {
    /// Registry id; every registered pipeline when omitted.
    #[arg(long)]
    pub theorem: Option<String>,
    /// odd, 2, or both.
    #[arg(long, default_value = "odd")]
    pub p_parity: String,
    #[arg(long)]
    pub tame: bool,
    #[arg(long, value_enum, default_value = "paper")]
    pub mode: ModeArg,
    /// Numeric value for the value column, e.g. N=2.
    #[arg(long = "set")]
    pub set: Vec<String>,
    /// Symbolic substitution applied before derivation, e.g. "v_j=d".
    #[arg(long = "subst")]
    pub subst: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct LiecohArgs {
    /// gl1, gl2, gl3, sl2, heisenberg3, heisenberg5 or abelianN.
    #[arg(long, default_value = "gl2")]
    pub algebra: String,
    /// Multiply all brackets by p^s.
    #[arg(long, default_value_t = 0)]
    pub scale_exp: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct DecalageArgs {
    #[arg(long, default_value_t = 100)]
    pub complexes: usize,
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    #[arg(long, default_value_t = 100)]
    pub triples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BtballArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub radius: u32,
    /// Coefficient characteristics.
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
    pub q: Vec<u64>,
    /// Allow balls outside the contractible regimes.
    #[arg(long)]
    pub any: bool,
    /// Include vertices and simplices in the report.
    #[arg(long)]
    pub export: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct TheoremaArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WittAction {
    Suite,
    Ghost,
    Add,
    Mul,
    Split,
    ArtinSchreier,
}

#[derive(Debug, Args, Serialize)]
pub struct WittArgs {
    #[arg(long, value_enum, default_value = "suite")]
    pub action: WittAction,
    /// Witt coordinates, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub u: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub v: Vec<i64>,
    /// Coordinates in Z/p^m instead of Z.
    #[arg(long)]
    pub modulus_exp: Option<u32>,
    /// Degree of the finite field F_{p^k}.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Field element code for artin-schreier.
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    /// Series coefficients (codes), constant term first.
    #[arg(long, value_delimiter = ',')]
    pub series: Vec<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, conflicts_with = "full")]
    pub quick: bool,
    #[arg(long)]
    pub full: bool,
}
