use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mzv", version, about = "Exact renormalized multiple zeta values")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for table and check (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate gzeta(s1, ..., sk); all arguments positive or all non-positive.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Regenerate the grid gzeta(-s1, -s2) for 1 <= s1 <= MAX_S1, 1 <= s2 <= MAX_S2.
    Table(TableArgs),
    /// Dump the regularized series Z and its Birkhoff parts phi_- and phi_+.
    Expand(ExpandArgs),
    /// Run an identity-check suite.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Arguments as a comma-separated list (alternative to positional values).
    #[arg(long = "s", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "args")]
    pub s: Option<Vec<i64>>,

    /// Arguments; negative values may need a preceding `--`.
    pub args: Vec<i64>,

    /// Substitute T (for example `T=0`) and evaluate numerically.
    #[arg(long, value_name = "T=VALUE")]
    pub numeric: Option<String>,

    /// Absolute tolerance for numeric evaluation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(default_value_t = 8)]
    pub max_s1: u32,
    #[arg(default_value_t = 7)]
    pub max_s2: u32,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Non-positive exponents, comma-separated.
    #[arg(long = "s", value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub s: Vec<i64>,

    /// Positive rational directions, comma-separated, or `auto` for |s_i| + d.
    #[arg(long = "r", default_value = "auto")]
    pub r: String,

    /// Highest power of the regulator e to print.
    #[arg(long, default_value_t = 2)]
    pub order: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Quasi-shuffle relation of gzeta on non-positive words, and the stuffle-triple oracle.
    Stuffle,
    /// The depth-two table against anchors, the closed form and the parity identity.
    Table,
    /// Birkhoff recursion against its closed form, quasi-shuffle against the stuffle oracle.
    Oracle,
    /// Symbolic values on positive words.
    Positive,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: Suite,

    /// Largest combined depth of the words checked.
    #[arg(long, default_value_t = 3)]
    pub max_depth: usize,

    /// Largest combined weight of the words checked.
    #[arg(long, default_value_t = 6)]
    pub max_weight: u64,
}
