use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fcg",
    version,
    about = "Build, simulate and verify function-controlled quantum gates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the matrix of a function-controlled gate, an if-then-else gate
    /// or a phase oracle.
    BuildMatrix(BuildArgs),
    /// Run a circuit file and write the final state.
    Simulate(SimulateArgs),
    /// Run a verification check and write its report.
    Verify(VerifyArgs),
    /// Run Grover search for the marked values of a predicate.
    Grover(GroverArgs),
}

/// The control function `f`. Exactly one source is required.
#[derive(Debug, Default, Args)]
pub struct FunctionArgs {
    /// Predicate over `x`, e.g. "x == 3" or "(x & 1) == 0".
    #[arg(long)]
    pub pred: Option<String>,
    /// Truth-table file: JSON `{"n": .., "bits": [..]}` or a hex string.
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Truth table as hex, bit `y` of the number is `f(y)`.
    #[arg(long, value_name = "HEX")]
    pub table_hex: Option<String>,
}

impl FunctionArgs {
    pub fn is_given(&self) -> bool {
        self.pred.is_some() || self.table.is_some() || self.table_hex.is_some()
    }
}

/// The target unitary and the optional else-branch unitary.
#[derive(Debug, Default, Args)]
pub struct UnitaryArgs {
    /// Standard gate or tensor product of them, e.g. "X", "H*H", "I*CX".
    #[arg(long, value_name = "NAME")]
    pub u: Option<String>,
    /// Matrix JSON file for the target unitary.
    #[arg(long, value_name = "FILE", conflicts_with = "u")]
    pub u_file: Option<PathBuf>,
    /// Unitary applied where `f(x) = 0`, giving an if-then-else gate.
    #[arg(long = "else", value_name = "NAME")]
    pub else_name: Option<String>,
    /// Matrix JSON file for the else-branch unitary.
    #[arg(long, value_name = "FILE", conflicts_with = "else_name")]
    pub else_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Default, Args)]
pub struct OutputArgs {
    /// Output file (stdout when absent).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Control register width.
    #[arg(long)]
    pub n: Option<usize>,
    /// Target register width (inferred from the unitary when absent).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub unitary: UnitaryArgs,
    /// Build the diagonal phase oracle on the control register instead.
    #[arg(long)]
    pub phase_oracle: bool,
    /// Oracle phase: "pi" (default), "pi/2", "3*pi/4" or radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<String>,
    /// Write `{n, m, blocks}` with only the non-identity blocks.
    #[arg(long)]
    pub block: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit JSON file.
    #[arg(long, value_name = "FILE")]
    pub circuit: PathBuf,
    /// Initial state JSON `{n, m, amplitudes}`.
    #[arg(long, value_name = "FILE", conflicts_with = "basis")]
    pub state: Option<PathBuf>,
    /// Initial basis state `X,S` (control value, target value); default 0,0.
    #[arg(long, value_name = "X,S")]
    pub basis: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// `G†G = I` for a matrix file or a built gate.
    Unitary,
    /// Gate equals the product of its binary controlled gates.
    Lemma3,
    /// Gate equals `F ⊗ U + (I - F) ⊗ I`.
    QitEquivalence,
    /// Gate (or `--matrix`) equals the entry-by-entry formula.
    EntryFormula,
    /// Gate equals the oracle-and-ancilla route.
    Ancilla,
    /// All four formulations pairwise.
    Formulations,
    /// `--matrix` equals `--against`.
    Equivalence,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: CheckKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub unitary: UnitaryArgs,
    /// Matrix file (dense or block JSON) to check.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    /// Second matrix file for `equivalence`.
    #[arg(long, value_name = "FILE")]
    pub against: Option<PathBuf>,
    /// Allow a global phase in `equivalence`.
    #[arg(long)]
    pub up_to_phase: bool,
    /// Check this many random instances instead of one given gate.
    #[arg(long, value_name = "COUNT")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance (default 1e-9).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GroverArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Iteration count (default floor(pi/4 * sqrt(N / marked))).
    #[arg(long)]
    pub iters: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}
