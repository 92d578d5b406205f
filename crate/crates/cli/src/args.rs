use crate::dataset::Format;
use crate::run::{BasisKind, Command, RunConfig};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "cheb", version, about = "Discrete minimax fitting with optimality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Fit minimax coefficients and certify them.
    Fit(DataArgs),
    /// Check whether coefficients (fitted if --coeffs is absent) are optimal.
    Verify(DataArgs),
    /// Run the degree-reduction necessary condition.
    Reduce(DataArgs),
    /// Run the hyperplane sign-flip cut conditions.
    Cuts(DataArgs),
    /// Analyze the built-in example datasets.
    Demo(CommonArgs),
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset file (CSV rows `x1,...,xd,f` or JSON).
    #[arg(long)]
    data: PathBuf,
    /// Dataset format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value = "monomial")]
    basis: BasisKind,
    /// Number of coordinates per point; checked against the data.
    #[arg(long = "dim")]
    dimension: Option<usize>,
    /// Total polynomial degree.
    #[arg(long)]
    degree: u32,
    /// JSON file with model coefficients in graded-lex term order.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative tolerance for detecting extremal points.
    #[arg(long, default_value_t = 1e-7)]
    tol_extremal: f64,
    /// Feasibility tolerance of the linear programs.
    #[arg(long, default_value_t = 1e-9)]
    tol_lp: f64,
    /// Maximum number of nodes in the degree-reduction search.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Follow only the first reduction branch at each level.
    #[arg(long)]
    single_branch: bool,
}

impl CommonArgs {
    fn apply(self, c: &mut RunConfig) {
        c.out = self.out;
        c.tol_extremal = self.tol_extremal;
        c.tol_lp = self.tol_lp;
        c.node_budget = self.budget;
        c.single_branch = self.single_branch;
    }
}

/// Parses command-line arguments into a run configuration.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, data) = match cli.command {
        Cmd::Fit(a) => (Command::Fit, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Reduce(a) => (Command::Reduce, a),
        Cmd::Cuts(a) => (Command::Cuts, a),
        Cmd::Demo(common) => {
            let mut c = RunConfig::new(Command::Demo);
            common.apply(&mut c);
            return Ok(c);
        }
    };
    let mut c = RunConfig::new(command);
    c.data = Some(data.data);
    c.format = data.format;
    c.basis = data.basis;
    c.dimension = data.dimension;
    c.degree = Some(data.degree);
    c.coefficients = data.coeffs;
    data.common.apply(&mut c);
    Ok(c)
}
