//! `momentcone`: command-line access to moment cone computations.
//!
//! Exit codes: 0 on success, 1 on domain errors (with a JSON error body on
//! stderr), 2 on usage errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "momentcone",
    version,
    about = "Exact computations on truncated moment cones"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(clap::Args, Debug)]
pub struct Opts {
    /// Function system JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub system: Option<PathBuf>,
    /// Atomic measure JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub measure: Option<PathBuf>,
    /// Moment sequence JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub sequence: Option<PathBuf>,
    /// Ground set JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub ground: Option<PathBuf>,
    /// Point coordinates such as "1,-1/2,sqrt2". Repeat for several points.
    #[arg(long, global = true, value_name = "COORDS", allow_hyphen_values = true)]
    pub point: Vec<String>,
    /// Number of variables.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Half degree for table2, full degree for bounds and flatext.
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// Use the grid {0..d}^n of the cube polynomial in table2.
    #[arg(long, global = true)]
    pub primed: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest grid table2 computes.
    #[arg(long, global = true, env = "MOMENTCONE_BUDGET")]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Add approximate decimal values next to exact ones (not authoritative).
    #[arg(long, global = true)]
    pub float: bool,
    /// Ambient space for bounds.
    #[arg(long, global = true, value_enum)]
    pub space: Option<SpaceArg>,
    /// Number of atoms for flatext.
    #[arg(long, global = true)]
    pub atoms: Option<u64>,
    /// Samples per candidate size for na.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Projective,
    Affine,
    Cube,
    Line,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// List the functions of a system.
    Basis,
    /// Moments of a measure.
    Moments,
    /// Jacobian of the moment map at a measure, with its rank.
    Jacobian,
    /// Randomized estimate of N_A.
    Na,
    /// Reduce a measure to at most m atoms with the same moments.
    Reduce,
    /// Signed measure on the ground set with the given moments.
    Signed,
    /// Cone membership with a certificate.
    Member,
    /// Fewest ground-set atoms representing a sequence.
    MinAtoms,
    /// Face report: atoms, common zeros and dimensions.
    Face,
    /// Set of atoms W(s).
    Wset,
    /// Common zeros V(s) of the nonnegative annihilators.
    Vset,
    /// Core variety of the sequence's functional.
    Core,
    /// Maximal mass at a point and its dual value.
    Maxmass,
    /// Positive separation property for the given points.
    Psp,
    /// Jacobian ranks along the Harris zeros.
    Table1,
    /// Curve ranks on the zero grids of the grid polynomials.
    Table2,
    /// The Harris polynomial and its zeros.
    Harris,
    /// Regular and singular example systems.
    Examples,
    /// Known Caratheodory bounds.
    Bounds,
    /// Lower bound for the Pythagoras number of A^2.
    Pythagoras,
    /// Moment counts for a flat extension.
    Flatext,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command, &cli.opts) {
        Ok(out) => {
            print!("{}", out.render(cli.opts.format));
            ExitCode::SUCCESS
        }
        Err(f) => f.report(),
    }
}
