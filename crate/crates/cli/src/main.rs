//! `bicomb`: run the library's checks and solvers on JSON input documents.
//!
//! Exit status is 0 on success, 1 when a property check or computation
//! fails, and 2 on usage or parse errors.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::io::{Format, Run};

#[derive(Debug, Parser)]
#[command(name = "bicomb", version, about = "Geodesic bicombings, barycenters and fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Tolerance override for the subcommand's main check.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sampled axiom and isometry checks on a space.
    SpaceCheck(SpaceCheckArgs),
    /// Exact Wasserstein-1 distance between two atomic measures.
    Wasserstein(WassersteinArgs),
    /// Contracting barycenter of an atomic measure.
    Barycenter(BarycenterArgs),
    /// Cesàro/barycenter fixed-point pipeline for one isometry.
    Fixpoint(FixpointArgs),
    /// Upper Banach density of the visits of an orbit to a target set.
    Density(DensityArgs),
    /// The bounded Busemann space whose shift has no fixed point.
    #[command(subcommand)]
    Counterexample(CounterexampleCommand),
}

#[derive(Debug, Args)]
pub struct SpaceCheckArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Comma-separated subset of metric,speed,conical,midpoint,busemann,isometries.
    #[arg(long, value_delimiter = ',')]
    pub props: Vec<String>,
    #[arg(long, short = 'n', default_value_t = 10_000)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct WassersteinArgs {
    /// Space descriptor; defaults to the `space` field of the measures.
    #[arg(long)]
    pub space: Option<PathBuf>,
    #[arg(long)]
    pub mu: PathBuf,
    #[arg(long)]
    pub nu: PathBuf,
}

#[derive(Debug, Args)]
pub struct BarycenterArgs {
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// A measure, or `{"measure": ..., "config": ...}`.
    #[arg(long)]
    pub measure: PathBuf,
    /// Barycenter configuration, overriding any embedded in the measure file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Force the deletion recursion on linear spaces too.
    #[arg(long)]
    pub recursive: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Isometry descriptor file, or the name of a registered isometry.
    #[arg(long)]
    pub iso: String,
    #[arg(long)]
    pub x0: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
}

#[derive(Debug, Args)]
pub struct FixpointArgs {
    #[command(flatten)]
    pub orbit: OrbitArgs,
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    pub schedule: Vec<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub orbit: OrbitArgs,
    /// Window length K.
    #[arg(long)]
    pub window: usize,
    /// Largest window shift L.
    #[arg(long)]
    pub shifts: usize,
    /// Offset of the window family.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// Orbit length; defaults to the smallest one the estimate needs.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Also certify bounded orbits, scanning gaps of `D - D` up to this horizon.
    #[arg(long)]
    pub certify: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum CounterexampleCommand {
    /// Run all seven checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 20)]
    pub max_support: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::SpaceCheck(_) => "space-check",
        Command::Wasserstein(_) => "wasserstein",
        Command::Barycenter(_) => "barycenter",
        Command::Fixpoint(_) => "fixpoint",
        Command::Density(_) => "density",
        Command::Counterexample(_) => "counterexample verify",
    };
    let run = Run {
        command: name,
        seed: cli.seed,
        tol: cli.tol,
        format: cli.format,
        out: cli.out,
    };
    let result = match &cli.command {
        Command::SpaceCheck(a) => commands::space_check(&run, a),
        Command::Wasserstein(a) => commands::wasserstein(&run, a),
        Command::Barycenter(a) => commands::barycenter(&run, a),
        Command::Fixpoint(a) => commands::fixpoint(&run, a),
        Command::Density(a) => commands::density(&run, a),
        Command::Counterexample(CounterexampleCommand::Verify(a)) => commands::verify(&run, a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("bicomb {name}: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
