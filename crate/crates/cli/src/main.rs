//! Batch CLI for the CHSH operator-algebra toolkit. Subcommands build
//! maximal-violation quadruples from seeded random projections, evaluate and
//! maximize CHSH values of states, verify CHSH preservation under algebra
//! embeddings, and sweep the lattice wedge experiment. Every run writes a
//! manifest; replaying a manifest reproduces the outputs byte for byte.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod io;
mod manifest;

use io::CliError;

#[derive(Parser)]
#[command(name = "chsh-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a maximal-violation quadruple from seeded random projections.
    Construct(ConstructArgs),
    /// Evaluate the CHSH value of a state against a quadruple.
    Violate(ViolateArgs),
    /// Maximize the CHSH value of a state with the see-saw optimizer.
    Maximize(MaximizeArgs),
    /// Check CHSH preservation when pushing a state through embeddings.
    Pushforward(PushforwardArgs),
    /// Lattice wedge experiment: squeeze fit, CHSH sweep, translation check.
    Lattice(LatticeArgs),
    /// Re-run a recorded manifest; outputs are byte-identical.
    Replay(ReplayArgs),
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Factor dimension (projections live on this dimension).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub dim: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for quadruple.json, report.json, manifest.json.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ViolateArgs {
    /// Quadruple bundle (JSON).
    #[arg(long)]
    pub quadruple: PathBuf,
    /// Density state (JSON).
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct MaximizeArgs {
    /// Density state (JSON) on the product of the two factors.
    #[arg(long)]
    pub state: PathBuf,
    /// Left factor dimension.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub da: u64,
    /// Right factor dimension.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub db: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PushforwardArgs {
    #[arg(long)]
    pub quadruple: PathBuf,
    /// Monomorphism acting on the left factor (JSON).
    #[arg(long)]
    pub morphism_a: PathBuf,
    /// Monomorphism acting on the right factor (JSON).
    #[arg(long)]
    pub morphism_b: PathBuf,
    /// State on the embedded bipartite algebra (JSON).
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct LatticeArgs {
    #[arg(long, default_value_t = 32)]
    pub sites: u64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Sites separating the two wedges on each side of the circle.
    #[arg(long, default_value_t = 2)]
    pub gap: u64,
    /// Lattice translation used for the invariance check column.
    #[arg(long, default_value_t = 0)]
    pub shift: i64,
    /// Highest Fock level kept per mode.
    #[arg(long, default_value_t = 16)]
    pub nmax: u64,
    /// Squeeze sweep, e.g. `r=0:1.5:0.25`; defaults to the fitted value only.
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Evaluate sweep points on the rayon pool when > 1 (same output bytes).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args)]
pub struct ReplayArgs {
    /// Manifest written by a previous run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory; defaults to the recorded results path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct(args) => commands::construct(&args),
        Command::Violate(args) => commands::violate(&args),
        Command::Maximize(args) => commands::maximize(&args),
        Command::Pushforward(args) => commands::pushforward(&args),
        Command::Lattice(args) => commands::lattice(&args),
        Command::Replay(args) => commands::replay(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
