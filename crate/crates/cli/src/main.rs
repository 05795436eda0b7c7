//! `net`: command-line front end for Dirichlet matroids of electrical networks.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "net", version, about = "Dirichlet matroids of electrical networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Inline generator such as `star:3`, `hexwheel:6` or `random:2,3,0.6,7`.
    #[arg(long = "gen", global = true, conflicts_with = "file")]
    pub generator: Option<String>,
    /// Network JSON file (`-` for stdin).
    #[arg(long, global = true)]
    pub file: Option<String>,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of listed sets (a note records any truncation).
    #[arg(long, global = true)]
    pub limit: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a network (and its embedding, if any) and summarise it.
    Validate,
    /// The Dirichlet matroid M(N).
    Matroid(MatroidArgs),
    /// Precoloring and chromatic polynomials.
    Poly(PolyArgs),
    /// Response matrices, grove identities and stability sampling.
    Electrical(ElectricalArgs),
    /// Linear representations over a field.
    Rep(RepArgs),
    /// Dual circular networks and the duality theorem.
    Dual(DualArgs),
    /// Run a verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct MatroidArgs {
    #[arg(long, value_enum)]
    pub list: Option<Family>,
    /// Comma-separated labels, `eh` allowed.
    #[arg(long, value_name = "SET")]
    pub rank: Option<String>,
    #[arg(long)]
    pub connectivity: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Bases,
    Circuits,
    Cocircuits,
    Flats,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub precoloring: bool,
    #[arg(long)]
    pub chromatic: bool,
    #[arg(long)]
    pub compare_cpintro: bool,
    /// Scan hexwheel(3..=M) against the closed form and recurrence.
    #[arg(long, value_name = "M")]
    pub hexwheel_scan: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ElectricalArgs {
    /// Edge weights in edge-label order, e.g. `1,2/3,5`.
    #[arg(long, value_name = "X")]
    pub response: Option<String>,
    /// Check the grove identities at `--limit` seeded points (default 20).
    #[arg(long)]
    pub identities: bool,
    #[arg(long, value_name = "N")]
    pub hpp_sample: Option<u64>,
    /// Interlacing of P0 and P1 on the line X + tY.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub interlace: Option<Vec<String>>,
    #[arg(long, value_name = "N")]
    pub bound_sample: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    /// `Q`, a prime, `4`, or `GF(q)`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Compare the matrix's matroid with M(N) on every subset.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    #[arg(long)]
    pub build: bool,
    #[arg(long)]
    pub theorem_check: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Oracles,
    Hpp,
    Duality,
    Connectivity,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.common.json));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
