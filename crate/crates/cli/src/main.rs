use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

#[derive(Parser)]
#[command(name = "ainfty", version, about = "Exact homotopy transfer of A∞-structures")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Highest arity to compute [default: 6, or the cap declared by the file]
    #[arg(long, global = true, env = "AINFTY_CAP")]
    pub cap: Option<usize>,
    /// Ground field, `Q` or `Fp:<p>`; overrides the field declared by the input
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for randomized property runs
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report to this file instead of stdout
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Use a built-in fixture instead of an input file
    #[arg(long, global = true)]
    pub fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure relations of an algebra file, or the morphism relations of a morphism file
    Check { file: Option<PathBuf> },
    /// Transfer the structure to homology and verify the result
    Transfer {
        file: Option<PathBuf>,
        /// Skip the comparison with the coalgebra computation
        #[arg(long)]
        no_oracle: bool,
    },
    /// Compare the recursive transfer with the coalgebra computation arity by arity
    OracleDiff { file: Option<PathBuf> },
    /// Compose two morphism files (first, then second) and verify the composite
    Compose { first: PathBuf, second: PathBuf },
    /// Decide whether the minimal model has vanishing higher operations and is balanced
    Formality { file: Option<PathBuf> },
    /// Seeded property runs: composition, inverses and the technical identities
    Props,
    /// List or export the built-in fixtures
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Print one fixture file, or write all of them into `--out`
    Export {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Verification failed (exit 1) or the input was unusable (exit 2).
pub enum Failure {
    Verification,
    Input(String),
}

impl From<ainfty::Error> for Failure {
    fn from(e: ainfty::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common;
    let result = match cli.command {
        Command::Check { file } => commands::check(&common, file),
        Command::Transfer { file, no_oracle } => commands::transfer(&common, file, !no_oracle),
        Command::OracleDiff { file } => commands::oracle_diff(&common, file),
        Command::Compose { first, second } => commands::compose(&common, &first, &second),
        Command::Formality { file } => commands::formality(&common, file),
        Command::Props => commands::props(&common),
        Command::Fixtures { action } => match action {
            FixtureAction::List => commands::fixtures_list(&common),
            FixtureAction::Export { name, out } => commands::fixtures_export(&common, name, out),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
