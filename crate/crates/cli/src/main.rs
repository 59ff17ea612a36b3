//! `hoairy`: command-line front end for the higher-order Airy process
//! toolkit.
//!
//! Subcommands tie the library into reproducible runs: special-function
//! tables (`airy`), Fredholm determinants (`det`, `tabulate`), the symbolic
//! hierarchy and its Lax-pair verification (`hierarchy`, `laxcheck`), the
//! ODE route (`solve`) and the two-route comparison (`verify-tw`), plus
//! joint particle probabilities (`joint-prob`).
//!
//! All numerics are deterministic: fixed quadrature sizes, no randomness,
//! floats printed to 15 significant digits. Identical configurations produce
//! byte-identical artifacts, and every artifact embeds its resolved
//! configuration. Errors go to stderr as JSON; exit codes are 0 (pass),
//! 1 (check failed), 2 (configuration), 3 (numerical failure).

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use commands::CmdError;
use config::Options;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "hoairy", version, about = "Higher-order Airy point processes: determinants, the vector Painlevé II hierarchy, and Tracy-Widom type identities")]
struct Cli {
    /// JSON file with default options; command-line flags override fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate Ai_n or a derivative on a grid (CSV).
    Airy(Options),
    /// One generating-function determinant (JSON).
    Det(Options),
    /// Sweep the shift or the first threshold (CSV).
    Tabulate(Options),
    /// Print a hierarchy member symbolically (text | json | latex).
    Hierarchy(Options),
    /// Verify all Lax-pair identities exactly.
    Laxcheck(Options),
    /// Integrate the hierarchy ODE backwards from Airy asymptotics (CSV).
    Solve(Options),
    /// Compare the determinant and ODE routes for log F (JSON).
    VerifyTw(Options),
    /// Joint particle-position probability via weight differencing (JSON).
    JointProb(Options),
}

fn load_config(path: &PathBuf) -> Result<Options, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::Config(format!("bad config {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CmdError> {
    let base = match &cli.config {
        Some(path) => load_config(path)?,
        None => Options::default(),
    };
    match cli.command {
        Command::Airy(o) => commands::cmd_airy(&o.over(base)),
        Command::Det(o) => commands::cmd_det(&o.over(base)),
        Command::Tabulate(o) => commands::cmd_tabulate(&o.over(base)),
        Command::Hierarchy(o) => commands::cmd_hierarchy(&o.over(base)),
        Command::Laxcheck(o) => commands::cmd_laxcheck(&o.over(base)),
        Command::Solve(o) => commands::cmd_solve(&o.over(base)),
        Command::VerifyTw(o) => commands::cmd_verify_tw(&o.over(base)),
        Command::JointProb(o) => commands::cmd_joint_prob(&o.over(base)),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        let doc = serde_json::json!({
            "schema": "hoairy-error/v1",
            "kind": e.kind(),
            "message": e.message(),
        });
        eprintln!("{doc}");
        std::process::exit(e.exit_code());
    }
}
