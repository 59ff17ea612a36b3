//! Option merging: a JSON config file provides defaults, command-line flags
//! override field by field, and the fully resolved configuration is embedded
//! in every output artifact.

use clap::Args;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// One flat bag of optional settings shared by all subcommands; each
/// subcommand validates the fields it needs. Sweep scripts typically keep a
/// base file and override one flag at a time.
#[derive(Args, Serialize, Deserialize, Clone, Debug, Default)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Order of the process (1 = classical Airy).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,

    /// Vector dimension for the symbolic commands.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,

    /// Comma-separated thresholds, strictly decreasing, e.g. "1,-1".
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,

    /// Comma-separated weights in [0, 1], e.g. "0.3,0.7".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,

    /// Shift applied to all thresholds.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,

    /// Quadrature nodes per interval for the determinant.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,

    /// Start of a range (airy grid or sweep).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,

    /// End of a range.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,

    /// Grid step of a range.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,

    /// Derivative order for the airy command.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deriv: Option<u32>,

    /// Sweep variable for tabulate: "t" or "x1".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<String>,

    /// Left end of the integration range.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tmin: Option<f64>,

    /// Seeding time; selected automatically when absent.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tmax: Option<f64>,

    /// Particle orders for joint-prob, e.g. "1,2".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<String>,

    /// Finite-difference step in the weights.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dalpha: Option<f64>,

    /// Output format for hierarchy: text | json | latex.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,

    /// Tolerance for verify-tw's exit status.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,

    /// Permit equal adjacent weights (degenerate components seed at zero).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_equal_weights: Option<bool>,

    /// Also export the Lax coefficient chain (hierarchy command):
    /// `--chain true`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<bool>,

    /// Output file; stdout when absent.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Options {
    /// Field-wise merge: values present in `self` win over `base`.
    pub fn over(self, base: Options) -> Options {
        macro_rules! pick {
            ($($field:ident),*) => {
                Options { $($field: self.$field.or(base.$field)),* }
            };
        }
        pick!(
            n, k, x, alpha, t, nodes, from, to, step, deriv, sweep, tmin, tmax, orders,
            dalpha, format, tol, allow_equal_weights, chain, out
        )
    }
}

/// Parses a comma-separated list of floats.
pub fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad {what} entry `{tok}`: {e}"))
        })
        .collect()
}

/// Parses a comma-separated list of positive integers.
pub fn parse_orders(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad order `{tok}`: {e}"))
        })
        .collect()
}
