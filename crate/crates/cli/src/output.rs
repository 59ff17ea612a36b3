//! Deterministic artifact writing: fixed 15-significant-digit floats, the
//! resolved configuration embedded in every file, errors as JSON on stderr.

use crate::config::Options;
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

pub const SCHEMA: &str = "hoairy/v1";

/// 15 significant digits, deterministic across runs.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn resolved_config(subcommand: &str, opts: &Options) -> Value {
    json!({
        "subcommand": subcommand,
        "version": env!("CARGO_PKG_VERSION"),
        "options": serde_json::to_value(opts).expect("options serialize"),
    })
}

/// Writes a CSV artifact: a `# config` comment, a header row, then rows.
pub fn write_csv(
    opts: &Options,
    subcommand: &str,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let mut text = String::new();
    text.push_str(&format!(
        "# {} {}\n",
        SCHEMA,
        serde_json::to_string(&resolved_config(subcommand, opts)).expect("config serialize")
    ));
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    emit(opts.out.as_deref(), &text)
}

/// Writes a JSON artifact with the schema version and resolved config.
pub fn write_json(opts: &Options, subcommand: &str, result: Value) -> std::io::Result<()> {
    let doc = json!({
        "schema": SCHEMA,
        "config": resolved_config(subcommand, opts),
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("document serialize");
    text.push('\n');
    emit(opts.out.as_deref(), &text)
}

/// Writes a plain-text artifact with the config header comment.
pub fn write_text(opts: &Options, subcommand: &str, lines: &[String]) -> std::io::Result<()> {
    let mut text = format!(
        "# {} {}\n",
        SCHEMA,
        serde_json::to_string(&resolved_config(subcommand, opts)).expect("config serialize")
    );
    for line in lines {
        text.push_str(line);
        text.push('\n');
    }
    emit(opts.out.as_deref(), &text)
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
