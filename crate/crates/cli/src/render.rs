//! Table and report rendering.

use std::fmt::Write;

use ginbetti::betti::BettiTable;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    M2,
    Csv,
    Json,
}

/// Betti diagram with column `i` and row `j` holding `β_{i,i+j}`.
pub fn render_m2(t: &BettiTable) -> String {
    let cols = t.projdim().map(|p| p + 1).unwrap_or(0);
    let rows = t.rows();
    let cell = |i: usize, row: u32| match t.at_row(i, row) {
        0 => "-".to_string(),
        v => v.to_string(),
    };
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            rows.iter()
                .map(|&r| cell(i, r).len())
                .chain([i.to_string().len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(0);

    if cols == 0 {
        return "\n".to_string();
    }
    let mut out = String::new();
    let header: Vec<String> = (0..cols).map(|i| format!("{:>w$}", i, w = widths[i])).collect();
    let _ = writeln!(out, "{:label$} {}", "", header.join(" "));
    for &r in &rows {
        let cells: Vec<String> = (0..cols)
            .map(|i| format!("{:>w$}", cell(i, r), w = widths[i]))
            .collect();
        let _ = writeln!(out, "{:>label$} {}", format!("{r}:"), cells.join(" "));
    }
    out
}

/// `i,j,value` rows, one per nonzero entry.
pub fn render_csv(t: &BettiTable) -> String {
    let mut out = String::from("i,j,value\n");
    for ((i, j), v) in t.entries() {
        let _ = writeln!(out, "{i},{j},{v}");
    }
    out
}

/// Versioned JSON envelope used for every `--format json` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub result: T,
}

pub fn render_json<T: Serialize>(command: &str, result: &T) -> String {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("serializable report");
    s.push('\n');
    s
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<Envelope<T>> {
    serde_json::from_str(text)
}

pub fn render_table(t: &BettiTable, format: Format) -> String {
    match format {
        Format::M2 => render_m2(t),
        Format::Csv => render_csv(t),
        Format::Json => render_json("betti", t),
    }
}
