//! Output formatting shared by all subcommands.

use std::io::{self, Write};

use kummer_core::curve::InvariantTuple;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn tuple_csv(t: &InvariantTuple) -> String {
    let row: Vec<String> = t.as_row().iter().map(|c| c.to_string()).collect();
    row.join(",")
}

/// Tuples as a table: one `(n0,n1,...,nr)` per line in text mode, bare rows in CSV.
pub fn tuples(ts: &[InvariantTuple], r: usize, format: Format) -> String {
    match format {
        Format::Json => json(&ts),
        Format::Csv => {
            let mut out = String::from("n0");
            for i in 1..=r {
                out.push_str(&format!(",n{i}"));
            }
            out.push('\n');
            for t in ts {
                out.push_str(&tuple_csv(t));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let header: Vec<String> = std::iter::once("n0".to_string())
                .chain((1..=r).map(|i| format!("n{i}")))
                .collect();
            let mut out = format!("({})\n", header.join(","));
            for t in ts {
                out.push_str(&format!("{t}\n"));
            }
            out.push_str(&format!("{} tuple(s)\n", ts.len()));
            out
        }
    }
}

/// Key/value lines for text mode.
pub fn pairs(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

pub fn write(s: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(s.as_bytes());
    let _ = out.flush();
}
