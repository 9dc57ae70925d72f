//! `LNS1` table files.
//!
//! ```text
//! LNS1
//! P=3
//! Q=2
//! SEZ=1
//! 0 1
//! 1 2
//! ```
//!
//! One record per line, `SEZ + 1` entry lines in ascending `Z`, every line
//! newline-terminated, no trailing whitespace. Loading re-runs the axiom
//! checks and rejects tables that fail them.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{LnsError, Result};
use crate::exactq::Base;
use crate::lnscore::SumTable;

pub const MAGIC: &str = "LNS1";

pub fn write_table(table: &SumTable) -> String {
    let mut out = String::new();
    let base = table.base();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "P={}", base.p()).unwrap();
    writeln!(out, "Q={}", base.q()).unwrap();
    writeln!(out, "SEZ={}", table.sez()).unwrap();
    for (z, st) in table.entries().iter().enumerate() {
        writeln!(out, "{z} {st}").unwrap();
    }
    out
}

fn bad(line: usize, msg: impl Into<String>) -> LnsError {
    LnsError::TableFormat { line, msg: msg.into() }
}

fn decimal<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad(line, format!("expected a decimal integer, got {s:?}")));
    }
    s.parse().map_err(|_| bad(line, format!("integer out of range: {s}")))
}

fn header<T: std::str::FromStr>(lines: &[&str], idx: usize, key: &str) -> Result<T> {
    let line = lines.get(idx).ok_or_else(|| bad(idx + 1, format!("missing {key}= line")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| bad(idx + 1, format!("expected {key}=<decimal>")))?;
    decimal(value, idx + 1)
}

/// Parses the syntax only; no axiom check.
pub fn parse_table_unchecked(text: &str) -> Result<SumTable> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| bad(text.lines().count().max(1), "file must end with a newline"))?;
    let lines: Vec<&str> = body.split('\n').collect();
    if lines.first() != Some(&MAGIC) {
        return Err(bad(1, format!("missing {MAGIC} magic line")));
    }
    let p: BigUint = header(&lines, 1, "P")?;
    let q: BigUint = header(&lines, 2, "Q")?;
    let sez: u64 = header(&lines, 3, "SEZ")?;
    let base = Base::new(p, q).map_err(|e| bad(2, e.to_string()))?;

    let entry_lines = &lines[4.min(lines.len())..];
    let expected = sez
        .checked_add(1)
        .ok_or_else(|| bad(4, "SEZ too large"))?;
    if entry_lines.len() as u64 != expected {
        return Err(bad(
            5,
            format!("expected {expected} entry lines, found {}", entry_lines.len()),
        ));
    }
    let mut st = Vec::with_capacity(entry_lines.len());
    for (i, line) in entry_lines.iter().enumerate() {
        let lineno = i + 5;
        let (z, v) = line
            .split_once(' ')
            .ok_or_else(|| bad(lineno, "expected \"<z> <st>\""))?;
        let z: u64 = decimal(z, lineno)?;
        if z != i as u64 {
            return Err(bad(lineno, format!("expected index {i}, found {z}")));
        }
        st.push(decimal(v, lineno)?);
    }
    SumTable::from_parts(base, sez, st)
}

/// Parses a table file and re-checks every axiom.
pub fn parse_table(text: &str) -> Result<SumTable> {
    let table = parse_table_unchecked(text)?;
    crate::lnscore::verify_axioms(&table).into_result()?;
    Ok(table)
}
