//! Plain-text operator and signal files.
//!
//! A header line `ggf-signal L`, `ggf-op L` or `ggf-spread L` is followed by
//! whitespace-separated `re,im` tokens, row-major for square tables.

use std::fmt::Write as _;

use super::op::Op;
use super::phase::PhaseTable;
use super::signal::{Signal, C64};
use crate::error::{Error, Result};

pub const SIGNAL_HEADER: &str = "ggf-signal";
pub const OP_HEADER: &str = "ggf-op";
pub const SPREAD_HEADER: &str = "ggf-spread";

fn format_entry(out: &mut String, c: C64) {
    write!(out, "{:e},{:e}", c.re, c.im).expect("writing to a String");
}

fn format_rows(header: &str, len: usize, entries: &[C64], per_line: usize) -> String {
    let mut out = format!("{header} {len}\n");
    for row in entries.chunks(per_line) {
        for (i, c) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            format_entry(&mut out, *c);
        }
        out.push('\n');
    }
    out
}

pub fn format_signal(s: &Signal) -> String {
    format_rows(SIGNAL_HEADER, s.len(), s.as_slice(), s.len())
}

pub fn format_op(op: &Op) -> String {
    let len = op.dim();
    let entries: Vec<C64> = (0..len * len).map(|i| op.get(i / len, i % len)).collect();
    format_rows(OP_HEADER, len, &entries, len)
}

pub fn format_table(header: &str, table: &PhaseTable<C64>) -> String {
    format_rows(header, table.len(), table.as_slice(), table.len())
}

fn parse_complex(token: &str) -> Result<C64> {
    let (re, im) = token
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected re,im but found '{token}'")))?;
    let re = re
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad real part '{re}': {e}")))?;
    let im = im
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad imaginary part '{im}': {e}")))?;
    Ok(C64::new(re, im))
}

/// Parses a file of the given kind, returning `L` and the entries.
pub fn parse_entries(text: &str, header: &str) -> Result<(usize, Vec<C64>)> {
    let mut tokens = text.split_whitespace();
    let found = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    if found != header {
        return Err(Error::Parse(format!(
            "expected header '{header}', found '{found}'"
        )));
    }
    let len: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing dimension after header".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad dimension: {e}")))?;
    let entries = tokens.map(parse_complex).collect::<Result<Vec<_>>>()?;
    let expected = if header == SIGNAL_HEADER {
        len
    } else {
        len * len
    };
    if entries.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: entries.len(),
        });
    }
    Ok((len, entries))
}

pub fn parse_signal(text: &str) -> Result<Signal> {
    let (_, entries) = parse_entries(text, SIGNAL_HEADER)?;
    Signal::new(entries)
}

pub fn parse_op(text: &str) -> Result<Op> {
    let (len, entries) = parse_entries(text, OP_HEADER)?;
    Op::from_rows(len, &entries)
}

pub fn parse_table(text: &str, header: &str) -> Result<PhaseTable<C64>> {
    let (len, entries) = parse_entries(text, header)?;
    PhaseTable::from_vec(len, entries)
}
