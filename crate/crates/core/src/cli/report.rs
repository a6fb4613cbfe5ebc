//! Tabular reports: CSV (default), flat key=value, or JSON.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::tfcore::C64;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Complex(C64),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Complex(c) => format_complex(*c),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) if v.is_finite() => Value::from(*v),
            Cell::Float(v) => Value::from(format_float(*v)),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Complex(c) => Value::from(format_complex(*c)),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<C64> for Cell {
    fn from(v: C64) -> Self {
        Cell::Complex(v)
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:e}")
    }
}

/// `re+imj`, e.g. `1e0-2.5e-1j`.
pub fn format_complex(c: C64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}j", format_float(c.re), format_float(c.im.abs()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&'static str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (col, cell) in self.columns.iter().zip(row) {
                        obj.insert((*col).to_string(), cell.to_json());
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Output of one command: report tables, auxiliary files, and any
/// numerical-tolerance failures (which set exit code 3).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
    pub artifacts: Vec<(String, String)>,
    pub failures: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    KeyValue,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::KeyValue => "txt",
            Format::Json => "json",
        }
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if self.tables.len() > 1 {
                        if i > 0 {
                            out.push('\n');
                        }
                        writeln!(out, "# {}", t.name).unwrap();
                    }
                    out.push_str(&t.to_csv());
                }
                out
            }
            Format::KeyValue => {
                let mut out = String::new();
                for t in &self.tables {
                    for (r, row) in t.rows.iter().enumerate() {
                        if t.rows.len() > 1 || self.tables.len() > 1 {
                            writeln!(out, "[{}.{}]", t.name, r).unwrap();
                        }
                        for (col, cell) in t.columns.iter().zip(row) {
                            writeln!(out, "{col}={}", cell.render()).unwrap();
                        }
                    }
                }
                out
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), Value::from(self.command.clone()));
                for t in &self.tables {
                    obj.insert(t.name.clone(), t.to_json());
                }
                let mut s =
                    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
