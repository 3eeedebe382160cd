//! CSV tables (12 significant digits, snake_case headers) and JSON sidecars.

use serde::Serialize;
use std::path::{Path, PathBuf};

/// Significant digits written for floating-point cells.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(i) => i as f64,
            Value::Float(x) => x,
        }
    }
}

/// Scientific notation with [`SIGNIFICANT_DIGITS`] digits; `nan`, `inf`
/// and `-inf` for non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
    }
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k].as_f64()).collect())
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(format_value)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv_string())
    }

    /// Parses a CSV written by [`Table::write`]; integer-looking cells
    /// become [`Value::Int`].
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r
            .headers()
            .map_err(|e| e.to_string())?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| e.to_string())?;
            rows.push(
                rec.iter()
                    .map(|c| match c.parse::<i64>() {
                        Ok(i) => Ok(Value::Int(i)),
                        Err(_) => c.parse::<f64>().map(Value::Float).map_err(|_| format!("bad cell `{c}`")),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(Self { headers, rows })
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }
}

/// A set of named tables produced by one command.
#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub tables: Vec<(String, Table)>,
}

impl Outputs {
    pub fn add(&mut self, name: impl Into<String>, table: Table) {
        self.tables.push((name.into(), table));
    }

    /// Writes `<stem>_<name>.csv` (or `<stem>.csv` for a single unnamed
    /// table) into `dir`, returning the written paths.
    pub fn write(&self, dir: &Path, stem: &str) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for (name, table) in &self.tables {
            let file = if name.is_empty() {
                format!("{stem}.csv")
            } else {
                format!("{stem}_{name}.csv")
            };
            let path = dir.join(file);
            table.write(&path)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// JSON sidecar next to the CSVs: everything needed to reproduce the run.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar<'a, C: Serialize> {
    pub command: &'a str,
    pub version: &'a str,
    pub seed: u64,
    /// Fully resolved settings; pass this file back via `--config`.
    pub config: &'a C,
    pub outputs: Vec<String>,
    pub columns: Vec<(String, Vec<String>)>,
    pub notes: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    std::fs::write(path, text + "\n")
}
