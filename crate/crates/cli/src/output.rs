//! Tabular results rendered as CSV or JSON.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float_text(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// Space-separated [`float_text`] values, used for vector-valued cells.
pub fn vector_text(v: &[f64]) -> String {
    v.iter().map(|x| float_text(*x)).collect::<Vec<_>>().join(" ")
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => float_text(*f),
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Null => Json::Null,
            Cell::Bool(b) => Json::Bool(*b),
            Cell::Int(i) => Json::from(*i),
            Cell::Float(f) => Number::from_f64(*f).map_or_else(|| Json::String(float_text(*f)), Json::Number),
            Cell::Text(t) => Json::String(t.clone()),
        }
    }
}

/// Header plus rows; every row has one cell per column.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_json_value(&self) -> Json {
        Json::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Json> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Json::Object(obj)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json serializes");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes `text` to `out`, or to standard output when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, 0.0] {
            assert_eq!(float_text(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float_text(1.0), "1.0000000000000000e0");
        assert_eq!(float_text(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(&["name", "value", "ok", "missing"]);
        t.push(vec!["a,b".into(), 0.5.into(), true.into(), Cell::Null]);
        assert_eq!(t.to_csv(), "name,value,ok,missing\n\"a,b\",5.0000000000000000e-1,true,\n");
        let j = t.to_json_value();
        assert_eq!(j[0]["name"], "a,b");
        assert_eq!(j[0]["value"], 0.5);
        assert!(j[0]["missing"].is_null());
        let keys: Vec<&String> = j[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["name", "value", "ok", "missing"]);
    }
}
