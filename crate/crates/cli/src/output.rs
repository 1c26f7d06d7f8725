//! Record tables rendered as CSV, JSON or aligned text.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    /// Printed with 12 significant digits.
    Num(f64),
    /// Printed with a fixed number of decimals.
    Fixed(f64, usize),
    Bool(bool),
    Empty,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn non_finite(x: f64) -> Option<&'static str> {
    if x.is_nan() {
        Some("NaN")
    } else if x == f64::INFINITY {
        Some("inf")
    } else if x == f64::NEG_INFINITY {
        Some("-inf")
    } else {
        None
    }
}

pub fn fmt_num(x: f64) -> String {
    if let Some(s) = non_finite(x) {
        return s.to_owned();
    }
    let y = round_sig(x);
    let a = y.abs();
    if y == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => fmt_num(*x),
            Cell::Fixed(x, d) => non_finite(*x).map_or_else(|| format!("{x:.d$}"), str::to_owned),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        let float = |x: f64| {
            non_finite(x).map_or_else(
                || serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
                |s| Value::String(s.to_owned()),
            )
        };
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::from(*n),
            Cell::Num(x) => float(round_sig(*x)),
            Cell::Fixed(x, d) => match non_finite(*x) {
                Some(s) => Value::String(s.to_owned()),
                None => float(format!("{x:.d$}").parse().expect("formatted float parses")),
            },
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rows sharing one header.
#[derive(Debug, Clone, Default)]
pub struct Records {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Records {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| ((*c).to_owned(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |out: &mut W, items: &mut dyn Iterator<Item = &str>| -> std::io::Result<()> {
            let padded: Vec<String> = items.zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            writeln!(out, "{}", padded.join("  ").trim_end())
        };
        line(&mut out, &mut self.columns.iter().copied())?;
        for row in &cells {
            line(&mut out, &mut row.iter().map(String::as_str))?;
        }
        Ok(())
    }
}

/// A command's output: one or more named sections.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub sections: Vec<(&'static str, Records)>,
}

impl Report {
    pub fn single(name: &'static str, records: Records) -> Self {
        Self {
            sections: vec![(name, records)],
        }
    }

    pub fn with(mut self, name: &'static str, records: Records) -> Self {
        self.sections.push((name, records));
        self
    }

    /// CSV carries only the first section; JSON carries an array for a
    /// single section and an object keyed by section name otherwise.
    pub fn write<W: Write>(&self, format: Format, mut out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                if let Some((_, r)) = self.sections.first() {
                    r.write_csv(&mut out).map_err(std::io::Error::other)?;
                }
            }
            Format::Json => {
                let value = if self.sections.len() == 1 {
                    self.sections[0].1.to_json()
                } else {
                    Value::Object(
                        self.sections
                            .iter()
                            .map(|(n, r)| ((*n).to_owned(), r.to_json()))
                            .collect(),
                    )
                };
                serde_json::to_writer_pretty(&mut out, &value)?;
                writeln!(out)?;
            }
            Format::Text => {
                for (i, (name, r)) in self.sections.iter().enumerate() {
                    if self.sections.len() > 1 {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        writeln!(out, "[{name}]")?;
                    }
                    r.write_text(&mut out)?;
                }
            }
        }
        Ok(())
    }
}
