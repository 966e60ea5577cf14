use std::io::{self, Write};
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    Csv,
    /// Aligned columns for reading in a terminal.
    Table,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Str(String),
    Bool(bool),
    List(Vec<Cell>),
    Null,
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(BigInt::from(v))
            }
        }
    )*};
}

int_cell!(i8, i64, u32, u64, usize);

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::Number(Number::from_str(&v.to_string()).expect("integer literal")),
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::List(items) => Value::Array(items.iter().map(Cell::to_json).collect()),
            Cell::Null => Value::Null,
        }
    }

    fn to_text(&self, null: &str) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(items) => items
                .iter()
                .map(|c| c.to_text(null))
                .collect::<Vec<_>>()
                .join(";"),
            Cell::Null => null.to_owned(),
        }
    }
}

/// An ordered record; every row of one report has the same keys.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row(Vec<(&'static str, Cell)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.0.push((key, value.into()));
        self
    }
}

pub fn emit(rows: &[Row], format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                let obj: Map<String, Value> =
                    row.0.iter().map(|(k, v)| ((*k).to_owned(), v.to_json())).collect();
                serde_json::to_writer(&mut *out, &Value::Object(obj))?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if let Some(first) = rows.first() {
                w.write_record(first.0.iter().map(|(k, _)| *k))?;
            }
            for row in rows {
                w.write_record(row.0.iter().map(|(_, v)| v.to_text("")))?;
            }
            w.flush()?;
        }
        Format::Table => {
            let Some(first) = rows.first() else {
                return Ok(());
            };
            let header: Vec<String> = first.0.iter().map(|(k, _)| (*k).to_owned()).collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.0.iter().map(|(_, v)| v.to_text("-")).collect())
                .collect();
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for line in &body {
                for (w, cell) in widths.iter_mut().zip(line) {
                    *w = (*w).max(cell.len());
                }
            }
            for line in std::iter::once(&header).chain(&body) {
                let cells: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                writeln!(out, "{}", cells.join("  ").trim_end())?;
            }
        }
    }
    Ok(())
}
