//! Column-oriented output tables, written as CSV or JSON.

use std::fmt::Write as _;

use confined_hydrogen::exact::{float_to_rational, format_rational, BigFloat, ExactScalar};
use serde_json::{Map, Number, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Already formatted to the run's significant digits.
    Num(String),
    Text(String),
    Empty,
}

impl Cell {
    pub fn float(x: &BigFloat, digits: usize) -> Self {
        Cell::Num(format_rational(&float_to_rational(x), digits))
    }

    pub fn exact(x: &ExactScalar, digits: usize) -> Self {
        Cell::Num(format_rational(x, digits))
    }

    pub fn int(n: impl Into<i64>) -> Self {
        Cell::Int(n.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(s) => s.clone(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Num(s) => s.parse::<Number>().map(Value::Number).unwrap_or_else(|_| Value::from(s.clone())),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// One key per column, each holding the column as an array.
    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        for (i, name) in self.header.iter().enumerate() {
            let column = self.rows.iter().map(|r| r[i].json()).collect();
            obj.insert(name.clone(), Value::Array(column));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
        s.push('\n');
        s
    }
}
