//! Deterministic CSV output: `,` separated, `\n` terminated, reals with 17 significant digits.

use std::fmt::Write as _;

use crate::model::HeatReport;

pub const HEAT_HEADER: [&str; 6] = ["t", "dQ_a", "dQ_b", "dQ_ab", "dS0", "csl_ok"];
pub const AVERAGE_HEADER: [&str; 2] = ["tau", "avg_dQ_ab"];

/// Scientific notation with 17 significant digits, which round-trips every `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A single CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Real(x) => real(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// An in-memory table rendered in one pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

pub fn heat_row(r: &HeatReport) -> Vec<Cell> {
    vec![
        r.t.into(),
        r.dq_a.into(),
        r.dq_b.into(),
        r.dq_ab.into(),
        r.ds0.into(),
        r.csl_ok.into(),
    ]
}

/// Parses a rendered table back into its header and string cells.
pub fn parse(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}
