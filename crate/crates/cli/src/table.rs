//! Rectangular output records and their CSV, JSON and plot encodings.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use jscc_bounds::oracles::BigRational;
use serde_json::{json, Value};

/// Significant digits kept for every printed float.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i128),
    Rational(BigRational),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<BigRational> for Cell {
    fn from(r: BigRational) -> Self {
        Cell::Rational(r)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
int_cell!(u32, u64, i64, usize);

#[derive(Debug, Clone)]
struct Column {
    name: String,
    /// Holds an information quantity in nats, rescaled by `--bits`.
    nats: bool,
}

/// A header plus rows of equal width.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
    plot: Option<(usize, usize)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns
                .iter()
                .map(|c| Column {
                    name: c.to_string(),
                    nats: false,
                })
                .collect(),
            rows: Vec::new(),
            plot: None,
        }
    }

    /// Marks columns as information quantities.
    pub fn nats(mut self, names: &[&str]) -> Self {
        for c in &mut self.columns {
            if names.contains(&c.name.as_str()) {
                c.nats = true;
            }
        }
        self
    }

    /// Chooses the `(x, y)` columns written by `--plot-data`.
    pub fn plot(mut self, x: &str, y: &str) -> Self {
        let idx = |name: &str| {
            self.columns
                .iter()
                .position(|c| c.name == name)
                .unwrap_or_else(|| panic!("no column `{name}`"))
        };
        self.plot = Some((idx(x), idx(y)));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width differs from header"
        );
        self.rows.push(row);
    }

    /// Divides every information-valued float by `log 2`.
    pub fn to_bits(&mut self) {
        for row in &mut self.rows {
            for (cell, col) in row.iter_mut().zip(&self.columns) {
                if let (Cell::Float(x), true) = (&mut *cell, col.nats) {
                    *x /= LN_2;
                }
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(&c.name)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&cell_text(c))).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(cell_json).collect()))
            .collect();
        let columns: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let doc = json!({ "columns": columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("tables always serialize");
        s.push('\n');
        s
    }

    /// Two whitespace-separated columns, one point per line.
    pub fn to_plot_data(&self) -> Option<String> {
        let (x, y) = self.plot?;
        let mut out = format!("# {} {}\n", self.columns[x].name, self.columns[y].name);
        for row in &self.rows {
            let _ = writeln!(out, "{} {}", plot_text(&row[x]), plot_text(&row[y]));
        }
        Some(out)
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits, printed in the shortest
/// form that reads back as that rounded value.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn round_sig(x: f64) -> f64 {
    format!("{:.*e}", SIG_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Float(x) => format_float(*x),
        Cell::Int(v) => v.to_string(),
        Cell::Rational(r) => rational_text(r),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Float(x) if x.is_finite() => json!(round_sig(*x)),
        Cell::Float(x) => Value::String(format_float(*x)),
        Cell::Int(v) => match i64::try_from(*v) {
            Ok(i) => json!(i),
            Err(_) => Value::String(v.to_string()),
        },
        Cell::Rational(r) => Value::String(rational_text(r)),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Bool(b) => Value::Bool(*b),
    }
}

fn plot_text(c: &Cell) -> String {
    match c {
        Cell::Rational(r) => format_float(jscc_bounds::oracles::rational_to_f64(r)),
        Cell::Bool(b) => u8::from(*b).to_string(),
        other => cell_text(other),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
