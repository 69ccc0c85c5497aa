//! Minimal CSV emission with a versioned schema line.
//!
//! Every file starts with `# copolymer/<schema> v<version>`, followed by
//! the header row. Numbers are written with Rust's shortest round-trip
//! formatting, so a rerun with the same inputs gives the same bytes.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

/// Version of every CSV schema emitted by this crate.
pub const SCHEMA_VERSION: u32 = 1;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            Cell::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Cell::Float(x) if x.is_nan() => out.push_str("nan"),
            Cell::Float(x) if x.is_infinite() => {
                out.push_str(if *x > 0.0 { "inf" } else { "-inf" })
            }
            Cell::Float(x) => {
                let _ = write!(out, "{x}");
            }
            Cell::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                out.push('"');
                out.push_str(&s.replace('"', "\"\""));
                out.push('"');
            }
            Cell::Text(s) => out.push_str(s),
        }
    }
}

/// A table with a named schema.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub schema: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(schema: &str, columns: &[&str]) -> Self {
        CsvTable {
            schema: schema.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width does not match the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width does not match `{}` header",
            self.schema
        );
        self.rows.push(row);
    }

    pub fn schema_line(&self) -> String {
        format!("# copolymer/{} v{SCHEMA_VERSION}", self.schema)
    }

    pub fn render(&self) -> String {
        let mut s = self.schema_line();
        s.push('\n');
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                c.render(&mut s);
            }
            s.push('\n');
        }
        s
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.render())
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// `(x, y, yerr)` triples for external plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    /// Series label per point, so several curves can share one file.
    pub points: Vec<(String, f64, f64, f64)>,
}

impl PlotData {
    pub fn new(name: &str, x_label: &str, y_label: &str) -> Self {
        PlotData {
            name: name.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            points: Vec::new(),
        }
    }

    pub fn push(&mut self, series: impl Into<String>, x: f64, y: f64, yerr: f64) {
        self.points.push((series.into(), x, y, yerr));
    }

    pub fn to_table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            &format!("plot/{}", self.name),
            &["series", "x", "y", "yerr"],
        );
        t.schema = format!("plot/{} x={} y={}", self.name, self.x_label, self.y_label);
        for (s, x, y, e) in &self.points {
            t.push(vec![
                s.as_str().into(),
                (*x).into(),
                (*y).into(),
                (*e).into(),
            ]);
        }
        t
    }
}
