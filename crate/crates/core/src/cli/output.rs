//! Tables and their CSV / JSON renderings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Cell {
        Cell::Int(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Cell {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Cell {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Cell {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Cell {
        Cell::Text(x)
    }
}

/// 17 significant digits, enough to round-trip any double.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeInfo {
    pub p: i64,
    pub q: i64,
}

/// One command's output: an optional table plus scalar fields.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<SlopeInfo>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Insertion order is kept in CSV; JSON sorts keys.
    #[serde(serialize_with = "ordered", deserialize_with = "unordered")]
    pub fields: Vec<(String, Cell)>,
}

fn ordered<S: serde::Serializer>(v: &[(String, Cell)], s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<&str, &Cell> = v.iter().map(|(k, c)| (k.as_str(), c)).collect();
    m.serialize(s)
}

fn unordered<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<(String, Cell)>, D::Error> {
    let m: BTreeMap<String, Cell> = BTreeMap::deserialize(d)?;
    Ok(m.into_iter().collect())
}

impl Report {
    pub fn new(slope: Option<(i64, i64)>) -> Report {
        Report { schema: SCHEMA_VERSION, slope: slope.map(|(p, q)| SlopeInfo { p, q }), ..Default::default() }
    }

    pub fn columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn field(&mut self, key: &str, value: impl Into<Cell>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn complex(&mut self, key: &str, z: Complex64) {
        self.field(&format!("{key}_re"), z.re);
        self.field(&format!("{key}_im"), z.im);
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// RFC 4180 CSV. A report with a table prints the table; scalar fields
    /// go out as a two-column key,value table when there is no row data.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(w);
        if self.rows.is_empty() {
            out.write_record(["key", "value"])?;
            for (k, v) in &self.fields {
                out.write_record([k.as_str(), v.render().as_str()])?;
            }
        } else {
            out.write_record(&self.columns)?;
            for r in &self.rows {
                out.write_record(r.iter().map(Cell::render))?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<M> {
    #[serde(flatten)]
    pub report: Report,
    pub manifest: M,
}
