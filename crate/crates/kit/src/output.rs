//! Machine-readable output: a JSON document and a CSV table per run.
//!
//! Rationals are always written as exact `p/q` strings in lowest terms, with
//! the denominator omitted when it is 1. Output is byte-deterministic.

use std::collections::BTreeMap;

use clap::ValueEnum;
use daehee_core::{Rational, RationalPolynomial};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;

pub const ARTIFACT: &str = "daehee-kit";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

/// `{"degree": d, "coefficients": [c_0, ..., c_d]}`, ascending powers.
/// The zero polynomial has `degree: null` and no coefficients.
pub fn polynomial_json(p: &RationalPolynomial) -> Value {
    json!({
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
    })
}

/// Compact single-cell form for CSV: `[c_0 c_1 ... c_d]`.
pub fn polynomial_cell(p: &RationalPolynomial) -> String {
    let inner: Vec<String> = p.coeffs().iter().map(rational_string).collect();
    format!("[{}]", inner.join(" "))
}

#[derive(Debug, Serialize)]
pub struct Document {
    pub artifact: &'static str,
    pub schema_version: u32,
    pub command: &'static str,
    pub params: BTreeMap<String, Value>,
    pub entries: Vec<Value>,
}

impl Document {
    pub fn new(command: &'static str) -> Self {
        Self {
            artifact: ARTIFACT,
            schema_version: SCHEMA_VERSION,
            command,
            params: BTreeMap::new(),
            entries: Vec::new(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Header plus rows, rendered with the `csv` crate.
#[derive(Debug, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(header: I) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> Result<String> {
        let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// A run rendered both ways; the command picks one.
pub struct Rendered {
    pub document: Document,
    pub table: CsvTable,
}

impl Rendered {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.document.to_json(),
            Format::Csv => self.table.render(),
        }
    }
}
