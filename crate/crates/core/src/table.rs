//! Delimited text output with locale-independent number formatting.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Radius;

/// Significant digits of computed quantities.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// A computed value with 12 significant digits: plain decimal between
/// 1e-5 and 1e15, exponent form outside.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// An input parameter, printed as the shortest string that parses back to
/// the same double.
pub fn format_input(x: f64) -> String {
    format!("{x}")
}

pub fn format_radius(r: Radius) -> String {
    match r {
        Radius::Finite(x) => format_input(x),
        Radius::Unconfined => "inf".into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    #[default]
    Csv,
    Tsv,
}

impl Delimiter {
    pub fn char(&self) -> char {
        match self {
            Delimiter::Csv => ',',
            Delimiter::Tsv => '\t',
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Delimiter::Csv => "csv",
            Delimiter::Tsv => "tsv",
        }
    }
}

impl FromStr for Delimiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Delimiter::Csv),
            "tsv" => Ok(Delimiter::Tsv),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, delimiter: Delimiter) -> String {
        let d = delimiter.char().to_string();
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(&d));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(&d));
        }
        out
    }

    pub fn write(&self, path: &Path, delimiter: Delimiter) -> Result<()> {
        std::fs::write(path, self.render(delimiter))?;
        Ok(())
    }

    /// Column index by header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}
