//! Deterministic CSV output: UTF-8, header row, '.' decimal separator,
//! scientific notation with 17 significant digits. CSV bodies carry no
//! timestamps so identical configs reproduce byte-identical files.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// Format a float in scientific notation with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) {
        assert_eq!(
            cells.len(),
            self.header.len(),
            "row width does not match header"
        );
        self.rows.push(cells);
    }

    pub fn to_string_body(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_string_body())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}
