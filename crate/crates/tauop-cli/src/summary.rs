//! Machine-readable run summaries: one named check per line with its
//! measured value, threshold and verdict, plus run metadata. The timestamp
//! lives only here, never in CSV bodies.

use std::fmt::Write as _;
use std::io;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::csvout::fmt_float;

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckRow {
    /// Standard verdict: the check passes when `measured <= threshold`.
    pub fn bounded(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            pass: measured.is_finite() && measured <= threshold,
        }
    }

    /// Growth verdict: the check passes when `measured >= threshold`.
    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            pass: measured.is_finite() && measured >= threshold,
        }
    }
}

/// Aggregated run result; check names are unique by construction.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub command: String,
    pub config_hash: String,
    pub checks: Vec<CheckRow>,
    pub extras: Vec<(String, String)>,
}

impl RunSummary {
    pub fn new(command: impl Into<String>, config_hash: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            config_hash: config_hash.into(),
            checks: Vec::new(),
            extras: Vec::new(),
        }
    }

    pub fn push(&mut self, row: CheckRow) {
        assert!(
            self.checks.iter().all(|c| c.name != row.name),
            "duplicate check name '{}'",
            row.name
        );
        self.checks.push(row);
    }

    pub fn push_all(&mut self, rows: Vec<CheckRow>) {
        for r in rows {
            self.push(r);
        }
    }

    pub fn extra(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.extras.push((key.into(), value.into()));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckRow> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// `key = value` text rendering, tolerance table echoed at the end.
    pub fn render(&self, tolerance_table: &str) -> String {
        let ts = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "command = {}", self.command);
        let _ = writeln!(out, "config_hash = {}", self.config_hash);
        let _ = writeln!(out, "timestamp_unix = {ts}");
        let _ = writeln!(out, "checks_total = {}", self.checks.len());
        let _ = writeln!(
            out,
            "checks_failed = {}",
            self.checks.iter().filter(|c| !c.pass).count()
        );
        for c in &self.checks {
            let _ = writeln!(out, "check.{}.measured = {}", c.name, fmt_float(c.measured));
            let _ = writeln!(
                out,
                "check.{}.threshold = {}",
                c.name,
                fmt_float(c.threshold)
            );
            let _ = writeln!(
                out,
                "check.{}.pass = {}",
                c.name,
                if c.pass { "true" } else { "false" }
            );
        }
        for (k, v) in &self.extras {
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "# tolerance table in effect:");
        for line in tolerance_table.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let _ = writeln!(out, "tolerance.{line}");
        }
        out
    }

    pub fn write_to(&self, path: &Path, tolerance_table: &str) -> io::Result<()> {
        std::fs::write(path, self.render(tolerance_table))
    }

    /// One human-readable line per check, for terminal output.
    pub fn print_lines(&self) {
        for c in &self.checks {
            println!(
                "{}: {} (measured {:.3e}, threshold {:.3e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.threshold
            );
        }
    }
}
