//! Experiment configuration: a plain-text `key = value` file with CLI
//! overrides, a frozen default tolerance table, and a content hash stamped
//! into every output row.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use tauop_core::weight::Weight;
use tauop_core::{Grid1D, TfError};

/// Default tolerance table shipped with the repository; echoed into every
/// summary for auditability. `tol.<name>` config keys override entries.
pub const DEFAULT_TOLERANCES: &str = include_str!("../default_tolerances.txt");

/// Named symbol selection for experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Gaussian,
    Identity,
    Zero,
    Multiplication,
    FourierMultiplier,
    Counterexample,
}

impl SymbolKind {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "identity" => Ok(Self::Identity),
            "zero" => Ok(Self::Zero),
            "multiplication" => Ok(Self::Multiplication),
            "fourier_multiplier" => Ok(Self::FourierMultiplier),
            "counterexample" => Ok(Self::Counterexample),
            other => Err(format!("unknown symbol '{other}'")),
        }
    }

    pub fn build(&self) -> tauop_core::symbol::Symbol {
        use tauop_core::symbol::Symbol;
        match self {
            Self::Gaussian => Symbol::gaussian(),
            Self::Identity => Symbol::identity(),
            Self::Zero => Symbol::zero(),
            Self::Multiplication => Symbol::multiplication_gaussian(),
            Self::FourierMultiplier => Symbol::fourier_multiplier_gaussian(),
            Self::Counterexample => Symbol::counterexample(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Identity => "identity",
            Self::Zero => "zero",
            Self::Multiplication => "multiplication",
            Self::FourierMultiplier => "fourier_multiplier",
            Self::Counterexample => "counterexample",
        }
    }
}

/// Full experiment configuration. All fields have defaults; a config file
/// and CLI flags override them (flags win).
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub grid_n: usize,
    pub grid_l: f64,
    pub shifted: bool,
    pub tau_list: Vec<f64>,
    pub r1: f64,
    pub r2: f64,
    pub sym_p: f64,
    pub sym_q: f64,
    pub weight: Weight,
    pub symbol: SymbolKind,
    pub lattice_extent: i32,
    pub n_random: usize,
    pub seed: u64,
    pub epsilon_list: Vec<f64>,
    pub counterexample_n: usize,
    pub corrupt_fft: f64,
    pub tolerances: BTreeMap<String, f64>,
    /// Whether `tau_list` was set explicitly (file or flag); commands with
    /// their own default τ grids honor an explicit list.
    pub tau_explicit: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            grid_n: 256,
            grid_l: 16.0,
            shifted: false,
            tau_list: (0..=10).map(|k| k as f64 / 10.0).collect(),
            r1: 2.0,
            r2: 2.0,
            sym_p: 2.0,
            sym_q: 2.0,
            weight: Weight::constant(),
            symbol: SymbolKind::Gaussian,
            lattice_extent: 2,
            n_random: 8,
            seed: 20240926,
            epsilon_list: (4..=10).map(|k| 2f64.powi(-k)).collect(),
            counterexample_n: 1 << 16,
            corrupt_fft: 0.0,
            tolerances: parse_tolerances(DEFAULT_TOLERANCES),
            tau_explicit: false,
        }
    }
}

fn parse_tolerances(text: &str) -> BTreeMap<String, f64> {
    let mut map = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((k, v)) = line.split_once('=') {
            if let Ok(value) = v.trim().parse::<f64>() {
                map.insert(k.trim().to_string(), value);
            }
        }
    }
    map
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" | "infinity" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|e| format!("'{t}': {e}")),
    }
}

pub fn parse_weight(s: &str) -> Result<Weight, String> {
    let s = s.trim();
    if s == "constant" {
        return Ok(Weight::constant());
    }
    if let Some(rest) = s.strip_prefix("radial:") {
        let v: f64 = rest.parse().map_err(|e| format!("radial order: {e}"))?;
        return Weight::radial_poly(v).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("separable:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err("separable weight needs two orders".into());
        }
        let s1: f64 = parts[0].parse().map_err(|e| format!("order 1: {e}"))?;
        let s2: f64 = parts[1].parse().map_err(|e| format!("order 2: {e}"))?;
        return Weight::separable_poly(s1, s2).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("exponential:") {
        let a: f64 = rest.parse().map_err(|e| format!("rate: {e}"))?;
        return Weight::exponential(a).map_err(|e| e.to_string());
    }
    Err(format!("unknown weight spec '{s}'"))
}

fn weight_str(w: &Weight) -> String {
    match w {
        Weight::Constant => "constant".to_string(),
        Weight::RadialPoly { s } => format!("radial:{s}"),
        Weight::SeparablePoly { s1, s2 } => format!("separable:{s1},{s2}"),
        Weight::Exponential { a } => format!("exponential:{a}"),
    }
}

impl ExperimentConfig {
    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key.trim() {
            "grid.n" => self.grid_n = v.parse().map_err(|e| format!("grid.n: {e}"))?,
            "grid.l" => self.grid_l = v.parse().map_err(|e| format!("grid.l: {e}"))?,
            "grid.shifted" => self.shifted = v.parse().map_err(|e| format!("grid.shifted: {e}"))?,
            "tau_list" => {
                self.tau_list = parse_f64_list(v)?;
                self.tau_explicit = true;
            }
            "space.r1" => self.r1 = parse_exponent(v)?,
            "space.r2" => self.r2 = parse_exponent(v)?,
            "space.p" => self.sym_p = parse_exponent(v)?,
            "space.q" => self.sym_q = parse_exponent(v)?,
            "space.weight" => self.weight = parse_weight(v)?,
            "symbol" => self.symbol = SymbolKind::parse(v)?,
            "probes.lattice_extent" => {
                self.lattice_extent = v.parse().map_err(|e| format!("lattice_extent: {e}"))?
            }
            "probes.n_random" => self.n_random = v.parse().map_err(|e| format!("n_random: {e}"))?,
            "probes.seed" => self.seed = v.parse().map_err(|e| format!("seed: {e}"))?,
            "epsilon_list" => self.epsilon_list = parse_f64_list(v)?,
            "counterexample.n" => {
                self.counterexample_n = v.parse().map_err(|e| format!("counterexample.n: {e}"))?
            }
            "corrupt_fft" => {
                self.corrupt_fft = v.parse().map_err(|e| format!("corrupt_fft: {e}"))?
            }
            other => {
                if let Some(name) = other.strip_prefix("tol.") {
                    let value: f64 = v.parse().map_err(|e| format!("{other}: {e}"))?;
                    self.tolerances.insert(name.to_string(), value);
                } else {
                    return Err(format!("unknown config key '{other}'"));
                }
            }
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            self.set(k, v)
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid1D, TfError> {
        if self.shifted {
            Grid1D::new_shifted(self.grid_l / 2.0, self.grid_n)
        } else {
            Grid1D::new(self.grid_l / 2.0, self.grid_n)
        }
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        *self
            .tolerances
            .get(name)
            .unwrap_or_else(|| panic!("tolerance '{name}' missing from the table"))
    }

    /// Canonical serialization of everything that affects the run; hashed
    /// into the config fingerprint.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grid.n = {}", self.grid_n);
        let _ = writeln!(out, "grid.l = {}", self.grid_l);
        let _ = writeln!(out, "grid.shifted = {}", self.shifted);
        let _ = writeln!(
            out,
            "tau_list = {}",
            self.tau_list
                .iter()
                .map(|t| format!("{t}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(out, "space.r1 = {}", self.r1);
        let _ = writeln!(out, "space.r2 = {}", self.r2);
        let _ = writeln!(out, "space.p = {}", self.sym_p);
        let _ = writeln!(out, "space.q = {}", self.sym_q);
        let _ = writeln!(out, "space.weight = {}", weight_str(&self.weight));
        let _ = writeln!(out, "symbol = {}", self.symbol.name());
        let _ = writeln!(out, "probes.lattice_extent = {}", self.lattice_extent);
        let _ = writeln!(out, "probes.n_random = {}", self.n_random);
        let _ = writeln!(out, "probes.seed = {}", self.seed);
        let _ = writeln!(
            out,
            "epsilon_list = {}",
            self.epsilon_list
                .iter()
                .map(|t| format!("{t}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(out, "counterexample.n = {}", self.counterexample_n);
        let _ = writeln!(out, "corrupt_fft = {}", self.corrupt_fft);
        let _ = writeln!(out, "tau_explicit = {}", self.tau_explicit);
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "tol.{k} = {v}");
        }
        out
    }

    /// First 16 hex chars of the SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        let mut s = String::with_capacity(16);
        for b in digest.iter().take(8) {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_tolerance_table() {
        let cfg = ExperimentConfig::default();
        assert!(cfg.tolerance("moyal") > 0.0);
        assert!(cfg.tolerance("operator_identity") > 0.0);
    }

    #[test]
    fn set_and_hash_stability() {
        let mut a = ExperimentConfig::default();
        let mut b = ExperimentConfig::default();
        assert_eq!(a.hash(), b.hash());
        a.set("grid.n", "128").unwrap();
        assert_ne!(a.hash(), b.hash());
        b.set("grid.n", "128").unwrap();
        assert_eq!(a.hash(), b.hash());
    }

    #[test]
    fn tolerance_override() {
        let mut cfg = ExperimentConfig::default();
        cfg.set("tol.moyal", "1e-3").unwrap();
        assert_eq!(cfg.tolerance("moyal"), 1e-3);
    }

    #[test]
    fn weight_specs() {
        assert_eq!(parse_weight("constant").unwrap(), Weight::constant());
        assert_eq!(
            parse_weight("radial:2").unwrap(),
            Weight::radial_poly(2.0).unwrap()
        );
        assert_eq!(
            parse_weight("separable:1,2").unwrap(),
            Weight::separable_poly(1.0, 2.0).unwrap()
        );
        assert!(parse_weight("exponential:2").is_err());
        assert!(parse_weight("bogus").is_err());
    }

    #[test]
    fn rejects_unknown_key() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.set("no.such.key", "1").is_err());
    }

    #[test]
    fn infinity_exponents() {
        let mut cfg = ExperimentConfig::default();
        cfg.set("space.r2", "inf").unwrap();
        assert_eq!(cfg.r2, f64::INFINITY);
    }
}
