//! `tauop`: numerical experiments for τ-Wigner distributions and
//! τ-pseudodifferential operators.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tauop_cli::commands;
use tauop_cli::config::{ExperimentConfig, SymbolKind};

#[derive(Parser)]
#[command(
    name = "tauop",
    about = "Identity verification, operator-norm scaling, endpoint counterexample and norm experiments for tau-quantization",
    version
)]
struct Cli {
    /// Plain-text key = value configuration file (flags override it)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV and summary files
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Grid size N (power of two)
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,

    /// Grid window length L (grid covers [-L/2, L/2))
    #[arg(long = "grid-l", global = true)]
    grid_l: Option<f64>,

    /// Comma-separated list of tau values
    #[arg(long, global = true, value_delimiter = ',')]
    tau: Option<Vec<f64>>,

    /// Seed of the counter-based probe generator
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Shift the grid by half a step (no sample at the origin)
    #[arg(long = "shifted-grid", global = true)]
    shifted_grid: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every module invariant; exit code 0 iff all checks pass
    Verify,
    /// Operator-norm lower bounds against alpha(tau) over a tau grid
    Scaling,
    /// Endpoint unboundedness experiment on the refined shifted grid
    Counterexample,
    /// Wiener / modulation norms of tau-Wigner distributions over tau
    Norms,
    /// Convert a symbol between quantization parameters and dump samples
    Convert {
        #[arg(long = "tau-from")]
        tau_from: f64,
        #[arg(long = "tau-to")]
        tau_to: f64,
        /// Symbol name (defaults to the configured symbol)
        #[arg(long)]
        symbol: Option<String>,
    },
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    if let Some(n) = cli.grid_n {
        cfg.grid_n = n;
    }
    if let Some(l) = cli.grid_l {
        cfg.grid_l = l;
    }
    if let Some(taus) = &cli.tau {
        cfg.tau_list = taus.clone();
        cfg.tau_explicit = true;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.shifted_grid {
        cfg.shifted = true;
    }
    if cfg.tau_list.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err("tau values must lie in [0, 1]".into());
    }
    cfg.grid().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };

    let result = match &cli.cmd {
        Cmd::Verify => commands::run_verify(&cfg, &cli.out),
        Cmd::Scaling => commands::run_scaling(&cfg, &cli.out),
        Cmd::Counterexample => commands::run_counterexample(&cfg, &cli.out),
        Cmd::Norms => commands::run_norms(&cfg, &cli.out),
        Cmd::Convert {
            tau_from,
            tau_to,
            symbol,
        } => {
            let kind = match symbol {
                Some(name) => match SymbolKind::parse(name) {
                    Ok(k) => Some(k),
                    Err(e) => {
                        eprintln!("config error: {e}");
                        return ExitCode::from(2);
                    }
                },
                None => None,
            };
            commands::run_convert(&cfg, &cli.out, *tau_from, *tau_to, kind)
        }
    };

    match result {
        Ok(summary) => {
            summary.print_lines();
            if summary.all_pass() {
                println!(
                    "{}: all {} checks passed",
                    summary.command,
                    summary.checks.len()
                );
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{}: {} check(s) failed:",
                    summary.command,
                    summary.failures().len()
                );
                for f in summary.failures() {
                    eprintln!(
                        "  {}: measured {:.6e} vs threshold {:.6e}",
                        f.name, f.measured, f.threshold
                    );
                }
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
