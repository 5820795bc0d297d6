//! Experiment driver library behind the `tauop` binary: configuration,
//! the identity-verification check registry, the scaling / counterexample /
//! norm experiments, and deterministic CSV + summary output.

pub mod checks;
pub mod commands;
pub mod config;
pub mod csvout;
pub mod summary;
