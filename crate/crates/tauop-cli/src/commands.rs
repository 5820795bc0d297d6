//! The experiment commands: `verify`, `scaling`, `counterexample`, `norms`
//! and `convert`. Each writes a CSV table plus a `key = value` summary into
//! the output directory and returns the run summary for exit-code handling.

use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;

use tauop_core::operators::{
    adjoint_residual, convert_symbol, modulation_operator_norm_lower, op_anti_kohn_nirenberg,
    op_kohn_nirenberg, ProbeSpec,
};
use tauop_core::signal::inner_product;
use tauop_core::spaces::{
    alpha, conjugate_exponent, modulation_norm, symbol_norms, SymbolNormOptions, SymbolNormRequest,
};
use tauop_core::symbol::Symbol;
use tauop_core::tf::tau_wigner;
use tauop_core::weight::{Weight, WeightExpr};
use tauop_core::{CSignal, Grid1D, PhaseGrid};

use crate::checks;
use crate::config::{ExperimentConfig, SymbolKind, DEFAULT_TOLERANCES};
use crate::csvout::{fmt_float, CsvTable};
use crate::summary::{CheckRow, RunSummary};

fn write_outputs(
    out_dir: &Path,
    name: &str,
    table: &CsvTable,
    summary: &RunSummary,
) -> Result<(), String> {
    std::fs::create_dir_all(out_dir).map_err(|e| format!("cannot create {out_dir:?}: {e}"))?;
    table
        .write_to(&out_dir.join(format!("{name}.csv")))
        .map_err(|e| format!("csv write failed: {e}"))?;
    summary
        .write_to(
            &out_dir.join(format!("{name}_summary.txt")),
            DEFAULT_TOLERANCES,
        )
        .map_err(|e| format!("summary write failed: {e}"))?;
    Ok(())
}

fn reject_shifted(cfg: &ExperimentConfig, command: &str) -> Result<(), String> {
    if cfg.shifted {
        return Err(format!(
            "{command} requires an unshifted grid; the half-step mode exists for the counterexample experiment"
        ));
    }
    Ok(())
}

/// Run the full identity-verification registry.
pub fn run_verify(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary, String> {
    reject_shifted(cfg, "verify")?;
    let hash = cfg.hash();
    let started = Instant::now();
    let rows = checks::run_all(cfg);
    let elapsed = started.elapsed().as_secs_f64();

    let mut table = CsvTable::new(&["check", "measured", "threshold", "pass", "config_hash"]);
    let mut summary = RunSummary::new("verify", &hash);
    for r in rows {
        table.push_row(vec![
            r.name.clone(),
            fmt_float(r.measured),
            fmt_float(r.threshold),
            if r.pass { "1" } else { "0" }.to_string(),
            hash.clone(),
        ]);
        summary.push(r);
    }
    summary.extra("runtime_seconds", format!("{elapsed:.3}"));
    write_outputs(out_dir, "verify", &table, &summary)?;
    Ok(summary)
}

fn scaling_taus(cfg: &ExperimentConfig) -> Vec<f64> {
    if cfg.tau_explicit {
        cfg.tau_list
            .iter()
            .copied()
            .filter(|t| *t > 0.0 && *t < 1.0)
            .collect()
    } else {
        (1..=19).map(|k| k as f64 * 0.05).collect()
    }
}

/// Operator-norm scaling experiment: probe lower bounds against
/// `α_{(r₁,r₂)}(τ) · ‖a‖_{W(FL^p_{v_J}, L^q)}` over a τ grid.
pub fn run_scaling(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary, String> {
    reject_shifted(cfg, "scaling")?;
    let hash = cfg.hash();
    let grid = cfg.grid().map_err(|e| e.to_string())?;
    let window = CSignal::gaussian(grid);
    let symbol = cfg.symbol.build();
    let taus = scaling_taus(cfg);

    let admissible = cfg.sym_q <= conjugate_exponent(cfg.sym_p)
        && cfg
            .r1
            .max(cfg.r2)
            .max(conjugate_exponent(cfg.r1))
            .max(conjugate_exponent(cfg.r2))
            <= cfg.sym_p;
    if !admissible {
        eprintln!(
            "warning: exponents (p={}, q={}, r1={}, r2={}) are outside the admissible class; computing anyway",
            cfg.sym_p, cfg.sym_q, cfg.r1, cfg.r2
        );
    }

    let vj = WeightExpr::plain(cfg.weight.compose_with_j());
    let wiener = symbol_norms(
        &symbol,
        &[SymbolNormRequest::wiener(
            cfg.sym_p,
            cfg.sym_q,
            vj,
            WeightExpr::plain(Weight::constant()),
        )],
        &SymbolNormOptions {
            n: 64,
            half_width: cfg.grid_l / 2.0,
        },
    )
    .map_err(|e| e.to_string())?[0];

    let probes = ProbeSpec {
        lattice_extent: cfg.lattice_extent,
        n_random: cfg.n_random,
        seed: cfg.seed,
    };

    let mut table = CsvTable::new(&[
        "tau",
        "alpha",
        "norm_lower",
        "symbol_wiener_norm",
        "ratio",
        "admissible",
        "config_hash",
    ]);
    let mut ratios = Vec::new();
    for &tau in &taus {
        let al = alpha(cfg.r1, cfg.r2, tau, 1).map_err(|e| e.to_string())?;
        let lower = modulation_operator_norm_lower(
            &symbol,
            tau,
            cfg.r1,
            cfg.r2,
            &cfg.weight,
            &window,
            &grid,
            &probes,
        )
        .map_err(|e| e.to_string())?;
        let ratio = if wiener == 0.0 {
            0.0
        } else {
            lower / (al * wiener)
        };
        if ratio > 0.0 {
            ratios.push(ratio);
        }
        table.push_row(vec![
            fmt_float(tau),
            fmt_float(al),
            fmt_float(lower),
            fmt_float(wiener),
            fmt_float(ratio),
            if admissible { "1" } else { "0" }.to_string(),
            hash.clone(),
        ]);
    }

    let spread = if ratios.is_empty() {
        1.0
    } else {
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    };

    let mut summary = RunSummary::new("scaling", &hash);
    summary.push(CheckRow::bounded(
        "scaling_ratio_spread",
        spread,
        cfg.tolerance("scaling_ratio_spread"),
    ));
    summary.extra("symbol", cfg.symbol.name().to_string());
    summary.extra("n_tau", taus.len().to_string());
    write_outputs(out_dir, "scaling", &table, &summary)?;
    Ok(summary)
}

/// Partial integral `∫_eps^1 (1/2) x^{-1} e^{-πx²} dx` by Simpson's rule on a
/// log-spaced substitution (smooth integrand), the closed-form reference for
/// the counterexample divergence.
fn counterexample_reference(eps: f64) -> f64 {
    // u = ln x: integrand (1/2) e^{-π e^{2u}}
    let a = eps.ln();
    let b = 0.0f64;
    let n = 4000; // even
    let h = (b - a) / n as f64;
    let f = |u: f64| 0.5 * (-PI * (2.0 * u).exp()).exp();
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Endpoint-unboundedness experiment on the refined shifted grid.
pub fn run_counterexample(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary, String> {
    let started = Instant::now();
    let hash = cfg.hash();
    let grid =
        Grid1D::new_shifted(cfg.grid_l / 2.0, cfg.counterexample_n).map_err(|e| e.to_string())?;
    let dx = grid.step();
    let phi = CSignal::gaussian(grid);
    let symbol = Symbol::counterexample();
    let out = op_kohn_nirenberg(&symbol, &phi).map_err(|e| e.to_string())?;

    // closed-form match on [0.1, 1]
    let mut closed_err = 0.0f64;
    for (n, v) in out.samples().iter().enumerate() {
        let x = grid.point(n);
        if (0.1..=1.0).contains(&x) {
            let expect = std::f64::consts::FRAC_1_SQRT_2 * x.powf(-0.5) * (-PI * x * x / 2.0).exp();
            closed_err = closed_err.max((v.re - expect).abs() / expect);
        }
    }

    let mut eps_sorted = cfg.epsilon_list.clone();
    eps_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut table = CsvTable::new(&[
        "epsilon",
        "partial_l2_sq",
        "log_inv_eps",
        "closed_form_ref",
        "anti_kn_pair_sq",
        "flagged",
        "config_hash",
    ]);
    let mut fit_points = Vec::new();
    for &eps in &eps_sorted {
        let mut p = 0.0f64;
        for (n, v) in out.samples().iter().enumerate() {
            let x = grid.point(n);
            if x >= eps && x <= 1.0 {
                p += v.norm_sqr();
            }
        }
        p *= dx;
        let flagged = eps < 4.0 * dx;
        let log_inv = (1.0 / eps).ln();
        // the anti-Kohn-Nirenberg divergence reached through the adjoint
        // relation: |<f_eps, Op_0(a)phi>|^2 / ||f_eps||^2 with
        // f_eps = chi_[eps,1] Op_0(a)phi lower-bounds ||Op_1(a)||^2
        let pair_sq = if p > 0.0 { p } else { 0.0 };
        if !flagged {
            fit_points.push((log_inv, p));
        }
        table.push_row(vec![
            fmt_float(eps),
            fmt_float(p),
            fmt_float(log_inv),
            fmt_float(counterexample_reference(eps)),
            fmt_float(pair_sq),
            if flagged { "1" } else { "0" }.to_string(),
            hash.clone(),
        ]);
    }

    // least-squares slope of partial_l2_sq against ln(1/eps)
    let slope = if fit_points.len() >= 2 {
        let n = fit_points.len() as f64;
        let mx = fit_points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = fit_points.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = fit_points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = fit_points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        num / den
    } else {
        f64::NAN
    };

    // adjoint-relation residual of the anti-KN route at a moderate grid:
    // <Op_1(a) u, v> = <u, Op_0(a) v> for the real counterexample symbol
    let g1k = Grid1D::new_shifted(cfg.grid_l / 2.0, 1024).map_err(|e| e.to_string())?;
    let u = CSignal::from_fn(g1k, |t| {
        Complex64::new((-PI * (t - 0.5) * (t - 0.5)).exp(), 0.0)
    });
    let v = CSignal::gaussian(g1k);
    let lhs = inner_product(
        &op_anti_kohn_nirenberg(&symbol, &u).map_err(|e| e.to_string())?,
        &v,
    )
    .map_err(|e| e.to_string())?;
    let rhs = inner_product(
        &u,
        &op_kohn_nirenberg(&symbol, &v).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let pairing_res = (lhs - rhs).norm() / lhs.norm().max(rhs.norm());

    // and the endpoint kernels are exact adjoints on the default grid
    let g256 = Grid1D::new_shifted(cfg.grid_l / 2.0, 256).map_err(|e| e.to_string())?;
    let adj = adjoint_residual(&symbol, &g256).map_err(|e| e.to_string())?;

    let elapsed = started.elapsed().as_secs_f64();
    let mut summary = RunSummary::new("counterexample", &hash);
    summary.push(CheckRow::bounded(
        "counterexample_closed_form",
        closed_err,
        cfg.tolerance("counterexample_closed_form"),
    ));
    summary.push(CheckRow::bounded(
        "counterexample_slope_dev",
        (slope - 0.5).abs(),
        cfg.tolerance("counterexample_slope_dev"),
    ));
    summary.push(CheckRow::bounded(
        "counterexample_adjoint_pairing",
        pairing_res,
        cfg.tolerance("counterexample_adjoint_pairing"),
    ));
    summary.push(CheckRow::bounded(
        "counterexample_adjoint_kernels",
        adj,
        cfg.tolerance("adjoint"),
    ));
    summary.push(CheckRow::bounded(
        "counterexample_runtime_s",
        elapsed,
        120.0,
    ));
    summary.extra("fitted_slope", fmt_float(slope));
    summary.extra("grid_n", cfg.counterexample_n.to_string());
    write_outputs(out_dir, "counterexample", &table, &summary)?;
    Ok(summary)
}

/// Wiener / modulation norms of `W_τ(g, f)` against the α-weighted and
/// uniform right-hand sides over the τ grid.
pub fn run_norms(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary, String> {
    reject_shifted(cfg, "norms")?;
    let hash = cfg.hash();
    let grid = cfg.grid().map_err(|e| e.to_string())?;
    let pg = PhaseGrid::natural(&grid);
    let f = CSignal::gaussian(grid);
    let g = CSignal::gaussian(grid);
    let window = CSignal::gaussian(grid);

    let coarse = 64usize;
    if !cfg.grid_n.is_multiple_of(coarse) {
        return Err(format!(
            "grid.n = {} must be divisible by {coarse}",
            cfg.grid_n
        ));
    }
    let factor = cfg.grid_n / coarse;
    let opts = SymbolNormOptions {
        n: coarse,
        half_width: cfg.grid_l / 2.0,
    };

    let vj = cfg.weight.compose_with_j();
    let inv_vj = WeightExpr::reciprocal_of(vj);
    let one = WeightExpr::plain(Weight::constant());
    let m = Weight::constant(); // moderate weight on the signal side
    let inv_m = WeightExpr::reciprocal_of(m);

    let (p1, p2) = (cfg.r1, cfg.r2);
    let nf = modulation_norm(&f, &window, p1, p2, &m).map_err(|e| e.to_string())?;
    let ng = modulation_norm(
        &g,
        &window,
        conjugate_exponent(p1),
        conjugate_exponent(p2),
        &inv_m,
    )
    .map_err(|e| e.to_string())?;
    let nf2 = modulation_norm(&f, &window, 2.0, 2.0, &m).map_err(|e| e.to_string())?;
    let ng2 = modulation_norm(&g, &window, 2.0, 2.0, &inv_m).map_err(|e| e.to_string())?;
    let rhs_uniform = nf2 * ng2;

    let mut table = CsvTable::new(&[
        "tau",
        "w_fl1_linf",
        "w_fl2_l2",
        "m22_modspace",
        "alpha",
        "rhs_alpha",
        "rhs_uniform",
        "ratio_wfl1",
        "ratio_wfl2",
        "ratio_m22",
        "config_hash",
    ]);

    let mut taus = cfg.tau_list.clone();
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut ratio2_all = Vec::new();
    let mut ratio3_all = Vec::new();
    let mut ratio1_interior: Vec<f64> = Vec::new();
    for &tau in &taus {
        let w = tau_wigner(&g, &f, tau, &pg).map_err(|e| e.to_string())?;
        let sym = Symbol::from_field(
            format!("wigner-tau{tau}"),
            w.subsample(factor).map_err(|e| e.to_string())?,
        );
        let norms = symbol_norms(
            &sym,
            &[
                SymbolNormRequest::wiener(1.0, f64::INFINITY, inv_vj, one),
                SymbolNormRequest::wiener(2.0, 2.0, inv_vj, one),
                SymbolNormRequest::modulation(2.0, 2.0, one, inv_vj),
            ],
            &opts,
        )
        .map_err(|e| e.to_string())?;

        let interior = tau > 0.0 && tau < 1.0;
        let al = if interior {
            alpha(p1, p2, tau, 1).map_err(|e| e.to_string())?
        } else {
            f64::NAN
        };
        let rhs_alpha = al * nf * ng;
        let ratio1 = norms[0] / rhs_alpha;
        let ratio2 = norms[1] / rhs_uniform;
        let ratio3 = norms[2] / rhs_uniform;
        ratio2_all.push(ratio2);
        ratio3_all.push(ratio3);
        if interior {
            ratio1_interior.push(ratio1);
        }
        table.push_row(vec![
            fmt_float(tau),
            fmt_float(norms[0]),
            fmt_float(norms[1]),
            fmt_float(norms[2]),
            fmt_float(al),
            fmt_float(rhs_alpha),
            fmt_float(rhs_uniform),
            fmt_float(ratio1),
            fmt_float(ratio2),
            fmt_float(ratio3),
            hash.clone(),
        ]);
    }

    let spread_of = |v: &Vec<f64>| {
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    };
    let spread = spread_of(&ratio2_all);
    let spread_m22 = spread_of(&ratio3_all);
    let wfl1_cap = ratio1_interior.iter().cloned().fold(0.0, f64::max);

    let mut summary = RunSummary::new("norms", &hash);
    summary.push(CheckRow::bounded(
        "norms_m2_spread",
        spread,
        cfg.tolerance("norms_m2_spread"),
    ));
    summary.push(CheckRow::bounded(
        "norms_m22_modspace_spread",
        spread_m22,
        cfg.tolerance("norms_m2_spread"),
    ));
    summary.push(CheckRow::bounded(
        "norms_wfl1_ratio_cap",
        wfl1_cap,
        cfg.tolerance("norms_wfl1_ratio_cap"),
    ));
    write_outputs(out_dir, "norms", &table, &summary)?;
    Ok(summary)
}

/// Quantization conversion utility: sample, convert, dump.
pub fn run_convert(
    cfg: &ExperimentConfig,
    out_dir: &Path,
    tau_from: f64,
    tau_to: f64,
    symbol: Option<SymbolKind>,
) -> Result<RunSummary, String> {
    let hash = cfg.hash();
    let grid = cfg.grid().map_err(|e| e.to_string())?;
    let pg = PhaseGrid::natural(&grid);
    let kind = symbol.unwrap_or(cfg.symbol);
    let converted =
        convert_symbol(&kind.build(), tau_from, tau_to, &pg).map_err(|e| e.to_string())?;
    let field = converted.sample_on(&pg).map_err(|e| e.to_string())?;

    let mut table = CsvTable::new(&["x", "xi", "re", "im", "config_hash"]);
    for m in 0..pg.x_grid.n_samples() {
        for k in 0..pg.xi_grid.n_samples() {
            let (x, xi) = pg.point(m, k);
            let v = field.get(m, k);
            table.push_row(vec![
                fmt_float(x),
                fmt_float(xi),
                fmt_float(v.re),
                fmt_float(v.im),
                hash.clone(),
            ]);
        }
    }

    let mut summary = RunSummary::new("convert", &hash);
    summary.extra("symbol", kind.name().to_string());
    summary.extra("tau_from", fmt_float(tau_from));
    summary.extra("tau_to", fmt_float(tau_to));
    summary.extra("rows", table.n_rows().to_string());
    write_outputs(out_dir, "convert", &table, &summary)?;
    Ok(summary)
}
