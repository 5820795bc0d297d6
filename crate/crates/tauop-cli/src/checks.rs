//! The identity-verification registry behind `tauop verify`: every module
//! invariant as a named check with a measured value and a threshold from the
//! tolerance table.

use num_complex::Complex64;
use std::f64::consts::PI;

use tauop_core::field::{convolve4d, Field4D};
use tauop_core::gaussian::{
    gen_gaussian, stft_gen_gaussian_closed, stft_wigner_gaussian_magnitude,
    tau_wigner_gaussian_closed, GenGaussianParams,
};
use tauop_core::operators::{
    adjoint_residual, build_kernel, convert_symbol, l2_operator_norm,
    modulation_operator_norm_lower, op_kohn_nirenberg, weak_pairing_residual, ProbeSpec,
};
use tauop_core::rng::SplitMix64;
use tauop_core::signal::{fourier_transform, inner_product, inverse_fourier_onto, resample};
use tauop_core::spaces::{
    alpha, l1_norm_1xv, l2_norm_1xm, linf_l1_norm, mixed_norm_weighted, modulation_norm,
    wiener_norm, NormOrder,
};
use tauop_core::symbol::Symbol;
use tauop_core::tf::{
    a_tau_operator, matrix_a_tau, matrix_b_tau, stft, stft2d_point, stft_of_wigner_closed,
    tau_wigner, tf_shift, wigner_via_stft, SymplecticMat2, TFShift,
};
use tauop_core::weight::{Weight, WeightExpr};
use tauop_core::{convolve2d, CField2D, CSignal, Grid1D, PhaseGrid};

use crate::config::ExperimentConfig;
use crate::summary::CheckRow;

fn grid(cfg: &ExperimentConfig) -> Grid1D {
    cfg.grid().expect("config grid is valid")
}

fn natural(cfg: &ExperimentConfig) -> PhaseGrid {
    PhaseGrid::natural(&grid(cfg))
}

fn phi(cfg: &ExperimentConfig) -> CSignal {
    CSignal::gaussian(grid(cfg))
}

fn max_field_diff(a: &CField2D, b: &CField2D, map_b: impl Fn(Complex64) -> Complex64) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - map_b(*y)).norm())
        .fold(0.0, f64::max)
}

fn signal_rel_err(a: &CSignal, b: &CSignal) -> f64 {
    let num: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
        * a.grid().step().sqrt();
    num / b.l2_norm()
}

fn interior(taus: &[f64]) -> Vec<f64> {
    taus.iter()
        .copied()
        .filter(|t| *t > 0.0 && *t < 1.0)
        .collect()
}

// ---------------------------------------------------------------------------
// core-grid
// ---------------------------------------------------------------------------

pub fn core_grid_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let g = grid(cfg);
    let signals = [
        CSignal::gaussian(g),
        CSignal::hermite(g, 1),
        CSignal::hermite(g, 3),
    ];

    let mut parseval = 0.0f64;
    let mut reflection = 0.0f64;
    for f in &signals {
        for h in &signals {
            let lhs = inner_product(f, h).unwrap();
            let rhs = inner_product(&fourier_transform(f), &fourier_transform(h)).unwrap();
            parseval = parseval.max((lhs - rhs).norm());
        }
        let ff = fourier_transform(&fourier_transform(f));
        for (n, v) in ff.samples().iter().enumerate() {
            if let Some(m) = g.index_of(-ff.grid().point(n)) {
                reflection = reflection.max((v - f.samples()[m]).norm());
            }
        }
    }

    // trigonometric interpolation against the closed form at off-grid points
    let f = CSignal::gaussian(g);
    let sampled = CSignal::from_samples(g, f.samples().to_vec()).unwrap();
    let pts = [0.3, -1.234, 2.715];
    let r = resample(&sampled, &pts);
    let mut interp = 0.0f64;
    for (p, v) in pts.iter().zip(&r.values) {
        interp = interp.max((v - Complex64::new((-PI * p * p).exp(), 0.0)).norm());
    }

    vec![
        CheckRow::bounded("parseval", parseval, cfg.tolerance("parseval")),
        CheckRow::bounded("reflection", reflection, cfg.tolerance("reflection")),
        CheckRow::bounded(
            "resample_interpolation",
            interp,
            cfg.tolerance("resample_interpolation"),
        ),
    ]
}

// ---------------------------------------------------------------------------
// the identity suite (acceptance criterion 1)
// ---------------------------------------------------------------------------

pub fn identity_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let g = grid(cfg);
    let pg = natural(cfg);
    let f = phi(cfg);
    let h1 = CSignal::hermite(g, 1);
    let h2 = CSignal::hermite(g, 2);
    let n = g.n_samples();

    // conjugation symmetry W_{1-tau}(f,g) = conj(W_tau(g,f))
    let mut conj_err = 0.0f64;
    for &tau in &cfg.tau_list {
        let lhs = tau_wigner(&f, &h1, 1.0 - tau, &pg).unwrap();
        let rhs = tau_wigner(&h1, &f, tau, &pg).unwrap();
        conj_err = conj_err.max(max_field_diff(&lhs, &rhs, |v| v.conj()));
    }

    // Fourier covariance W_tau(Ff)(x,xi) = W_{1-tau} f(xi,-x)
    let fhat = fourier_transform(&f);
    let mut cov_fourier = 0.0f64;
    for &tau in &cfg.tau_list {
        let lhs = tau_wigner(&fhat, &fhat, tau, &pg).unwrap();
        let rhs = tau_wigner(&f, &f, 1.0 - tau, &pg).unwrap();
        for m in 0..n {
            let Some(neg_m) = pg.xi_grid.index_of(-pg.x_grid.point(m)) else {
                continue;
            };
            for k in 0..n {
                // frequency points re-index onto the time grid only when the
                // grid is self-dual (the default L = sqrt(N) configuration)
                let Some(mj) = pg.x_grid.index_of(pg.xi_grid.point(k)) else {
                    continue;
                };
                cov_fourier = cov_fourier.max((lhs.get(m, k) - rhs.get(mj, neg_m)).norm());
            }
        }
    }

    // covariance under time-frequency shifts
    let w = TFShift::new(1.0, 0.5);
    let iw = (w.x / pg.x_grid.step()).round() as isize;
    let kw = (w.omega / pg.xi_grid.step()).round() as isize;
    let mut cov_shift = 0.0f64;
    for &tau in &cfg.tau_list {
        let base = tau_wigner(&f, &h1, tau, &pg).unwrap();
        let moved = tau_wigner(&tf_shift(&f, w), &tf_shift(&h1, w), tau, &pg).unwrap();
        for m in 0..n {
            let sm = m as isize - iw;
            if sm < 0 || sm >= n as isize {
                continue;
            }
            for k in 0..n {
                let sk = k as isize - kw;
                if sk < 0 || sk >= n as isize {
                    continue;
                }
                cov_shift =
                    cov_shift.max((moved.get(m, k) - base.get(sm as usize, sk as usize)).norm());
            }
        }
    }

    // Moyal formula on Gaussian/Hermite quadruples
    let quadruples = [(&f, &h1, &f, &h1), (&f, &f, &h1, &h2), (&h2, &h1, &h2, &h1)];
    let mut moyal = 0.0f64;
    for &tau in &cfg.tau_list {
        for (f1, g1, f2, g2) in &quadruples {
            let w1 = tau_wigner(f1, g1, tau, &pg).unwrap();
            let w2 = tau_wigner(f2, g2, tau, &pg).unwrap();
            let lhs = w1.inner_product(&w2).unwrap();
            let rhs = inner_product(f1, f2).unwrap() * inner_product(g1, g2).unwrap().conj();
            let scale = f1.l2_norm() * f2.l2_norm() * g1.l2_norm() * g2.l2_norm();
            moyal = moyal.max((lhs - rhs).norm() / scale);
        }
    }

    // orthogonality relations for the STFT
    let mut ortho = 0.0f64;
    for (f1, g1, f2, g2) in [(&f, &f, &h1, &h1), (&f, &h2, &h1, &f)] {
        let v1 = stft(f1, g1, &pg).unwrap();
        let v2 = stft(f2, g2, &pg).unwrap();
        let lhs = v1.inner_product(&v2).unwrap();
        let rhs = inner_product(f1, f2).unwrap() * inner_product(g1, g2).unwrap().conj();
        let scale = f1.l2_norm() * f2.l2_norm() * g1.l2_norm() * g2.l2_norm();
        ortho = ortho.max((lhs - rhs).norm() / scale);
    }

    // fundamental identity of time-frequency analysis
    let fs = tf_shift(&f, TFShift::new(0.5, 0.25));
    let lhs = stft(&fs, &h1, &pg).unwrap();
    let rhs = stft(&fourier_transform(&fs), &fourier_transform(&h1), &pg).unwrap();
    let mut fi = 0.0f64;
    for m in 0..n {
        let x = pg.x_grid.point(m);
        let Some(neg_m) = pg.xi_grid.index_of(-x) else {
            continue;
        };
        for k in 0..n {
            let omega = pg.xi_grid.point(k);
            let Some(mj) = pg.x_grid.index_of(omega) else {
                continue;
            };
            let phase = Complex64::from_polar(1.0, -2.0 * PI * x * omega);
            fi = fi.max((lhs.get(m, k) - phase * rhs.get(mj, neg_m)).norm());
        }
    }

    // STFT of time-frequency shifts
    let (u, wg) = (1.0, 2.0);
    let base = stft(&f, &h1, &pg).unwrap();
    let moved = stft(
        &tf_shift(&f, TFShift::new(u, wg)),
        &tf_shift(&h1, TFShift::new(u, wg)),
        &pg,
    )
    .unwrap();
    let mut stft_shift = 0.0f64;
    for m in 0..n {
        for k in 0..n {
            let (x, xi) = pg.point(m, k);
            let ph = Complex64::from_polar(1.0, 2.0 * PI * (wg * x - xi * u));
            stft_shift = stft_shift.max((moved.get(m, k) - base.get(m, k) * ph).norm());
        }
    }

    vec![
        CheckRow::bounded("conjugation", conj_err, cfg.tolerance("conjugation")),
        CheckRow::bounded(
            "fourier_covariance",
            cov_fourier,
            cfg.tolerance("fourier_covariance"),
        ),
        CheckRow::bounded("covariance", cov_shift, cfg.tolerance("covariance")),
        CheckRow::bounded("moyal", moyal, cfg.tolerance("moyal")),
        CheckRow::bounded("orthogonality", ortho, cfg.tolerance("orthogonality")),
        CheckRow::bounded(
            "fundamental_identity",
            fi,
            cfg.tolerance("fundamental_identity"),
        ),
        CheckRow::bounded("stft_shift", stft_shift, cfg.tolerance("stft_shift")),
    ]
}

// ---------------------------------------------------------------------------
// structural tf checks: change of window, commutation, factorizations,
// symplectic algebra (criteria 2 and 4)
// ---------------------------------------------------------------------------

pub fn tf_structure_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let g = grid(cfg);
    let pg = natural(cfg);
    let f = phi(cfg);
    let h1 = CSignal::hermite(g, 1);
    let n = g.n_samples();

    // change-of-window inequality, worst pointwise violation
    let probe = tf_shift(&f, TFShift::new(0.75, -0.5));
    let lhs = stft(&probe, &h1, &pg).unwrap();
    let vf = stft(&probe, &f, &pg)
        .unwrap()
        .map(|v| Complex64::new(v.norm(), 0.0));
    let vg = stft(&f, &h1, &pg)
        .unwrap()
        .map(|v| Complex64::new(v.norm(), 0.0));
    let conv = convolve2d(&vf, &vg).unwrap();
    let c = 1.0 / inner_product(&f, &f).unwrap().norm();
    let mut chw = f64::NEG_INFINITY;
    for m in 0..n {
        for k in 0..n {
            chw = chw.max(lhs.get(m, k).norm() - c * conv.get(m + n / 2, k + n / 2).re);
        }
    }

    // commutation of A_tau with time-frequency shifts
    let mut commutation = 0.0f64;
    for tau in interior(&cfg.tau_list) {
        let rate = (1.0 - tau) / tau;
        let z = TFShift::new(0.75, 0.5);
        let a_f = a_tau_operator(&f, tau).unwrap();
        let lhs = tf_shift(&a_f, z);
        let rhs = a_tau_operator(
            &tf_shift(&f, TFShift::new(-rate * z.x, -z.omega / rate)),
            tau,
        )
        .unwrap();
        let err = lhs
            .samples()
            .iter()
            .zip(rhs.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        commutation = commutation.max(err);
    }

    // tau-Wigner as a rescaled STFT, probed inside the valid scaled box
    let mut rephrase = 0.0f64;
    for tau in [0.3, 0.5, 0.7] {
        let field = tau_wigner(&f, &f, tau, &pg).unwrap();
        let mut rng = SplitMix64::new(cfg.seed ^ 0x5157);
        let hw = pg.x_grid.half_width();
        for _ in 0..10 {
            let x_max = 0.9 * (1.0 - tau) * hw;
            let xi_max = 0.9 * tau * hw;
            let x = pg.x_grid.step() * (rng.next_symmetric() * x_max / pg.x_grid.step()).round();
            let xi =
                pg.xi_grid.step() * (rng.next_symmetric() * xi_max / pg.xi_grid.step()).round();
            let m = pg.x_grid.index_of(x).unwrap();
            let k = pg.xi_grid.index_of(xi).unwrap();
            let v = wigner_via_stft(&f, &f, tau, x, xi).unwrap();
            rephrase = rephrase.max((v - field.get(m, k)).norm());
        }
    }

    // product factorization of V_{Phi_tau} W_tau(g,f) (criterion 2)
    let mut factorization = 0.0f64;
    let gsig = tf_shift(&f, TFShift::new(0.5, -0.25));
    for tau in [0.0, 0.25, 0.4, 0.5, 0.75, 1.0] {
        let wig = tau_wigner(&gsig, &f, tau, &pg).unwrap();
        let window = tau_wigner(&f, &f, tau, &pg).unwrap();
        let mut rng = SplitMix64::new(cfg.seed ^ 0xFAC7);
        for _ in 0..10 {
            let z = [
                pg.x_grid.step() * ((rng.next_u64() % 33) as f64 - 16.0),
                pg.xi_grid.step() * ((rng.next_u64() % 33) as f64 - 16.0),
            ];
            let zeta = [
                pg.xi_grid.step() * ((rng.next_u64() % 33) as f64 - 16.0),
                pg.x_grid.step() * ((rng.next_u64() % 33) as f64 - 16.0),
            ];
            let direct = stft2d_point(&wig, &window, z, zeta).unwrap();
            let closed = stft_of_wigner_closed(&f, &gsig, &f, &f, tau, z, zeta).unwrap();
            factorization = factorization.max((direct - closed).norm() / closed.norm());
        }
    }

    // symplectic matrix algebra (criterion 4)
    let j = SymplecticMat2::j();
    let mut sympl = 0.0f64;
    let mut taus = interior(&cfg.tau_list);
    if taus.is_empty() {
        taus = (1..=9).map(|k| k as f64 / 10.0).collect();
    }
    for &tau in &taus {
        let a = matrix_a_tau(tau).unwrap();
        let a1 = matrix_a_tau(1.0 - tau).unwrap();
        let b = matrix_b_tau(tau).unwrap();
        sympl = sympl.max((a.det() - 1.0).abs());
        sympl = sympl.max(a.transpose().mul(&j).mul(&a).max_abs_diff(&j));
        sympl = sympl.max(a.transpose().max_abs_diff(&a1.neg()));
        sympl = sympl.max(a.mul(&a.neg()).max_abs_diff(&SymplecticMat2::identity()));
        let expect = SymplecticMat2::identity().add(&b.neg());
        sympl = sympl.max(a1.mul(&a).max_abs_diff(&expect));
        let s = (tau * (1.0 - tau)).sqrt();
        sympl = sympl.max(a.add(&a1).scale(s).max_abs_diff(&j));
        sympl = sympl.max(b.mul(&a).scale(s).max_abs_diff(&j));
    }
    sympl = sympl.max(matrix_a_tau(0.5).unwrap().max_abs_diff(&j));

    // the symplectic form of the factorization arguments is an exact
    // arithmetic identity
    let mut sympl_fact = 0.0f64;
    for &tau in &taus {
        let a = matrix_a_tau(tau).unwrap();
        let s = (tau * (1.0 - tau)).sqrt();
        let z = [0.3, -0.8];
        let zeta = [1.1, 0.4];
        let via_t = a.transpose().scale(s).apply(zeta);
        sympl_fact = sympl_fact.max((z[0] + via_t[0] - (z[0] - tau * zeta[1])).abs());
        sympl_fact = sympl_fact.max((z[1] + via_t[1] - (z[1] + (1.0 - tau) * zeta[0])).abs());
        let via = a.scale(s).apply(zeta);
        sympl_fact = sympl_fact.max((z[0] + via[0] - (z[0] + (1.0 - tau) * zeta[1])).abs());
        sympl_fact = sympl_fact.max((z[1] + via[1] - (z[1] - tau * zeta[0])).abs());
    }

    vec![
        CheckRow::bounded("change_of_window", chw, cfg.tolerance("change_of_window")),
        CheckRow::bounded("commutation", commutation, cfg.tolerance("commutation")),
        CheckRow::bounded(
            "wigner_stft_rephrase",
            rephrase,
            cfg.tolerance("wigner_stft_rephrase"),
        ),
        CheckRow::bounded(
            "stft_factorization",
            factorization,
            cfg.tolerance("stft_factorization"),
        ),
        CheckRow::bounded(
            "symplectic_matrix",
            sympl,
            cfg.tolerance("symplectic_matrix"),
        ),
        CheckRow::bounded(
            "symplectic_factorization",
            sympl_fact,
            cfg.tolerance("symplectic_factorization"),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Gaussian closed forms (criterion 3)
// ---------------------------------------------------------------------------

fn stft2d_quadrature(
    pg: &PhaseGrid,
    f: impl Fn(f64, f64) -> Complex64,
    z: [f64; 2],
    zeta: [f64; 2],
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..pg.x_grid.n_samples() {
        let x = pg.x_grid.point(m);
        for k in 0..pg.xi_grid.n_samples() {
            let y = pg.xi_grid.point(k);
            let w = (-PI * ((x - z[0]).powi(2) + (y - z[1]).powi(2))).exp();
            let ph = Complex64::from_polar(1.0, -2.0 * PI * (x * zeta[0] + y * zeta[1]));
            acc += f(x, y) * w * ph;
        }
    }
    acc * pg.cell()
}

pub fn gaussian_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let g = grid(cfg);
    let square = PhaseGrid::new(g, g);
    let pg = natural(cfg);
    let f = phi(cfg);

    // closed tau-Wigner of the Gaussian vs. the numeric field, 5 tau values
    let mut closed_err = 0.0f64;
    for tau in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let w = tau_wigner(&f, &f, tau, &pg).unwrap();
        for m in 0..g.n_samples() {
            for k in 0..g.n_samples() {
                let (x, xi) = pg.point(m, k);
                let c = tau_wigner_gaussian_closed(tau, x, xi).unwrap();
                closed_err = closed_err.max((w.get(m, k) - c).norm());
            }
        }
    }

    // STFT of the generalized Gaussian vs. 2-D quadrature at 10 points
    let mut rng = SplitMix64::new(cfg.seed ^ 0x6A55);
    let mut gen_err = 0.0f64;
    for _ in 0..10 {
        let p = GenGaussianParams::new(
            0.5 + 2.0 * rng.next_f64(),
            0.5 + 2.0 * rng.next_f64(),
            1.5 * rng.next_symmetric(),
        )
        .unwrap();
        let z = [1.5 * rng.next_symmetric(), 1.5 * rng.next_symmetric()];
        let zeta = [1.5 * rng.next_symmetric(), 1.5 * rng.next_symmetric()];
        let closed = stft_gen_gaussian_closed(&p, z, zeta);
        let quad = stft2d_quadrature(&square, |x, y| gen_gaussian(&p, x, y), z, zeta);
        gen_err = gen_err.max((closed - quad).norm() / quad.norm());
    }

    // amplitude-constant oracle: the numeric |V_Phi Phi_{1/2}|(0) settles
    // (2/9)^{1/2} = (9/2)^{-1/2} = 0.47140452...
    let resolved = (9.0f64 / 2.0).powf(-0.5);
    let num = stft2d_quadrature(
        &square,
        |x, y| tau_wigner_gaussian_closed(0.5, x, y).unwrap(),
        [0.0; 2],
        [0.0; 2],
    )
    .norm();
    let mut amp_err: f64 = (num - resolved).abs();
    // and the closed magnitude attains it as its max over tau
    for k in 0..=20 {
        let tau = k as f64 / 20.0;
        let v = stft_wigner_gaussian_magnitude(tau, [0.0; 2], [0.0; 2]).unwrap();
        amp_err = amp_err.max((v - resolved).max(0.0));
    }

    // weighted L1 integrals of |V_Phi Phi_tau| bounded uniformly in tau
    let qn = 32usize;
    let qh = 4.0;
    let qd = 2.0 * qh / qn as f64;
    let pts: Vec<f64> = (0..qn).map(|i| (i as f64 - qn as f64 / 2.0) * qd).collect();
    let mut caps = Vec::new();
    for (s, key) in [
        (0.0, "uniform_window_l1_cap_s0"),
        (1.0, "uniform_window_l1_cap_s1"),
        (2.0, "uniform_window_l1_cap_s2"),
    ] {
        let mut hi = 0.0f64;
        for k in 0..=20 {
            let tau = k as f64 / 20.0;
            let mut total = 0.0;
            for &z1 in &pts {
                for &z2 in &pts {
                    for &t1 in &pts {
                        for &t2 in &pts {
                            let w = (1.0 + (t1 * t1 + t2 * t2).sqrt()).powf(s);
                            total += stft_wigner_gaussian_magnitude(tau, [z1, z2], [t1, t2])
                                .unwrap()
                                * w;
                        }
                    }
                }
            }
            hi = hi.max(total * qd.powi(4));
        }
        caps.push(CheckRow::bounded(key, hi, cfg.tolerance(key)));
    }

    // Moyal specialization of the closed form: ||W_tau phi||_2^2 = 1/2
    let mut l2dev = 0.0f64;
    for tau in [0.0, 0.2, 0.5, 0.9, 1.0] {
        let field = CField2D::from_fn(square, |x, y| {
            tau_wigner_gaussian_closed(tau, x, y).unwrap()
        });
        l2dev = l2dev.max((field.l2_norm().powi(2) - 0.5).abs() / 0.5);
    }

    let mut rows = vec![
        CheckRow::bounded(
            "gaussian_wigner_closed",
            closed_err,
            cfg.tolerance("gaussian_wigner_closed"),
        ),
        CheckRow::bounded(
            "stft_gen_gaussian",
            gen_err,
            cfg.tolerance("stft_gen_gaussian"),
        ),
        CheckRow::bounded(
            "uniform_window_amplitude",
            amp_err,
            cfg.tolerance("uniform_window_amplitude"),
        ),
        CheckRow::bounded("wigner_l2_moyal", l2dev, cfg.tolerance("wigner_l2_moyal")),
    ];
    rows.extend(caps);
    rows
}

// ---------------------------------------------------------------------------
// function spaces (criteria 5 and 9)
// ---------------------------------------------------------------------------

fn all_weight_kinds() -> Vec<Weight> {
    vec![
        Weight::constant(),
        Weight::radial_poly(1.0).unwrap(),
        Weight::radial_poly(2.0).unwrap(),
        Weight::separable_poly(1.0, 2.0).unwrap(),
        Weight::exponential(0.7).unwrap(),
    ]
}

fn random_field(rng: &mut SplitMix64, pg: PhaseGrid) -> CField2D {
    let n = pg.x_grid.n_samples() * pg.xi_grid.n_samples();
    let values = (0..n).map(|_| rng.next_complex()).collect();
    CField2D::from_values(pg, values).expect("shape matches")
}

fn random_field4(rng: &mut SplitMix64, g: Grid1D) -> Field4D {
    let vals: Vec<_> = (0..g.n_samples().pow(4))
        .map(|_| rng.next_complex())
        .collect();
    Field4D::from_values([g, g], [g, g], vals).expect("shape matches")
}

pub fn space_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    // alpha closed-form values (criterion 5)
    let mut alpha_err: f64 = (alpha(2.0, 2.0, 0.5, 1).unwrap() - 4.0).abs();
    for k in 1..=9 {
        let tau = k as f64 / 10.0;
        alpha_err = alpha_err
            .max((alpha(1.0, f64::INFINITY, tau, 1).unwrap() - (1.0 - tau).powi(-2)).abs());
        alpha_err =
            alpha_err.max((alpha(f64::INFINITY, 1.0, tau, 1).unwrap() - tau.powi(-2)).abs());
    }
    // alpha dominates its half-point minimum
    let base = alpha(2.0, 2.0, 0.5, 1).unwrap();
    for k in 1..=19 {
        let tau = k as f64 / 20.0;
        let v = alpha(2.0, 2.0, tau, 1).unwrap();
        alpha_err = alpha_err.max((base - v).max(0.0));
    }

    // endpoint divergence: monotone growth along tau -> 0+, 1- and a large
    // value at the last point of the approach grid
    let approach: Vec<f64> = (2..=6).map(|k| 10f64.powi(-k)).collect();
    let mut prev = 0.0f64;
    for &eps in &approach {
        let v = alpha(2.0, 2.0, eps, 1).unwrap();
        alpha_err = alpha_err.max((prev - v).max(0.0)); // must increase
        prev = v;
    }
    let mut growth = f64::INFINITY;
    let eps = 1e-6;
    growth = growth.min(alpha(2.0, 2.0, eps, 1).unwrap());
    growth = growth.min(alpha(2.0, 2.0, 1.0 - eps, 1).unwrap());
    growth = growth.min(alpha(1.0, f64::INFINITY, 1.0 - eps, 1).unwrap());
    growth = growth.min(alpha(f64::INFINITY, 1.0, eps, 1).unwrap());
    // while the finite-limit endpoint of (1, inf) stays near 1
    let finite_dev = (alpha(1.0, f64::INFINITY, 1e-7, 1).unwrap() - 1.0).abs();

    // submultiplicativity and v-moderation of 1/v on random pairs
    let mut rng = SplitMix64::new(cfg.seed ^ 0x3E17);
    let mut submult = 0.0f64;
    let mut moderate = 0.0f64;
    for _ in 0..1000 {
        let z = [20.0 * rng.next_symmetric(), 20.0 * rng.next_symmetric()];
        let w = [20.0 * rng.next_symmetric(), 20.0 * rng.next_symmetric()];
        for v in all_weight_kinds() {
            let lhs = v.eval2([z[0] + w[0], z[1] + w[1]]);
            let rhs = v.eval2(z) * v.eval2(w);
            submult = submult.max((lhs - rhs).max(0.0) / rhs);
            let ml = 1.0 / lhs;
            let mr = v.eval2(w) / v.eval2(z);
            moderate = moderate.max((ml - mr).max(0.0) / mr);
        }
    }

    // Young convolution inequality on weighted mixed-norm spaces
    let g16 = Grid1D::new(2.0, 16).unwrap();
    let pg16 = PhaseGrid::new(g16, g16);
    let tuples = [
        (1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
        (1.0, 1.0, 2.0, 2.0, 2.0, 2.0),
        (2.0, 2.0, 2.0, 2.0, f64::INFINITY, f64::INFINITY),
        (1.0, 2.0, 2.0, 1.0, 2.0, 2.0),
        (
            1.0,
            1.0,
            f64::INFINITY,
            f64::INFINITY,
            f64::INFINITY,
            f64::INFINITY,
        ),
    ];
    let weight_pairs = [
        (Weight::constant(), WeightExpr::plain(Weight::constant())),
        (
            Weight::radial_poly(1.0).unwrap(),
            WeightExpr::plain(Weight::radial_poly(1.0).unwrap()),
        ),
        (
            Weight::radial_poly(1.0).unwrap(),
            WeightExpr::reciprocal_of(Weight::radial_poly(1.0).unwrap()),
        ),
    ];
    let mut young = f64::NEG_INFINITY;
    let mut rng = SplitMix64::new(cfg.seed ^ 0x10FF);
    for i in 0..60 {
        let fa = random_field(&mut rng, pg16);
        let fb = random_field(&mut rng, pg16);
        let (p1, q1, p2, q2, r, s) = tuples[i % tuples.len()];
        let (v, m) = weight_pairs[i % weight_pairs.len()];
        let conv = convolve2d(&fa, &fb).unwrap();
        let lhs = mixed_norm_weighted(&conv, r, s, NormOrder::InnerX, &m).unwrap();
        let nf = mixed_norm_weighted(&fa, p1, q1, NormOrder::InnerX, &v).unwrap();
        let ng = mixed_norm_weighted(&fb, p2, q2, NormOrder::InnerX, &m).unwrap();
        young = young.max(lhs - nf * ng);
    }

    // L^inf_z(L^1_zeta,m) and L^2_{1 (x) m} convolution inequalities on small
    // 4-D fields
    let g8 = Grid1D::new(2.0, 16).unwrap();
    let mut young_linf = f64::NEG_INFINITY;
    let mut young_l2 = f64::NEG_INFINITY;
    let vwt = Weight::radial_poly(1.0).unwrap();
    let mwt = Weight::radial_poly(1.0).unwrap();
    let mut rng = SplitMix64::new(cfg.seed ^ 0x4D2);
    for i in 0..40 {
        let fa = random_field4(&mut rng, g8);
        let fb = random_field4(&mut rng, g8);
        let conv = convolve4d(&fa, &fb).unwrap();
        let nf = l1_norm_1xv(&fa, &vwt);
        if i % 2 == 0 {
            let lhs = linf_l1_norm(&conv, &mwt);
            let ng = linf_l1_norm(&fb, &mwt);
            young_linf = young_linf.max(lhs - nf * ng);
        } else {
            let lhs = l2_norm_1xm(&conv, &mwt);
            let ng = l2_norm_1xm(&fb, &mwt);
            young_l2 = young_l2.max(lhs - nf * ng);
        }
    }

    // W-M identity on two exponent pairs
    let f = phi(cfg);
    let w = phi(cfg);
    let mut wm = 0.0f64;
    for (p, q) in [(2.0, 2.0), (1.0, f64::INFINITY)] {
        let lhs = modulation_norm(&f, &w, p, q, &Weight::constant()).unwrap();
        let rhs = wiener_norm(
            &fourier_transform(&f),
            &fourier_transform(&w),
            p,
            q,
            &Weight::constant(),
            &Weight::constant(),
        )
        .unwrap();
        wm = wm.max((lhs - rhs).abs() / rhs);
    }

    // modulation-space inclusion probe: M^{1,1} >= M^{2,2} >= M^{inf,inf}
    let m11 = modulation_norm(&f, &w, 1.0, 1.0, &Weight::constant()).unwrap();
    let m22 = modulation_norm(&f, &w, 2.0, 2.0, &Weight::constant()).unwrap();
    let minf = modulation_norm(&f, &w, f64::INFINITY, f64::INFINITY, &Weight::constant()).unwrap();
    let monotonicity = (m22 - m11).max(minf - m22).max(0.0);

    vec![
        CheckRow::bounded("alpha_exact", alpha_err, cfg.tolerance("alpha_exact")),
        CheckRow::at_least("alpha_divergence", growth, 1e5),
        CheckRow::bounded("alpha_finite_endpoint", finite_dev, 1e-5),
        CheckRow::bounded(
            "weight_submultiplicative",
            submult.max(moderate),
            cfg.tolerance("weight_submultiplicative"),
        ),
        CheckRow::bounded("young_mixed", young, cfg.tolerance("young_mixed")),
        CheckRow::bounded("young_linf_l1", young_linf, cfg.tolerance("young_linf_l1")),
        CheckRow::bounded("young_l2", young_l2, cfg.tolerance("young_l2")),
        CheckRow::bounded("wm_identity", wm, cfg.tolerance("wm_identity")),
        CheckRow::bounded(
            "modulation_monotonicity",
            monotonicity,
            cfg.tolerance("modulation_monotonicity"),
        ),
    ]
}

// ---------------------------------------------------------------------------
// operators (criterion 6)
// ---------------------------------------------------------------------------

pub fn operator_checks(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let g = grid(cfg);
    let pg = natural(cfg);
    let f = phi(cfg);
    let taus5 = [0.0, 0.25, 0.5, 0.75, 1.0];

    let mut identity = 0.0f64;
    for tau in taus5 {
        let out = build_kernel(&Symbol::identity(), tau, &g)
            .unwrap()
            .apply(&f)
            .unwrap();
        identity = identity.max(signal_rel_err(&out, &f));
    }

    let mult_expect = f.map(|x, v| v * (-PI * x * x).exp());
    let mut mult = 0.0f64;
    for tau in taus5 {
        let out = build_kernel(&Symbol::multiplication_gaussian(), tau, &g)
            .unwrap()
            .apply(&f)
            .unwrap();
        mult = mult.max(signal_rel_err(&out, &mult_expect));
    }

    let fhat = fourier_transform(&f);
    let fm_expect = inverse_fourier_onto(&fhat.map(|xi, v| v * (-PI * xi * xi).exp()), &g);
    let mut fmult = 0.0f64;
    for tau in taus5 {
        let out = build_kernel(&Symbol::fourier_multiplier_gaussian(), tau, &g)
            .unwrap()
            .apply(&f)
            .unwrap();
        fmult = fmult.max(signal_rel_err(&out, &fm_expect));
    }

    let gsig = tf_shift(&f, TFShift::new(0.5, -0.75));
    let mut pairing = 0.0f64;
    for tau in [0.0, 0.4, 0.5, 1.0] {
        pairing = pairing.max(weak_pairing_residual(&Symbol::gaussian(), tau, &f, &gsig).unwrap());
    }

    // rank-one law: Op_tau(W_tau(u, v)) f = <f, v> u
    let u = CSignal::hermite(g, 1);
    let probe = tf_shift(&f, TFShift::new(0.5, 0.25));
    let mut rank_one = 0.0f64;
    for tau in taus5 {
        let w = tau_wigner(&u, &f, tau, &pg).unwrap();
        let out = build_kernel(&Symbol::from_field("rank-one", w), tau, &g)
            .unwrap()
            .apply(&probe)
            .unwrap();
        let expect = u.scale(inner_product(&probe, &f).unwrap());
        rank_one = rank_one.max(signal_rel_err(&out, &expect));
    }

    // quantization conversion: semigroup and operator equivalence
    let a = Symbol::gaussian();
    let ab = convert_symbol(&convert_symbol(&a, 0.2, 0.6, &pg).unwrap(), 0.6, 0.9, &pg).unwrap();
    let direct = convert_symbol(&a, 0.2, 0.9, &pg).unwrap();
    let semigroup = ab
        .sample_on(&pg)
        .unwrap()
        .values()
        .iter()
        .zip(direct.sample_on(&pg).unwrap().values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);

    let g128 = Grid1D::new(8.0, 128).unwrap();
    let pg128 = PhaseGrid::natural(&g128);
    let conv = convert_symbol(&a, 0.5, 0.0, &pg128).unwrap();
    let k_conv = build_kernel(&conv, 0.0, &g128).unwrap();
    let k_weyl = build_kernel(&a, 0.5, &g128).unwrap();
    let conv_op = k_conv.frobenius_distance(&k_weyl).unwrap() / k_weyl.frobenius_norm();

    // chirp Fourier transform closed form at interior frequencies
    let t = 0.5;
    let square = PhaseGrid::new(g, g);
    let h = CField2D::from_fn(square, |x, xi| {
        Complex64::from_polar(1.0, 2.0 * PI * t * x * xi)
    });
    let dual_pg = PhaseGrid::new(
        tauop_core::make_dual_grid(&square.x_grid),
        tauop_core::make_dual_grid(&square.xi_grid),
    );
    let hhat = tauop_core::field::centered_transform_2d(&h, &dual_pg, -1.0);
    let mut chirp = 0.0f64;
    for (z1, z2) in [(0.5, 0.5), (1.0, 1.0), (1.5, -1.0)] {
        let m = dual_pg.x_grid.index_of(z1).unwrap();
        let k = dual_pg.xi_grid.index_of(z2).unwrap();
        let expect = Complex64::from_polar(1.0 / t, -2.0 * PI * z1 * z2 / t);
        chirp = chirp.max((hhat.get(m, k) - expect).norm() / expect.norm());
    }

    // adjoint identity for real symbols
    let adj = adjoint_residual(&Symbol::gaussian(), &g)
        .unwrap()
        .max(adjoint_residual(&Symbol::identity(), &g).unwrap());
    let adj_ce = adjoint_residual(&Symbol::counterexample(), &g).unwrap();

    // kernel cross-path consistency (evaluator vs sampled)
    let sampled = Symbol::from_field("gauss-sampled", a.sample_on(&pg).unwrap());
    let mut cross = 0.0f64;
    for k in 1..=9 {
        let tau = k as f64 / 10.0;
        let ka = build_kernel(&a, tau, &g).unwrap();
        let kb = build_kernel(&sampled, tau, &g).unwrap();
        cross = cross.max(ka.frobenius_distance(&kb).unwrap() / ka.frobenius_norm());
    }

    // Kohn-Nirenberg counterexample closed form on [0.1, 1]
    let g_sh = Grid1D::new_shifted(8.0, 4096).unwrap();
    let out = op_kohn_nirenberg(&Symbol::counterexample(), &CSignal::gaussian(g_sh)).unwrap();
    let mut kn_ce = 0.0f64;
    for (n, v) in out.samples().iter().enumerate() {
        let x = g_sh.point(n);
        if (0.1..=1.0).contains(&x) {
            let expect = std::f64::consts::FRAC_1_SQRT_2 * x.powf(-0.5) * (-PI * x * x / 2.0).exp();
            kn_ce = kn_ce.max((v.re - expect).abs() / expect);
        }
    }

    // power-iteration spectral norms
    let norm_id = l2_operator_norm(&build_kernel(&Symbol::identity(), 0.3, &g).unwrap());
    let l2_id = (norm_id.value - 1.0).abs();
    let unit = f.scale(Complex64::new(1.0 / f.l2_norm(), 0.0));
    let mut l2_rank = 0.0f64;
    for tau in [0.25, 0.5, 0.8] {
        let w = tau_wigner(&unit, &unit, tau, &pg).unwrap();
        let k = build_kernel(&Symbol::from_field("proj", w), tau, &g).unwrap();
        l2_rank = l2_rank.max((l2_operator_norm(&k).value - 1.0).abs());
    }

    // modulation-norm probe lower bound sanity: identity -> 1
    let mod_id = (modulation_operator_norm_lower(
        &Symbol::identity(),
        0.5,
        2.0,
        2.0,
        &Weight::constant(),
        &f,
        &g,
        &ProbeSpec {
            lattice_extent: 1,
            n_random: 2,
            seed: cfg.seed,
        },
    )
    .unwrap()
        - 1.0)
        .abs();

    vec![
        CheckRow::bounded(
            "operator_identity",
            identity,
            cfg.tolerance("operator_identity"),
        ),
        CheckRow::bounded(
            "operator_multiplication",
            mult,
            cfg.tolerance("operator_multiplication"),
        ),
        CheckRow::bounded(
            "operator_fourier_multiplier",
            fmult,
            cfg.tolerance("operator_fourier_multiplier"),
        ),
        CheckRow::bounded("weak_pairing", pairing, cfg.tolerance("weak_pairing")),
        CheckRow::bounded("rank_one", rank_one, cfg.tolerance("rank_one")),
        CheckRow::bounded(
            "conversion_semigroup",
            semigroup,
            cfg.tolerance("conversion_semigroup"),
        ),
        CheckRow::bounded(
            "conversion_operator",
            conv_op,
            cfg.tolerance("conversion_operator"),
        ),
        CheckRow::bounded("chirp_fourier", chirp, cfg.tolerance("chirp_fourier")),
        CheckRow::bounded("adjoint", adj, cfg.tolerance("adjoint")),
        CheckRow::bounded(
            "adjoint_counterexample",
            adj_ce,
            cfg.tolerance("weak_pairing"),
        ),
        CheckRow::bounded(
            "kernel_cross_path",
            cross,
            cfg.tolerance("kernel_cross_path"),
        ),
        CheckRow::bounded(
            "kn_counterexample",
            kn_ce,
            cfg.tolerance("kn_counterexample"),
        ),
        CheckRow::bounded("l2_norm_identity", l2_id, cfg.tolerance("l2_norm_identity")),
        CheckRow::bounded(
            "l2_norm_rank_one",
            l2_rank,
            cfg.tolerance("l2_norm_rank_one"),
        ),
        CheckRow::bounded(
            "mod_norm_identity",
            mod_id,
            cfg.tolerance("mod_norm_identity"),
        ),
    ]
}

/// The full registry, in a stable order.
pub fn run_all(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    if cfg.corrupt_fft != 0.0 {
        tauop_core::fft::fault::set_twiddle_error(cfg.corrupt_fft);
    }
    let mut rows = Vec::new();
    rows.extend(core_grid_checks(cfg));
    rows.extend(identity_checks(cfg));
    rows.extend(tf_structure_checks(cfg));
    rows.extend(gaussian_checks(cfg));
    rows.extend(space_checks(cfg));
    rows.extend(operator_checks(cfg));
    if cfg.corrupt_fft != 0.0 {
        tauop_core::fft::fault::clear();
    }
    rows
}
