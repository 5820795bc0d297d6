//! Cross-module identity checks: symmetries and energy identities of the
//! τ-Wigner distribution and the STFT, verified numerically on the default
//! grid against independently computed reference fields.

use num_complex::Complex64;
use std::f64::consts::PI;

use tauop_core::gaussian::tau_wigner_gaussian_closed;
use tauop_core::signal::fourier_transform;
use tauop_core::tf::{stft, tau_wigner, tf_shift, TFShift};
use tauop_core::{convolve2d, inner_product, CSignal, Grid1D, PhaseGrid};

fn grid() -> Grid1D {
    Grid1D::default_grid()
}

fn natural() -> PhaseGrid {
    PhaseGrid::natural(&grid())
}

fn phi() -> CSignal {
    CSignal::gaussian(grid())
}

const TAUS: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

#[test]
fn conjugation_symmetry() {
    // W_{1-tau}(f, g) = conj(W_tau(g, f)) pointwise
    let f = phi();
    let g = CSignal::hermite(grid(), 1);
    let pg = natural();
    for tau in TAUS {
        let lhs = tau_wigner(&f, &g, 1.0 - tau, &pg).unwrap();
        let rhs = tau_wigner(&g, &f, tau, &pg).unwrap();
        let err = lhs
            .values()
            .iter()
            .zip(rhs.values())
            .map(|(a, b)| (a - b.conj()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "tau={tau}: max err {err:.2e}");
    }
}

#[test]
fn fourier_covariance() {
    // W_tau(Ff)(x, xi) = W_{1-tau} f(xi, -x); the default grid is self-dual
    let f = phi();
    let fhat = fourier_transform(&f);
    let pg = natural();
    for tau in TAUS {
        let lhs = tau_wigner(&fhat, &fhat, tau, &pg).unwrap();
        let rhs = tau_wigner(&f, &f, 1.0 - tau, &pg).unwrap();
        let mut err = 0.0f64;
        for m in 0..256 {
            let x = pg.x_grid.point(m);
            let Some(neg_m) = pg.xi_grid.index_of(-x) else {
                continue;
            };
            for k in 0..256 {
                let xi = pg.xi_grid.point(k);
                let mj = pg.x_grid.index_of(xi).expect("self-dual grid");
                err = err.max((lhs.get(m, k) - rhs.get(mj, neg_m)).norm());
            }
        }
        assert!(err < 1e-8, "tau={tau}: max err {err:.2e}");
    }
}

#[test]
fn covariance_under_tf_shifts() {
    // W_tau(pi(w) f, pi(w) g)(z) = W_tau(f, g)(z - w) for grid-aligned w
    let f = phi();
    let g = CSignal::hermite(grid(), 2);
    let pg = natural();
    let w = TFShift::new(1.0, 0.5);
    let iw = pg.x_grid.index_of(0.0).unwrap() as isize - pg.x_grid.index_of(-w.x).unwrap() as isize;
    let kw = pg.xi_grid.index_of(0.0).unwrap() as isize
        - pg.xi_grid.index_of(-w.omega).unwrap() as isize;
    for tau in TAUS {
        let base = tau_wigner(&f, &g, tau, &pg).unwrap();
        let moved = tau_wigner(&tf_shift(&f, w), &tf_shift(&g, w), tau, &pg).unwrap();
        let mut err = 0.0f64;
        for m in 0..256 {
            let sm = m as isize - iw;
            if !(0..256).contains(&sm) {
                continue;
            }
            for k in 0..256 {
                let sk = k as isize - kw;
                if !(0..256).contains(&sk) {
                    continue;
                }
                err = err.max((moved.get(m, k) - base.get(sm as usize, sk as usize)).norm());
            }
        }
        assert!(err < 1e-8, "tau={tau}: max err {err:.2e}");
    }
}

#[test]
fn moyal_formula_quadruples() {
    // <W_tau(f1,g1), W_tau(f2,g2)> = <f1,f2> conj(<g1,g2>)
    let g0 = grid();
    let pg = natural();
    let quadruples = [
        (
            phi(),
            CSignal::hermite(g0, 1),
            phi(),
            CSignal::hermite(g0, 1),
        ),
        (
            phi(),
            phi(),
            CSignal::hermite(g0, 1),
            CSignal::hermite(g0, 2),
        ),
        (
            CSignal::hermite(g0, 2),
            CSignal::hermite(g0, 3),
            CSignal::hermite(g0, 2),
            CSignal::hermite(g0, 3),
        ),
        (
            tf_shift(&phi(), TFShift::new(0.5, -1.0)),
            phi(),
            phi(),
            CSignal::hermite(g0, 1),
        ),
    ];
    for tau in TAUS {
        for (f1, g1, f2, g2) in &quadruples {
            let w1 = tau_wigner(f1, g1, tau, &pg).unwrap();
            let w2 = tau_wigner(f2, g2, tau, &pg).unwrap();
            let lhs = w1.inner_product(&w2).unwrap();
            let rhs = inner_product(f1, f2).unwrap() * inner_product(g1, g2).unwrap().conj();
            let scale = (f1.l2_norm() * f2.l2_norm() * g1.l2_norm() * g2.l2_norm()).max(1e-300);
            assert!(
                (lhs - rhs).norm() / scale < 1e-6,
                "tau={tau}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn orthogonality_relations() {
    let g0 = grid();
    let pg = natural();
    let pairs = [
        (
            phi(),
            phi(),
            CSignal::hermite(g0, 1),
            CSignal::hermite(g0, 1),
        ),
        (
            phi(),
            CSignal::hermite(g0, 2),
            CSignal::hermite(g0, 1),
            phi(),
        ),
    ];
    for (f1, g1, f2, g2) in &pairs {
        let v1 = stft(f1, g1, &pg).unwrap();
        let v2 = stft(f2, g2, &pg).unwrap();
        let lhs = v1.inner_product(&v2).unwrap();
        let rhs = inner_product(f1, f2).unwrap() * inner_product(g1, g2).unwrap().conj();
        let scale = (f1.l2_norm() * f2.l2_norm() * g1.l2_norm() * g2.l2_norm()).max(1e-300);
        assert!((lhs - rhs).norm() / scale < 1e-6, "{lhs} vs {rhs}");
    }
}

#[test]
fn fundamental_identity() {
    // V_g f(x, w) = e^{-2pi i x w} V_{g^}f^(w, -x)
    let f = tf_shift(&phi(), TFShift::new(0.5, 0.25));
    let g = CSignal::hermite(grid(), 1);
    let pg = natural();
    let lhs = stft(&f, &g, &pg).unwrap();
    let rhs = stft(&fourier_transform(&f), &fourier_transform(&g), &pg).unwrap();
    let mut err = 0.0f64;
    for m in 0..256 {
        let x = pg.x_grid.point(m);
        let Some(neg_m) = pg.xi_grid.index_of(-x) else {
            continue;
        };
        for k in 0..256 {
            let w = pg.xi_grid.point(k);
            let mj = pg.x_grid.index_of(w).expect("self-dual grid");
            let phase = Complex64::from_polar(1.0, -2.0 * PI * x * w);
            err = err.max((lhs.get(m, k) - phase * rhs.get(mj, neg_m)).norm());
        }
    }
    assert!(err < 1e-8, "max err {err:.2e}");
}

#[test]
fn change_of_window_inequality() {
    // |V_{g0} f| <= (1/|<gamma, g>|) (|V_g f| * |V_{g0} gamma|)
    let f = tf_shift(&phi(), TFShift::new(0.75, -0.5));
    let g0 = CSignal::hermite(grid(), 1);
    let g = phi();
    let gamma = phi();
    let pg = natural();

    let lhs = stft(&f, &g0, &pg).unwrap();
    let vf = stft(&f, &g, &pg)
        .unwrap()
        .map(|v| Complex64::new(v.norm(), 0.0));
    let vg = stft(&gamma, &g0, &pg)
        .unwrap()
        .map(|v| Complex64::new(v.norm(), 0.0));
    let conv = convolve2d(&vf, &vg).unwrap();
    let c = 1.0 / inner_product(&gamma, &g).unwrap().norm();

    // the doubled output grid contains the original lattice at offset N/2
    let mut worst = f64::NEG_INFINITY;
    for m in 0..256 {
        for k in 0..256 {
            let bound = c * conv.get(m + 128, k + 128).re;
            let violation = lhs.get(m, k).norm() - bound;
            worst = worst.max(violation);
        }
    }
    assert!(worst < 1e-10, "worst violation {worst:.2e}");
}

#[test]
fn gaussian_wigner_closed_form_on_grid() {
    let f = phi();
    let pg = natural();
    for tau in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let w = tau_wigner(&f, &f, tau, &pg).unwrap();
        let mut err = 0.0f64;
        for m in 0..256 {
            for k in 0..256 {
                let (x, xi) = pg.point(m, k);
                let closed = tau_wigner_gaussian_closed(tau, x, xi).unwrap();
                err = err.max((w.get(m, k) - closed).norm());
            }
        }
        assert!(err < 1e-8, "tau={tau}: max grid err {err:.2e}");
    }
}

#[test]
fn wigner_marginal_consistency() {
    // integrating W_tau f over xi recovers |f|^2 in the time variable
    let f = phi();
    let pg = natural();
    for tau in [0.3, 0.5] {
        let w = tau_wigner(&f, &f, tau, &pg).unwrap();
        let dxi = pg.xi_grid.step();
        for m in (0..256).step_by(31) {
            let marg: Complex64 = (0..256).map(|k| w.get(m, k)).sum::<Complex64>() * dxi;
            let x = pg.x_grid.point(m);
            let expect = (-2.0 * PI * x * x).exp();
            assert!(
                (marg - Complex64::new(expect, 0.0)).norm() < 1e-8,
                "tau={tau}, x={x}"
            );
        }
    }
}
