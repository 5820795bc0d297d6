//! Time-frequency representations: short-time Fourier transform, τ-Wigner
//! distributions for all τ ∈ [0, 1], the dilation-reflection operator A_τ,
//! and the symplectic shear matrix 𝒜_τ together with the closed-form
//! factorizations of the STFT of a τ-Wigner distribution.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Result, TfError};
use crate::fft::centered_transform;
use crate::field::CField2D;
use crate::grid::PhaseGrid;
use crate::signal::{fourier_transform, sample_shifted, CSignal, Evaluator};

/// Time-frequency shift parameters for `π(z) = M_ω T_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TFShift {
    pub x: f64,
    pub omega: f64,
}

impl TFShift {
    pub fn new(x: f64, omega: f64) -> Self {
        Self { x, omega }
    }
}

/// 2×2 real matrix used for the d = 1 specialization of the symplectic
/// shears appearing in the STFT factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMat2(pub [[f64; 2]; 2]);

impl SymplecticMat2 {
    pub fn identity() -> Self {
        Self([[1.0, 0.0], [0.0, 1.0]])
    }

    /// The canonical symplectic matrix `J = [[0, 1], [-1, 0]]`.
    pub fn j() -> Self {
        Self([[0.0, 1.0], [-1.0, 0.0]])
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(&self) -> Self {
        Self([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn neg(&self) -> Self {
        Self([
            [-self.0[0][0], -self.0[0][1]],
            [-self.0[1][0], -self.0[1][1]],
        ])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self([
            [s * self.0[0][0], s * self.0[0][1]],
            [s * self.0[1][0], s * self.0[1][1]],
        ])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.0;
        let b = &other.0;
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self([
            [self.0[0][0] + other.0[0][0], self.0[0][1] + other.0[0][1]],
            [self.0[1][0] + other.0[1][0], self.0[1][1] + other.0[1][1]],
        ])
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        m
    }
}

/// The shear matrix `𝒜_τ = [[0, √((1-τ)/τ)], [-√(τ/(1-τ)), 0]]`, τ ∈ (0, 1).
pub fn matrix_a_tau(tau: f64) -> Result<SymplecticMat2> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(TfError::TauEndpoint(tau));
    }
    let r = ((1.0 - tau) / tau).sqrt();
    Ok(SymplecticMat2([[0.0, r], [-1.0 / r, 0.0]]))
}

/// The diagonal matrix `ℬ_τ = diag(1/(1-τ), 1/τ)`.
pub fn matrix_b_tau(tau: f64) -> Result<SymplecticMat2> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(TfError::TauEndpoint(tau));
    }
    Ok(SymplecticMat2([[1.0 / (1.0 - tau), 0.0], [0.0, 1.0 / tau]]))
}

/// Time-frequency shift `π(z) f(t) = e^{2πiωt} f(t - x)`.
pub fn tf_shift(f: &CSignal, z: TFShift) -> CSignal {
    let grid = *f.grid();
    if let Some(ev) = f.evaluator() {
        // closed forms are defined on all of R; compose exactly
        let ev = Arc::clone(ev);
        let wrapped: Evaluator =
            Arc::new(move |t| ev(t - z.x) * Complex64::from_polar(1.0, 2.0 * PI * z.omega * t));
        return CSignal::from_evaluator(grid, wrapped);
    }
    let shifted = sample_shifted(f, -z.x);
    let samples = grid
        .points()
        .zip(shifted)
        .map(|(t, v)| v * Complex64::from_polar(1.0, 2.0 * PI * z.omega * t))
        .collect();
    CSignal::from_samples(grid, samples).expect("shift preserves length")
}

fn require_natural(f: &CSignal, pg: &PhaseGrid) -> Result<()> {
    if pg.x_grid != *f.grid() || pg.xi_grid != crate::grid::make_dual_grid(f.grid()) {
        return Err(TfError::GridMismatch);
    }
    if f.grid().offset() != 0.0 {
        return Err(TfError::InvalidGrid(
            "time-frequency fields require an unshifted grid".into(),
        ));
    }
    Ok(())
}

/// Short-time Fourier transform
/// `V_g f(x, ω) = ∫ f(t) conj(g(t - x)) e^{-2πitω} dt` on the natural phase
/// grid, inner integral by one centered FFT per time shift.
pub fn stft(f: &CSignal, g: &CSignal, pg: &PhaseGrid) -> Result<CField2D> {
    if f.grid() != g.grid() {
        return Err(TfError::GridMismatch);
    }
    require_natural(f, pg)?;
    if g.sup_abs() == 0.0 {
        return Err(TfError::ZeroWindow);
    }
    let n = f.grid().n_samples();
    let mut values = Vec::with_capacity(n * n);
    let mut h = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n {
        for (idx, slot) in h.iter_mut().enumerate() {
            // g(t_n - x_m) is the sample at lattice index n - m + N/2
            let j = idx as isize - m as isize + (n / 2) as isize;
            *slot = if j >= 0 && (j as usize) < n {
                f.samples()[idx] * g.samples()[j as usize].conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        values.extend(centered_transform(&h, f.grid(), &pg.xi_grid, -1.0));
    }
    CField2D::from_values(*pg, values)
}

/// STFT at a single (possibly off-grid) phase-space point. Frequencies
/// beyond the Nyquist window of the lattice are not representable by the
/// quadrature (the sum aliases), so they yield zero, consistent with the
/// out-of-window resample policy.
pub fn stft_point(f: &CSignal, g: &CSignal, x: f64, omega: f64) -> Result<Complex64> {
    if f.grid() != g.grid() {
        return Err(TfError::GridMismatch);
    }
    if g.sup_abs() == 0.0 {
        return Err(TfError::ZeroWindow);
    }
    if !crate::grid::make_dual_grid(f.grid()).contains(omega) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g_shift = sample_shifted(g, -x);
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, (fv, gv)) in f.samples().iter().zip(&g_shift).enumerate() {
        let t = f.grid().point(idx);
        acc += fv * gv.conj() * Complex64::from_polar(1.0, -2.0 * PI * t * omega);
    }
    Ok(acc * f.grid().step())
}

/// Cross-τ-Wigner distribution
/// `W_τ(f,g)(x,ξ) = ∫ f(x+τt) conj(g(x-(1-τ)t)) e^{-2πitξ} dt` on the natural
/// phase grid. Endpoints use the exact product forms
/// `W_0(f,g) = e^{-2πixξ} f(x) conj(ĝ(ξ))` and
/// `W_1(f,g) = e^{2πixξ} conj(g(x)) f̂(ξ)`.
pub fn tau_wigner(f: &CSignal, g: &CSignal, tau: f64, pg: &PhaseGrid) -> Result<CField2D> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(TfError::TauOutOfRange(tau));
    }
    if f.grid() != g.grid() {
        return Err(TfError::GridMismatch);
    }
    require_natural(f, pg)?;
    let n = f.grid().n_samples();

    if tau == 0.0 || tau == 1.0 {
        let spectrum = if tau == 0.0 {
            fourier_transform(g)
        } else {
            fourier_transform(f)
        };
        let mut values = Vec::with_capacity(n * n);
        for m in 0..n {
            let x = pg.x_grid.point(m);
            for k in 0..n {
                let xi = pg.xi_grid.point(k);
                let v = if tau == 0.0 {
                    f.samples()[m]
                        * spectrum.samples()[k].conj()
                        * Complex64::from_polar(1.0, -2.0 * PI * x * xi)
                } else {
                    g.samples()[m].conj()
                        * spectrum.samples()[k]
                        * Complex64::from_polar(1.0, 2.0 * PI * x * xi)
                };
                values.push(v);
            }
        }
        return CField2D::from_values(*pg, values);
    }

    // interior tau: tabulate f(x_m + tau t_n) and g(x_m - (1-tau) t_n) by
    // exact fractional shifts, one per lag
    let mut f_tab: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut g_tab: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for idx in 0..n {
        let t = f.grid().point(idx);
        f_tab.push(sample_shifted(f, tau * t));
        g_tab.push(sample_shifted(g, -(1.0 - tau) * t));
    }

    let mut values = Vec::with_capacity(n * n);
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n {
        for idx in 0..n {
            row[idx] = f_tab[idx][m] * g_tab[idx][m].conj();
        }
        values.extend(centered_transform(&row, f.grid(), &pg.xi_grid, -1.0));
    }
    CField2D::from_values(*pg, values)
}

/// The operator `A_τ f(t) = f(-((1-τ)/τ) t)`, τ ∈ (0, 1).
pub fn a_tau_operator(f: &CSignal, tau: f64) -> Result<CSignal> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(TfError::TauEndpoint(tau));
    }
    let rate = (1.0 - tau) / tau;
    let grid = *f.grid();
    if let Some(ev) = f.evaluator() {
        let ev = Arc::clone(ev);
        let wrapped: Evaluator = Arc::new(move |t| ev(-rate * t));
        return Ok(CSignal::from_evaluator(grid, wrapped));
    }
    let points: Vec<f64> = grid.points().map(|t| -rate * t).collect();
    let res = crate::signal::resample(f, &points);
    CSignal::from_samples(grid, res.values)
}

/// τ-Wigner value at a point via the STFT rephrasing
/// `W_τ(f,g)(x,ξ) = τ^{-1} e^{2πixξ/τ} V_{A_τ g} f(x/(1-τ), ξ/τ)`.
pub fn wigner_via_stft(f: &CSignal, g: &CSignal, tau: f64, x: f64, xi: f64) -> Result<Complex64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(TfError::TauEndpoint(tau));
    }
    let a_g = a_tau_operator(g, tau)?;
    let v = stft_point(f, &a_g, x / (1.0 - tau), xi / tau)?;
    Ok(v * Complex64::from_polar(1.0 / tau, 2.0 * PI * x * xi / tau))
}

/// Product factorization of the STFT of a τ-Wigner distribution with window
/// `Φ_τ = W_τ(φ₁, φ₂)`:
///
/// ```text
/// V_{Φ_τ} W_τ(g,f)(z,ζ) = e^{-2πi z₂ζ₂}
///     · V_{φ₁} g(z₁ - τζ₂, z₂ + (1-τ)ζ₁)
///     · conj(V_{φ₂} f(z₁ + (1-τ)ζ₂, z₂ - τζ₁))
/// ```
///
/// with the endpoint product forms at τ = 0 (Rihaczek) and τ = 1
/// (conjugate Rihaczek) as separate code paths.
pub fn stft_of_wigner_closed(
    f: &CSignal,
    g: &CSignal,
    phi1: &CSignal,
    phi2: &CSignal,
    tau: f64,
    z: [f64; 2],
    zeta: [f64; 2],
) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(TfError::TauOutOfRange(tau));
    }
    let phase = Complex64::from_polar(1.0, -2.0 * PI * z[1] * zeta[1]);
    let (pg, pf) = if tau == 0.0 {
        ((z[0], z[1] + zeta[0]), (z[0] + zeta[1], z[1]))
    } else if tau == 1.0 {
        ((z[0] - zeta[1], z[1]), (z[0], z[1] - zeta[0]))
    } else {
        (
            (z[0] - tau * zeta[1], z[1] + (1.0 - tau) * zeta[0]),
            (z[0] + (1.0 - tau) * zeta[1], z[1] - tau * zeta[0]),
        )
    };
    let vg = stft_point(g, phi1, pg.0, pg.1)?;
    let vf = stft_point(f, phi2, pf.0, pf.1)?;
    Ok(phase * vg * vf.conj())
}

/// Direct 2-D STFT of a phase-space field against a window field, at a
/// grid-aligned translation `z` and arbitrary modulation `ζ`. This is the
/// quadrature oracle for the product factorization above.
pub fn stft2d_point(
    field: &CField2D,
    window: &CField2D,
    z: [f64; 2],
    zeta: [f64; 2],
) -> Result<Complex64> {
    if field.grid() != window.grid() {
        return Err(TfError::GridMismatch);
    }
    let pg = field.grid();
    let (nx, nk) = (pg.x_grid.n_samples(), pg.xi_grid.n_samples());
    let iz = pg
        .x_grid
        .index_of(z[0])
        .ok_or(TfError::OffGridPoint(z[0], z[1]))? as isize
        - (nx / 2) as isize;
    let ik = pg
        .xi_grid
        .index_of(z[1])
        .ok_or(TfError::OffGridPoint(z[0], z[1]))? as isize
        - (nk / 2) as isize;

    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..nx {
        let wm = m as isize - iz;
        if wm < 0 || wm >= nx as isize {
            continue;
        }
        let x = pg.x_grid.point(m);
        for k in 0..nk {
            let wk = k as isize - ik;
            if wk < 0 || wk >= nk as isize {
                continue;
            }
            let y = pg.xi_grid.point(k);
            let w = window.get(wm as usize, wk as usize).conj();
            let ph = Complex64::from_polar(1.0, -2.0 * PI * (x * zeta[0] + y * zeta[1]));
            acc += field.get(m, k) * w * ph;
        }
    }
    Ok(acc * pg.cell())
}
