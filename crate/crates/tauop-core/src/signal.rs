//! Complex sampled signals, inner products, Fourier transforms and
//! band-limited resampling.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Result, TfError};
use crate::fft::{centered_transform, shifted_samples_raw};
use crate::grid::{make_dual_grid, Grid1D};

/// Closed-form point evaluator backing a signal, for exact off-grid access.
pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A complex-valued signal sampled on a [`Grid1D`], optionally backed by a
/// closed-form evaluator. Immutable after construction.
#[derive(Clone)]
pub struct CSignal {
    grid: Grid1D,
    samples: Vec<Complex64>,
    evaluator: Option<Evaluator>,
}

impl std::fmt::Debug for CSignal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CSignal")
            .field("grid", &self.grid)
            .field("samples", &self.samples.len())
            .field("evaluator", &self.evaluator.is_some())
            .finish()
    }
}

impl CSignal {
    /// Sample a closed-form function; the evaluator is retained for exact
    /// off-grid evaluation.
    pub fn from_fn<F>(grid: Grid1D, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let samples = grid.points().map(&f).collect();
        Self {
            grid,
            samples,
            evaluator: Some(Arc::new(f)),
        }
    }

    pub fn from_evaluator(grid: Grid1D, f: Evaluator) -> Self {
        let samples = grid.points().map(|x| f(x)).collect();
        Self {
            grid,
            samples,
            evaluator: Some(f),
        }
    }

    /// Wrap raw samples; no evaluator, so off-grid access goes through
    /// trigonometric interpolation.
    pub fn from_samples(grid: Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n_samples() {
            return Err(TfError::InvalidGrid(format!(
                "sample count {} does not match grid size {}",
                samples.len(),
                grid.n_samples()
            )));
        }
        Ok(Self {
            grid,
            samples,
            evaluator: None,
        })
    }

    /// The standard Gaussian `φ(t) = e^{-πt²}`.
    pub fn gaussian(grid: Grid1D) -> Self {
        Self::from_fn(grid, |t| Complex64::new((-PI * t * t).exp(), 0.0))
    }

    /// L²-normalized Hermite function of order `k` (`h_0 = 2^{1/4} e^{-πt²}`,
    /// eigenfunctions of the Fourier transform with eigenvalue `(-i)^k`).
    pub fn hermite(grid: Grid1D, k: usize) -> Self {
        Self::from_fn(grid, move |t| Complex64::new(hermite_fn(k, t), 0.0))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn evaluator(&self) -> Option<&Evaluator> {
        self.evaluator.as_ref()
    }

    /// Evaluate at an arbitrary point: closed form when available, zero
    /// outside the window.
    pub fn eval_or_zero(&self, x: f64) -> Option<Complex64> {
        if !self.grid.contains(x) {
            return Some(Complex64::new(0.0, 0.0));
        }
        self.evaluator.as_ref().map(|f| f(x))
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.samples.iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.step()).sqrt()
    }

    pub fn sup_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise map of the samples; the evaluator is dropped.
    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(f64, Complex64) -> Complex64,
    {
        let samples = self
            .grid
            .points()
            .zip(&self.samples)
            .map(|(x, &v)| f(x, v))
            .collect();
        Self {
            grid: self.grid,
            samples,
            evaluator: None,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let samples = self.samples.iter().map(|&v| v * c).collect();
        let ev = self.evaluator.clone().map(|f| {
            let g: Evaluator = Arc::new(move |x| f(x) * c);
            g
        });
        Self {
            grid: self.grid,
            samples,
            evaluator: ev,
        }
    }
}

fn hermite_fn(k: usize, t: f64) -> f64 {
    // h_{n+1} = (2 sqrt(2*pi) t h_n - sqrt(2n) h_{n-1}) / sqrt(2(n+1))
    let h0 = 2f64.powf(0.25) * (-PI * t * t).exp();
    if k == 0 {
        return h0;
    }
    let mut prev = h0;
    let mut cur = 2.0 * (2.0 * PI).sqrt() * t * h0 / 2f64.sqrt();
    for n in 1..k {
        let next = (2.0 * (2.0 * PI).sqrt() * t * cur - (2.0 * n as f64).sqrt() * prev)
            / (2.0 * (n as f64 + 1.0)).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// Riemann approximation of `⟨f, g⟩ = ∫ f(t) conj(g(t)) dt`, antilinear in
/// the second argument.
pub fn inner_product(f: &CSignal, g: &CSignal) -> Result<Complex64> {
    if f.grid() != g.grid() {
        return Err(TfError::GridMismatch);
    }
    let acc: Complex64 = f
        .samples()
        .iter()
        .zip(g.samples())
        .map(|(a, b)| a * b.conj())
        .sum();
    Ok(acc * f.grid().step())
}

/// Normalized Fourier transform `F f(ξ) = ∫ f(x) e^{-2πi x ξ} dx` sampled on
/// the dual grid.
pub fn fourier_transform(f: &CSignal) -> CSignal {
    let dual = make_dual_grid(f.grid());
    let spec = centered_transform(f.samples(), f.grid(), &dual, -1.0);
    CSignal {
        grid: dual,
        samples: spec,
        evaluator: None,
    }
}

/// Inverse Fourier transform back onto the dual of the input grid.
pub fn inverse_fourier(f: &CSignal) -> CSignal {
    let target = make_dual_grid(f.grid());
    inverse_fourier_onto(f, &target)
}

/// Inverse Fourier transform onto an explicit target grid (dual pairing with
/// the input grid is required; lets shifted grids round-trip exactly).
pub fn inverse_fourier_onto(f: &CSignal, target: &Grid1D) -> CSignal {
    let samples = centered_transform(f.samples(), f.grid(), target, 1.0);
    CSignal {
        grid: *target,
        samples,
        evaluator: None,
    }
}

/// Result of [`resample`]: interpolated values plus a flag recording whether
/// any requested point fell outside the window (those values are zero).
#[derive(Debug, Clone)]
pub struct Resampled {
    pub values: Vec<Complex64>,
    pub clipped: bool,
}

/// Evaluate `f` at arbitrary points: exactly via the evaluator when present,
/// otherwise by trigonometric (Fourier-series) interpolation, which is exact
/// at grid points and spectrally accurate for signals band-limited to the
/// grid. Points outside `[-L/2, L/2)` yield zero and set the `clipped` flag.
pub fn resample(f: &CSignal, points: &[f64]) -> Resampled {
    let grid = f.grid();
    let mut clipped = false;

    if let Some(ev) = f.evaluator() {
        let values = points
            .iter()
            .map(|&x| {
                if grid.contains(x) {
                    ev(x)
                } else {
                    clipped = true;
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        return Resampled { values, clipped };
    }

    let dual = make_dual_grid(grid);
    let spec = centered_transform(f.samples(), grid, &dual, -1.0);
    let values = points
        .iter()
        .map(|&x| {
            if let Some(idx) = grid.index_of(x) {
                return f.samples()[idx];
            }
            if !grid.contains(x) {
                clipped = true;
                return Complex64::new(0.0, 0.0);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &c) in spec.iter().enumerate() {
                let xi = dual.point(k);
                acc += c * Complex64::from_polar(1.0, 2.0 * PI * x * xi);
            }
            acc * dual.step()
        })
        .collect();
    Resampled { values, clipped }
}

/// Samples of `f(x_n + shift)` on the signal's own grid, zero where the probe
/// point leaves the window. Exact for evaluator-backed signals, trigonometric
/// interpolation otherwise.
pub(crate) fn sample_shifted(f: &CSignal, shift: f64) -> Vec<Complex64> {
    let grid = f.grid();
    if let Some(ev) = f.evaluator() {
        return grid
            .points()
            .map(|x| {
                let p = x + shift;
                if grid.contains(p) {
                    ev(p)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
    }
    shifted_samples_raw(f.samples(), grid, shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn phi() -> CSignal {
        CSignal::gaussian(Grid1D::default_grid())
    }

    #[test]
    fn gaussian_self_inner_product() {
        // ∫ e^{-2πt²} dt = 2^{-1/2}
        let p = inner_product(&phi(), &phi()).unwrap();
        assert!((p.re - INV_SQRT2).abs() < 1e-12);
        assert!(p.im.abs() < 1e-15);
    }

    #[test]
    fn inner_product_antilinear_in_second_slot() {
        let f = phi();
        let g = f.scale(Complex64::new(0.0, 1.0));
        let p = inner_product(&f, &g).unwrap();
        assert!((p - Complex64::new(0.0, -INV_SQRT2)).norm() < 1e-12);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let g = Grid1D::default_grid();
        let tphi = CSignal::from_fn(g, |t| Complex64::new(t * (-PI * t * t).exp(), 0.0));
        let p = inner_product(&tphi, &phi()).unwrap();
        assert!(p.norm() < 1e-14);
    }

    #[test]
    fn inner_product_grid_mismatch() {
        let f = phi();
        let g = CSignal::gaussian(Grid1D::new(8.0, 128).unwrap());
        assert!(matches!(inner_product(&f, &g), Err(TfError::GridMismatch)));
    }

    #[test]
    fn fourier_gaussian_fixed_point() {
        let spec = fourier_transform(&phi());
        for (k, v) in spec.samples().iter().enumerate() {
            let xi = spec.grid().point(k);
            assert!((v.re - (-PI * xi * xi).exp()).abs() < 1e-13);
        }
    }

    #[test]
    fn shift_theorem() {
        let g = Grid1D::default_grid();
        let x0 = 1.0;
        let shifted = CSignal::from_fn(g, move |t| {
            Complex64::new((-PI * (t - x0) * (t - x0)).exp(), 0.0)
        });
        let spec = fourier_transform(&shifted);
        for (k, v) in spec.samples().iter().enumerate() {
            let xi = spec.grid().point(k);
            let expect = Complex64::from_polar((-PI * xi * xi).exp(), -2.0 * PI * x0 * xi);
            assert!((v - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn modulation_theorem() {
        let g = Grid1D::default_grid();
        let w0 = 2.0;
        let modulated = CSignal::from_fn(g, move |t| {
            Complex64::from_polar((-PI * t * t).exp(), 2.0 * PI * w0 * t)
        });
        let spec = fourier_transform(&modulated);
        for (k, v) in spec.samples().iter().enumerate() {
            let xi = spec.grid().point(k);
            let expect = (-PI * (xi - w0) * (xi - w0)).exp();
            assert!((v.re - expect).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = phi();
        let back = inverse_fourier(&fourier_transform(&f));
        let err = f
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn inverse_of_gaussian_spectrum() {
        let g = Grid1D::default_grid();
        let spec = CSignal::gaussian(make_dual_grid(&g));
        let f = inverse_fourier_onto(&spec, &g);
        for (n, v) in f.samples().iter().enumerate() {
            let t = g.point(n);
            assert!((v.re - (-PI * t * t).exp()).abs() < 1e-13);
        }
    }

    #[test]
    fn round_trip_random_bandlimited() {
        let g = Grid1D::default_grid();
        let mut rng = crate::rng::SplitMix64::new(42);
        let f = crate::rng::random_bandlimited_signal(&g, 2.0, &mut rng);
        let back = inverse_fourier(&fourier_transform(&f));
        let err = f
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn parseval() {
        let g = Grid1D::default_grid();
        for (f, h) in [
            (CSignal::gaussian(g), CSignal::hermite(g, 1)),
            (CSignal::hermite(g, 2), CSignal::hermite(g, 3)),
        ] {
            let lhs = inner_product(&f, &h).unwrap();
            let rhs = inner_product(&fourier_transform(&f), &fourier_transform(&h)).unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn double_transform_is_reflection() {
        let g = Grid1D::default_grid();
        for f in [CSignal::hermite(g, 1), CSignal::hermite(g, 4)] {
            let ff = fourier_transform(&fourier_transform(&f));
            for (n, v) in ff.samples().iter().enumerate() {
                // grids are self-dual here; sample at -x is index N - n (N/2-symmetric)
                let x = ff.grid().point(n);
                let idx_neg = f.grid().index_of(-x);
                if let Some(m) = idx_neg {
                    assert!((v - f.samples()[m]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn hermite_orthonormal() {
        let g = Grid1D::default_grid();
        for j in 0..4 {
            for k in 0..4 {
                let p = inner_product(&CSignal::hermite(g, j), &CSignal::hermite(g, k)).unwrap();
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((p.re - expect).abs() < 1e-10, "⟨h{j}, h{k}⟩ = {p}");
                assert!(p.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hermite_fourier_eigenfunction() {
        let g = Grid1D::default_grid();
        for k in 0..4 {
            let h = CSignal::hermite(g, k);
            let spec = fourier_transform(&h);
            let eig = Complex64::new(0.0, -1.0).powu(k as u32);
            for (n, v) in spec.samples().iter().enumerate() {
                let expect = eig * Complex64::new(hermite_fn(k, spec.grid().point(n)), 0.0);
                assert!((v - expect).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn resample_evaluator_exact() {
        let r = resample(&phi(), &[0.3]);
        assert!(!r.clipped);
        assert!((r.values[0].re - (-PI * 0.09).exp()).abs() < 1e-15);
    }

    #[test]
    fn resample_trig_interpolation() {
        let f = phi();
        let sampled = CSignal::from_samples(*f.grid(), f.samples().to_vec()).unwrap();
        let r = resample(&sampled, &[0.3]);
        assert!((r.values[0].re - (-PI * 0.09).exp()).abs() < 1e-8);
        assert!(r.values[0].im.abs() < 1e-10);
    }

    #[test]
    fn resample_out_of_window_flags() {
        let f = phi();
        let l = 2.0 * f.grid().half_width();
        let r = resample(&f, &[l]);
        assert!(r.clipped);
        assert_eq!(r.values[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn resample_grid_points_exact() {
        let f = phi();
        let sampled = CSignal::from_samples(*f.grid(), f.samples().to_vec()).unwrap();
        let pts: Vec<f64> = f.grid().points().collect();
        let r = resample(&sampled, &pts);
        for (a, b) in r.values.iter().zip(f.samples()) {
            assert_eq!(a, b); // bitwise: stored samples are returned directly
        }
    }
}
