//! Centered discrete Fourier transforms with the 2π-in-the-exponent
//! convention.
//!
//! The forward transform approximates `F(ξ_k) = ∫ f(x) e^{-2πi x ξ_k} dx` by
//! the rectangle rule on a centered grid,
//!
//! ```text
//! F(ξ_k) ≈ Δx · Σ_n f(x_n) e^{-2πi x_n ξ_k},
//! ```
//!
//! evaluated with one radix-2 FFT plus pre/post twiddles that account for the
//! half-grid index offset `n - N/2` on both axes and for any half-step grid
//! offsets. With this normalization the Gaussian `e^{-πt²}` is a fixed point
//! of the transform. Every closed-form comparison in the crate relies on this
//! convention, so it is implemented once here and reused everywhere.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

use crate::grid::Grid1D;

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut planner = PLANNER
        .get_or_init(|| Mutex::new(FftPlanner::new()))
        .lock()
        .expect("FFT planner mutex poisoned");
    if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    }
}

/// Test-harness fault injection: when enabled, one FFT output bin is rotated
/// by the configured angle. Used by the verification suite to demonstrate
/// that the identity checks actually detect a corrupted transform.
#[doc(hidden)]
pub mod fault {
    use std::sync::atomic::{AtomicU64, Ordering};

    static TWIDDLE_ERROR_BITS: AtomicU64 = AtomicU64::new(0);

    pub fn set_twiddle_error(radians: f64) {
        TWIDDLE_ERROR_BITS.store(radians.to_bits(), Ordering::SeqCst);
    }

    pub fn clear() {
        set_twiddle_error(0.0);
    }

    pub(crate) fn twiddle_error() -> f64 {
        f64::from_bits(TWIDDLE_ERROR_BITS.load(Ordering::SeqCst))
    }
}

/// Raw length-N transform `Σ_n g_n e^{∓2πi nk/N}` (unnormalized).
fn raw_fft(mut buf: Vec<Complex64>, forward: bool) -> Vec<Complex64> {
    let n = buf.len();
    let fft = plan(n, forward);
    fft.process(&mut buf);
    let err = fault::twiddle_error();
    if err != 0.0 && n > 2 {
        // corrupt one bin in both phase and magnitude; a pure rotation would
        // be invisible to energy identities that pair two transformed fields
        let bin = n / 2 + 1;
        buf[bin] *= Complex64::from_polar(1.0 + err, err);
    }
    buf
}

/// Centered quadrature transform between two grids.
///
/// `sign = -1` computes `Δx Σ_n f_n e^{-2πi x_n ξ_k}` on the target grid;
/// `sign = +1` computes `Δξ Σ_k F_k e^{+2πi x_n ξ_k}`. The input lives on
/// `from`, the output on `to`; both grids must have the same length and
/// `step_from · step_to = 1/N` (dual pairing).
pub(crate) fn centered_transform(
    samples: &[Complex64],
    from: &Grid1D,
    to: &Grid1D,
    sign: f64,
) -> Vec<Complex64> {
    let n = from.n_samples();
    debug_assert_eq!(samples.len(), n);
    debug_assert_eq!(to.n_samples(), n);
    debug_assert!(
        (from.step() * to.step() * n as f64 - 1.0).abs() < 1e-9,
        "grids are not a dual pair"
    );

    let o_from = from.offset();
    let o_to = to.offset();

    // pre-twiddle: (-1)^n and the offset phase carried by the target grid
    let mut buf: Vec<Complex64> = Vec::with_capacity(n);
    for (idx, &v) in samples.iter().enumerate() {
        let parity = if idx % 2 == 0 { 1.0 } else { -1.0 };
        let x = from.point(idx);
        let ph = Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * x * o_to);
        buf.push(v * parity * ph);
    }

    let out = raw_fft(buf, sign < 0.0);

    // post-twiddle: (-1)^k, the N/2-parity factor, the source-offset phase,
    // and the quadrature weight of the source grid
    let sigma = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let weight = from.step();
    out.into_iter()
        .enumerate()
        .map(|(k, v)| {
            let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
            let kappa = to.point(k) - o_to;
            let ph = Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * o_from * kappa);
            v * parity * sigma * weight * ph
        })
        .collect()
}

/// Samples of `f(x_n + shift)` obtained by trigonometric interpolation:
/// modulate the centered spectrum by `e^{2πi·shift·ξ}` and invert. Entries
/// whose probe point `x_n + shift` falls outside the window are zeroed.
pub(crate) fn shifted_samples_raw(
    samples: &[Complex64],
    grid: &Grid1D,
    shift: f64,
) -> Vec<Complex64> {
    let dual = crate::grid::make_dual_grid(grid);
    let mut spec = centered_transform(samples, grid, &dual, -1.0);
    for (k, v) in spec.iter_mut().enumerate() {
        let xi = dual.point(k);
        *v *= Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * shift * xi);
    }
    let mut out = centered_transform(&spec, &dual, grid, 1.0);
    for (n, v) in out.iter_mut().enumerate() {
        if !grid.contains(grid.point(n) + shift) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_dual_grid;
    use std::f64::consts::PI;

    fn gauss_samples(g: &Grid1D) -> Vec<Complex64> {
        g.points()
            .map(|x| Complex64::new((-PI * x * x).exp(), 0.0))
            .collect()
    }

    #[test]
    fn gaussian_is_fixed_point() {
        let g = Grid1D::new(8.0, 256).unwrap();
        let d = make_dual_grid(&g);
        let out = centered_transform(&gauss_samples(&g), &g, &d, -1.0);
        for (k, v) in out.iter().enumerate() {
            let xi = d.point(k);
            let expect = (-PI * xi * xi).exp();
            assert!((v.re - expect).abs() < 1e-13, "bin {k}: {v} vs {expect}");
            assert!(v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn round_trip_identity() {
        let g = Grid1D::new(8.0, 256).unwrap();
        let d = make_dual_grid(&g);
        let f = gauss_samples(&g);
        let spec = centered_transform(&f, &g, &d, -1.0);
        let back = centered_transform(&spec, &d, &g, 1.0);
        let err = f
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "round trip error {err}");
    }

    #[test]
    fn round_trip_on_shifted_grid() {
        let g = Grid1D::new_shifted(8.0, 256).unwrap();
        let d = make_dual_grid(&g);
        let f = gauss_samples(&g);
        let spec = centered_transform(&f, &g, &d, -1.0);
        let back = centered_transform(&spec, &d, &g, 1.0);
        let err = f
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "shifted round trip error {err}");
    }

    #[test]
    fn tiny_grid_transform() {
        // N = 2 exercises the N/2-odd parity factor
        let g = Grid1D::new(0.5, 2).unwrap();
        let d = make_dual_grid(&g);
        let f = vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let out = centered_transform(&f, &g, &d, -1.0);
        // direct sum: F(xi_k) = dx * sum f_n e^{-2pi i x_n xi_k}
        for (k, v) in out.iter().enumerate() {
            let xi = d.point(k);
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, &fv) in f.iter().enumerate() {
                acc += fv * Complex64::from_polar(1.0, -2.0 * PI * g.point(n) * xi);
            }
            acc *= g.step();
            assert!((v - acc).norm() < 1e-14);
        }
    }

    #[test]
    fn fractional_shift_matches_evaluator() {
        let g = Grid1D::new(8.0, 256).unwrap();
        let f = gauss_samples(&g);
        let s = 0.31; // incommensurate with the lattice
        let shifted = shifted_samples_raw(&f, &g, s);
        for (n, v) in shifted.iter().enumerate() {
            let x = g.point(n) + s;
            if g.contains(x) {
                let expect = (-PI * x * x).exp();
                assert!((v.re - expect).abs() < 1e-10, "n={n}");
            } else {
                assert_eq!(*v, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn fault_injection_perturbs_one_bin() {
        let g = Grid1D::new(8.0, 256).unwrap();
        let d = make_dual_grid(&g);
        let f = gauss_samples(&g);
        let clean = centered_transform(&f, &g, &d, -1.0);
        fault::set_twiddle_error(1e-3);
        let dirty = centered_transform(&f, &g, &d, -1.0);
        fault::clear();
        let diffs: Vec<f64> = clean
            .iter()
            .zip(&dirty)
            .map(|(a, b)| (a - b).norm())
            .collect();
        assert!(diffs.iter().cloned().fold(0.0, f64::max) > 0.0);
        assert_eq!(diffs.iter().filter(|&&e| e > 0.0).count(), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip_inverts_random_spectra(seed in 0u64..1_000_000) {
                let g = Grid1D::new(4.0, 64).unwrap();
                let d = make_dual_grid(&g);
                let mut rng = crate::rng::SplitMix64::new(seed);
                let f: Vec<Complex64> = (0..64).map(|_| rng.next_complex()).collect();
                let spec = centered_transform(&f, &g, &d, -1.0);
                let back = centered_transform(&spec, &d, &g, 1.0);
                let err = f
                    .iter()
                    .zip(&back)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                prop_assert!(err < 1e-12, "round trip error {err}");
            }

            #[test]
            fn transform_is_linear(
                seed in 0u64..1_000_000,
                c_re in -2.0f64..2.0,
                c_im in -2.0f64..2.0,
            ) {
                let g = Grid1D::new(4.0, 64).unwrap();
                let d = make_dual_grid(&g);
                let mut rng = crate::rng::SplitMix64::new(seed);
                let f: Vec<Complex64> = (0..64).map(|_| rng.next_complex()).collect();
                let c = Complex64::new(c_re, c_im);
                let scaled: Vec<Complex64> = f.iter().map(|&v| v * c).collect();
                let a = centered_transform(&scaled, &g, &d, -1.0);
                let b = centered_transform(&f, &g, &d, -1.0);
                for (x, y) in a.iter().zip(&b) {
                    prop_assert!((x - y * c).norm() < 1e-12);
                }
            }
        }
    }
}
