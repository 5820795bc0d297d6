//! Closed-form Gaussian oracles: generalized Gaussians, their short-time
//! Fourier transforms, and the τ-Wigner distribution of the standard
//! Gaussian. These are the reference values that the numerical transforms
//! are tested against.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Result, TfError};

/// Parameters of the generalized Gaussian
/// `f_{a,b,c}(x,ξ) = e^{-πax²} e^{-πbξ²} e^{2πicxξ}` with `a, b > 0`.
///
/// The coupling `c` is admitted with either sign: the τ-Wigner distribution
/// of the Gaussian produces negative chirp rates for τ < 1/2, and every
/// closed form below is analytic in `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenGaussianParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GenGaussianParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() || b <= 0.0 || !b.is_finite() || !c.is_finite() {
            return Err(TfError::InvalidWeight(format!(
                "generalized Gaussian needs a, b > 0 (got a={a}, b={b}, c={c})"
            )));
        }
        Ok(Self { a, b, c })
    }
}

/// Evaluate `f_{a,b,c}(x, ξ)`.
pub fn gen_gaussian(p: &GenGaussianParams, x: f64, xi: f64) -> Complex64 {
    let mag = (-PI * (p.a * x * x + p.b * xi * xi)).exp();
    Complex64::from_polar(mag, 2.0 * PI * p.c * x * xi)
}

/// Closed form of `V_Φ f_{a,b,c}(z, ζ)` with window `Φ(x,ξ) = e^{-π(x²+ξ²)}`
/// and `z, ζ ∈ ℝ²`.
///
/// Writing `D = (a+1)(b+1) + c²`, the amplitude is `D^{-1/2}` times a
/// Gaussian in the quadratic form
///
/// ```text
/// [a(b+1)+c²] z₁² + [(a+1)b+c²] z₂² + (b+1) ζ₁² + (a+1) ζ₂² - 2c (z₁ζ₂ + z₂ζ₁)
/// ```
///
/// over `D`, and the phase factor — obtained by completing the square in the
/// defining Gaussian integral — is
///
/// ```text
/// e^{-2πi [ (b+1) z₁ζ₁ + (a+1) z₂ζ₂ - c (z₁z₂ - ζ₁ζ₂) ] / D}.
/// ```
pub fn stft_gen_gaussian_closed(p: &GenGaussianParams, z: [f64; 2], zeta: [f64; 2]) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let d = (a + 1.0) * (b + 1.0) + c * c;
    let amp = d.powf(-0.5);
    let quad = ((a * (b + 1.0) + c * c) * z[0] * z[0]
        + ((a + 1.0) * b + c * c) * z[1] * z[1]
        + (b + 1.0) * zeta[0] * zeta[0]
        + (a + 1.0) * zeta[1] * zeta[1]
        - 2.0 * c * (z[0] * zeta[1] + z[1] * zeta[0]))
        / d;
    let phase = -2.0
        * PI
        * ((b + 1.0) * z[0] * zeta[0] + (a + 1.0) * z[1] * zeta[1]
            - c * (z[0] * z[1] - zeta[0] * zeta[1]))
        / d;
    Complex64::from_polar(amp * (-PI * quad).exp(), phase)
}

/// `c(τ) = 2τ² - 2τ + 1`, the width parameter of the τ-Wigner Gaussian.
pub fn wigner_gaussian_width(tau: f64) -> f64 {
    2.0 * tau * tau - 2.0 * tau + 1.0
}

/// Closed form of `W_τ φ (x, ξ)` for the standard Gaussian `φ(t) = e^{-πt²}`:
///
/// ```text
/// W_τ φ (x, ξ) = c(τ)^{-1/2} e^{-πx²/c(τ)} e^{-πξ²/c(τ)} e^{2πi(2τ-1)xξ/c(τ)}
/// ```
///
/// with `c(τ) = 2τ² - 2τ + 1`.
pub fn tau_wigner_gaussian_closed(tau: f64, x: f64, xi: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(TfError::TauOutOfRange(tau));
    }
    let c = wigner_gaussian_width(tau);
    let mag = c.powf(-0.5) * (-PI * (x * x + xi * xi) / c).exp();
    Ok(Complex64::from_polar(
        mag,
        2.0 * PI * (2.0 * tau - 1.0) * x * xi / c,
    ))
}

/// Magnitude of the STFT of `Φ_τ = W_τ φ` with Gaussian window
/// `Φ = e^{-π(x²+ξ²)}`:
///
/// ```text
/// |V_Φ Φ_τ|(z, ζ) = (2τ²-2τ+5)^{-1/2} ·
///     e^{-π [3(z₁²+z₂²) + (2τ²-2τ+2)(ζ₁²+ζ₂²) + (2-4τ)(z₁ζ₂+z₂ζ₁)] / (2τ²-2τ+5)}
/// ```
///
/// The amplitude at the origin is maximal at τ = 1/2 where it equals
/// `(9/2)^{-1/2} = (2/9)^{1/2} ≈ 0.47140452` — the two ways of writing the
/// constant are the same number.
pub fn stft_wigner_gaussian_magnitude(tau: f64, z: [f64; 2], zeta: [f64; 2]) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(TfError::TauOutOfRange(tau));
    }
    let den = 2.0 * tau * tau - 2.0 * tau + 5.0;
    let quad = (3.0 * (z[0] * z[0] + z[1] * z[1])
        + (2.0 * tau * tau - 2.0 * tau + 2.0) * (zeta[0] * zeta[0] + zeta[1] * zeta[1])
        + (2.0 - 4.0 * tau) * (z[0] * zeta[1] + z[1] * zeta[0]))
        / den;
    Ok(den.powf(-0.5) * (-PI * quad).exp())
}
