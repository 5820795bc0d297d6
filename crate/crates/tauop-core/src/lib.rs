//! Numerical time-frequency analysis toolkit: τ-Wigner distributions,
//! short-time Fourier transforms, τ-pseudodifferential operator
//! discretizations, and weighted modulation / Wiener amalgam norms.
//!
//! Everything is discretized on symmetric power-of-two lattices with a
//! centered FFT in the 2π-in-the-exponent convention (`e^{-πt²}` is a fixed
//! point of the transform). All types are immutable after construction and
//! all operations are pure functions, so shared inputs may be used from
//! multiple threads freely.

pub mod error;
pub mod fft;
pub mod field;
pub mod gaussian;
pub mod grid;
pub mod operators;
pub mod rng;
pub mod signal;
pub mod spaces;
pub mod symbol;
pub mod tf;
pub mod weight;

pub use error::{Result, TfError};
pub use field::{convolve2d, convolve4d, CField2D, Field4D};
pub use grid::{make_dual_grid, Grid1D, PhaseGrid};
pub use signal::{
    fourier_transform, inner_product, inverse_fourier, inverse_fourier_onto, resample, CSignal,
    Evaluator, Resampled,
};

#[cfg(test)]
mod concurrency_contract {
    // every public type is immutable after construction and shareable
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn types_are_send_sync() {
        assert_send_sync::<crate::CSignal>();
        assert_send_sync::<crate::CField2D>();
        assert_send_sync::<crate::Field4D>();
        assert_send_sync::<crate::Grid1D>();
        assert_send_sync::<crate::PhaseGrid>();
        assert_send_sync::<crate::symbol::Symbol>();
        assert_send_sync::<crate::operators::OperatorMatrix>();
        assert_send_sync::<crate::weight::Weight>();
    }
}
