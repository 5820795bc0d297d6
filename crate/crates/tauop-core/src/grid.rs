//! Symmetric sampling lattices in time and in the time-frequency plane.

use crate::error::{Result, TfError};

/// Symmetric 1-D sampling lattice covering `[-L/2, L/2)` with `N` samples.
///
/// Sample points are `x_n = (n - N/2) * step + offset` where `step = L/N` and
/// `L = 2 * half_width`. `N` must be a power of two. The optional half-step
/// offset produces a lattice with no sample at the origin, which the
/// counterexample experiments need for symbols singular at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    half_width: f64,
    n_samples: usize,
    step: f64,
    offset: f64,
}

impl Grid1D {
    /// Centered grid with samples at `(n - N/2) * step`.
    pub fn new(half_width: f64, n_samples: usize) -> Result<Self> {
        Self::with_offset(half_width, n_samples, 0.0)
    }

    /// Grid shifted by half a step: samples at `(n - N/2 + 1/2) * step`,
    /// so no sample falls on the origin.
    pub fn new_shifted(half_width: f64, n_samples: usize) -> Result<Self> {
        let step = 2.0 * half_width / n_samples as f64;
        Self::with_offset(half_width, n_samples, step / 2.0)
    }

    fn with_offset(half_width: f64, n_samples: usize, offset: f64) -> Result<Self> {
        if half_width <= 0.0 || !half_width.is_finite() {
            return Err(TfError::InvalidGrid(format!(
                "half_width must be positive and finite, got {half_width}"
            )));
        }
        if n_samples < 2 || !n_samples.is_power_of_two() {
            return Err(TfError::InvalidGrid(format!(
                "n_samples must be a power of two >= 2, got {n_samples}"
            )));
        }
        let step = 2.0 * half_width / n_samples as f64;
        Ok(Self {
            half_width,
            n_samples,
            step,
            offset,
        })
    }

    /// The default experimental grid: N = 256 samples on `[-8, 8)`.
    pub fn default_grid() -> Self {
        Self::new(8.0, 256).expect("default grid parameters are valid")
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Sample point `x_n = (n - N/2) * step + offset`.
    pub fn point(&self, n: usize) -> f64 {
        (n as f64 - self.n_samples as f64 / 2.0) * self.step + self.offset
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(move |n| self.point(n))
    }

    /// Whether `x` lies inside the sampled window `[-L/2, L/2)`.
    pub fn contains(&self, x: f64) -> bool {
        x >= -self.half_width && x < self.half_width
    }

    /// Index of a grid-aligned point, if `x` coincides with a sample point.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let raw = (x - self.offset) / self.step + self.n_samples as f64 / 2.0;
        let idx = raw.round();
        if (raw - idx).abs() < 1e-9 && idx >= 0.0 && (idx as usize) < self.n_samples {
            Some(idx as usize)
        } else {
            None
        }
    }
}

/// Frequency grid dual to `g`: step `1/(step * N)`, same sample count,
/// centered at zero.
pub fn make_dual_grid(g: &Grid1D) -> Grid1D {
    let dual_step = 1.0 / (g.step() * g.n_samples() as f64);
    let half_width = dual_step * g.n_samples() as f64 / 2.0;
    Grid1D {
        half_width,
        n_samples: g.n_samples(),
        step: dual_step,
        offset: 0.0,
    }
}

/// A pair of grids spanning the time-frequency plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub x_grid: Grid1D,
    pub xi_grid: Grid1D,
}

impl PhaseGrid {
    pub fn new(x_grid: Grid1D, xi_grid: Grid1D) -> Self {
        Self { x_grid, xi_grid }
    }

    /// Phase grid whose frequency axis is the dual of the time axis.
    pub fn natural(g: &Grid1D) -> Self {
        Self {
            x_grid: *g,
            xi_grid: make_dual_grid(g),
        }
    }

    pub fn point(&self, m: usize, k: usize) -> (f64, f64) {
        (self.x_grid.point(m), self.xi_grid.point(k))
    }

    /// Quadrature cell area.
    pub fn cell(&self) -> f64 {
        self.x_grid.step() * self.xi_grid.step()
    }
}
