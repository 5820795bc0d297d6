//! Complex fields on phase-space grids and small 4-D fields, with linear
//! convolution helpers.

use num_complex::Complex64;

use crate::error::{Result, TfError};
use crate::fft::centered_transform;
use crate::grid::{Grid1D, PhaseGrid};

/// Complex field on a [`PhaseGrid`], row-major over the time axis:
/// `values[m * n_xi + k] = F(x_m, ξ_k)`.
#[derive(Debug, Clone)]
pub struct CField2D {
    grid: PhaseGrid,
    values: Vec<Complex64>,
}

impl CField2D {
    pub fn zero(grid: PhaseGrid) -> Self {
        let n = grid.x_grid.n_samples() * grid.xi_grid.n_samples();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn<F>(grid: PhaseGrid, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let nx = grid.x_grid.n_samples();
        let nk = grid.xi_grid.n_samples();
        let mut values = Vec::with_capacity(nx * nk);
        for m in 0..nx {
            let x = grid.x_grid.point(m);
            for k in 0..nk {
                values.push(f(x, grid.xi_grid.point(k)));
            }
        }
        Self { grid, values }
    }

    pub fn from_values(grid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.x_grid.n_samples() * grid.xi_grid.n_samples() {
            return Err(TfError::InvalidGrid(
                "value count does not match phase grid shape".into(),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, m: usize, k: usize) -> Complex64 {
        self.values[m * self.grid.xi_grid.n_samples() + k]
    }

    pub fn set(&mut self, m: usize, k: usize, v: Complex64) {
        self.values[m * self.grid.xi_grid.n_samples() + k] = v;
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        let nk = self.grid.xi_grid.n_samples();
        &self.values[m * nk..(m + 1) * nk]
    }

    /// Quadrature inner product `ΔxΔξ Σ F conj(G)`.
    pub fn inner_product(&self, other: &CField2D) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(TfError::GridMismatch);
        }
        let acc: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(acc * self.grid.cell())
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.cell()).sqrt()
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64,
    {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Keep every `factor`-th sample along both axes. Both axis lengths must
    /// be divisible by `factor` and divisible evenly enough that the centers
    /// coincide; for centered power-of-two grids decimation is exact.
    pub fn subsample(&self, factor: usize) -> Result<CField2D> {
        let nx = self.grid.x_grid.n_samples();
        let nk = self.grid.xi_grid.n_samples();
        if factor == 0 || !nx.is_multiple_of(factor) || !nk.is_multiple_of(factor) {
            return Err(TfError::InvalidGrid(format!(
                "cannot subsample {nx}x{nk} field by {factor}"
            )));
        }
        let coarse_x = Grid1D::new(self.grid.x_grid.half_width(), nx / factor)?;
        let coarse_k = Grid1D::new(self.grid.xi_grid.half_width(), nk / factor)?;
        if self.grid.x_grid.offset() != 0.0 || self.grid.xi_grid.offset() != 0.0 {
            return Err(TfError::InvalidGrid(
                "subsampling of offset grids is not supported".into(),
            ));
        }
        let mut values = Vec::with_capacity((nx / factor) * (nk / factor));
        for m in (0..nx).step_by(factor) {
            for k in (0..nk).step_by(factor) {
                values.push(self.get(m, k));
            }
        }
        Ok(CField2D {
            grid: PhaseGrid::new(coarse_x, coarse_k),
            values,
        })
    }
}

fn doubled(g: &Grid1D) -> Grid1D {
    Grid1D::new(2.0 * g.half_width(), 2 * g.n_samples()).expect("doubled grid stays valid")
}

/// Linear (zero outside the window) convolution of two fields on the same
/// phase grid, carried out by zero-padded FFT. The result lives on the
/// doubled grid covering the full support, scaled by the quadrature cell so
/// it approximates the continuous convolution.
pub fn convolve2d(a: &CField2D, b: &CField2D) -> Result<CField2D> {
    if a.grid() != b.grid() {
        return Err(TfError::GridMismatch);
    }
    let nx = a.grid().x_grid.n_samples();
    let nk = a.grid().xi_grid.n_samples();
    let (px, pk) = (2 * nx, 2 * nk);

    let pad = |f: &CField2D| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); px * pk];
        for m in 0..nx {
            for k in 0..nk {
                out[m * pk + k] = f.get(m, k);
            }
        }
        out
    };

    let mut fa = pad(a);
    let mut fb = pad(b);
    fft2_in_place(&mut fa, px, pk, true);
    fft2_in_place(&mut fb, px, pk, true);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft2_in_place(&mut fa, px, pk, false);
    let norm = 1.0 / (px * pk) as f64;
    let cell = a.grid().cell();
    for v in fa.iter_mut() {
        *v *= norm * cell;
    }

    // index sum i + i' maps onto the doubled centered grid directly
    let out_grid = PhaseGrid::new(doubled(&a.grid().x_grid), doubled(&a.grid().xi_grid));
    CField2D::from_values(out_grid, fa)
}

/// In-place 2-D FFT in plain index space (row-major `n0 x n1`), unnormalized.
fn fft2_in_place(data: &mut [Complex64], n0: usize, n1: usize, forward: bool) {
    use rustfft::FftPlanner;
    let mut planner = FftPlanner::new();
    let row_fft = if forward {
        planner.plan_fft_forward(n1)
    } else {
        planner.plan_fft_inverse(n1)
    };
    for r in 0..n0 {
        row_fft.process(&mut data[r * n1..(r + 1) * n1]);
    }
    let col_fft = if forward {
        planner.plan_fft_forward(n0)
    } else {
        planner.plan_fft_inverse(n0)
    };
    let mut col = vec![Complex64::new(0.0, 0.0); n0];
    for c in 0..n1 {
        for r in 0..n0 {
            col[r] = data[r * n1 + c];
        }
        col_fft.process(&mut col);
        for r in 0..n0 {
            data[r * n1 + c] = col[r];
        }
    }
}

/// 2-D centered quadrature Fourier transform of a field (both axes), onto
/// the grids given in `to`; `sign = -1` is the forward transform
/// `∫∫ F(x,ξ) e^{-2πi(xζ₁+ξζ₂)} dx dξ`.
pub fn centered_transform_2d(field: &CField2D, to: &PhaseGrid, sign: f64) -> CField2D {
    let from = field.grid();
    let nx = from.x_grid.n_samples();
    let nk = from.xi_grid.n_samples();

    // transform along the xi axis (rows), then along the x axis (columns)
    let mut rows: Vec<Complex64> = Vec::with_capacity(nx * nk);
    for m in 0..nx {
        let row = centered_transform(field.row(m), &from.xi_grid, &to.xi_grid, sign);
        rows.extend(row);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); nx * nk];
    let mut col = vec![Complex64::new(0.0, 0.0); nx];
    for k in 0..nk {
        for m in 0..nx {
            col[m] = rows[m * nk + k];
        }
        let t = centered_transform(&col, &from.x_grid, &to.x_grid, sign);
        for m in 0..nx {
            out[m * nk + k] = t[m];
        }
    }
    CField2D {
        grid: *to,
        values: out,
    }
}

/// Small 4-D complex field `F(z, ζ)` with `z, ζ ∈ ℝ²`, row-major over
/// `(z1, z2, ζ1, ζ2)`. Used for the Young-type inequality checks and the
/// `L^∞_z(L¹_ζ)` norm.
#[derive(Debug, Clone)]
pub struct Field4D {
    pub z_grid: [Grid1D; 2],
    pub zeta_grid: [Grid1D; 2],
    values: Vec<Complex64>,
}

impl Field4D {
    pub fn from_fn<F>(z_grid: [Grid1D; 2], zeta_grid: [Grid1D; 2], f: F) -> Self
    where
        F: Fn([f64; 2], [f64; 2]) -> Complex64,
    {
        let dims = [
            z_grid[0].n_samples(),
            z_grid[1].n_samples(),
            zeta_grid[0].n_samples(),
            zeta_grid[1].n_samples(),
        ];
        let mut values = Vec::with_capacity(dims.iter().product());
        for i0 in 0..dims[0] {
            for i1 in 0..dims[1] {
                let z = [z_grid[0].point(i0), z_grid[1].point(i1)];
                for j0 in 0..dims[2] {
                    for j1 in 0..dims[3] {
                        values.push(f(z, [zeta_grid[0].point(j0), zeta_grid[1].point(j1)]));
                    }
                }
            }
        }
        Self {
            z_grid,
            zeta_grid,
            values,
        }
    }

    pub fn from_values(
        z_grid: [Grid1D; 2],
        zeta_grid: [Grid1D; 2],
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let expect = z_grid[0].n_samples()
            * z_grid[1].n_samples()
            * zeta_grid[0].n_samples()
            * zeta_grid[1].n_samples();
        if values.len() != expect {
            return Err(TfError::InvalidGrid(
                "value count does not match 4-D grid shape".into(),
            ));
        }
        Ok(Self {
            z_grid,
            zeta_grid,
            values,
        })
    }

    pub fn dims(&self) -> [usize; 4] {
        [
            self.z_grid[0].n_samples(),
            self.z_grid[1].n_samples(),
            self.zeta_grid[0].n_samples(),
            self.zeta_grid[1].n_samples(),
        ]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, idx: [usize; 4]) -> Complex64 {
        let d = self.dims();
        self.values[((idx[0] * d[1] + idx[1]) * d[2] + idx[2]) * d[3] + idx[3]]
    }

    /// Quadrature cell volume Δz1·Δz2·Δζ1·Δζ2.
    pub fn cell(&self) -> f64 {
        self.z_grid[0].step()
            * self.z_grid[1].step()
            * self.zeta_grid[0].step()
            * self.zeta_grid[1].step()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            z_grid: self.z_grid,
            zeta_grid: self.zeta_grid,
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }
}

/// Linear 4-D convolution by zero-padded FFT along each axis; the result
/// lives on per-axis doubled grids and is scaled by the quadrature cell.
pub fn convolve4d(a: &Field4D, b: &Field4D) -> Result<Field4D> {
    if a.z_grid != b.z_grid || a.zeta_grid != b.zeta_grid {
        return Err(TfError::GridMismatch);
    }
    let d = a.dims();
    let pd = [2 * d[0], 2 * d[1], 2 * d[2], 2 * d[3]];
    let total: usize = pd.iter().product();

    let pad = |f: &Field4D| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); total];
        for i0 in 0..d[0] {
            for i1 in 0..d[1] {
                for j0 in 0..d[2] {
                    for j1 in 0..d[3] {
                        out[((i0 * pd[1] + i1) * pd[2] + j0) * pd[3] + j1] =
                            f.get([i0, i1, j0, j1]);
                    }
                }
            }
        }
        out
    };

    let mut fa = pad(a);
    let mut fb = pad(b);
    fft4_in_place(&mut fa, pd, true);
    fft4_in_place(&mut fb, pd, true);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft4_in_place(&mut fa, pd, false);
    let norm = a.cell() / total as f64;
    for v in fa.iter_mut() {
        *v *= norm;
    }

    Ok(Field4D {
        z_grid: [doubled(&a.z_grid[0]), doubled(&a.z_grid[1])],
        zeta_grid: [doubled(&a.zeta_grid[0]), doubled(&a.zeta_grid[1])],
        values: fa,
    })
}

fn fft4_in_place(data: &mut [Complex64], dims: [usize; 4], forward: bool) {
    use rustfft::FftPlanner;
    let mut planner = FftPlanner::new();
    let total: usize = dims.iter().product();
    // strides for row-major layout
    let strides = [dims[1] * dims[2] * dims[3], dims[2] * dims[3], dims[3], 1];
    for axis in 0..4 {
        let n = dims[axis];
        let fft = if forward {
            planner.plan_fft_forward(n)
        } else {
            planner.plan_fft_inverse(n)
        };
        let stride = strides[axis];
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        // iterate over all lines along this axis
        let lines = total / n;
        for l in 0..lines {
            // decompose the line index into a base offset skipping `axis`
            let mut rem = l;
            let mut base = 0;
            for ax in 0..4 {
                if ax == axis {
                    continue;
                }
                let extent = dims[ax];
                let coord = rem % extent;
                rem /= extent;
                base += coord * strides[ax];
            }
            for (i, v) in line.iter_mut().enumerate() {
                *v = data[base + i * stride];
            }
            fft.process(&mut line);
            for (i, &v) in line.iter().enumerate() {
                data[base + i * stride] = v;
            }
        }
    }
}
