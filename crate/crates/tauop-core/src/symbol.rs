//! Symbols of τ-pseudodifferential operators: closed-form evaluators on the
//! phase plane or sampled fields.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Result, TfError};
use crate::field::CField2D;
use crate::grid::PhaseGrid;

pub type SymbolEval = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum SymbolRepr {
    Closed(SymbolEval),
    Sampled(CField2D),
}

/// A symbol `a(x, ξ)`, either a closed-form evaluator or samples on a phase
/// grid.
#[derive(Clone)]
pub struct Symbol {
    repr: SymbolRepr,
    label: String,
}

impl std::fmt::Debug for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.repr {
            SymbolRepr::Closed(_) => "closed",
            SymbolRepr::Sampled(_) => "sampled",
        };
        write!(f, "Symbol({}, {kind})", self.label)
    }
}

impl Symbol {
    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            repr: SymbolRepr::Closed(Arc::new(f)),
            label: label.into(),
        }
    }

    pub fn from_field(label: impl Into<String>, field: CField2D) -> Self {
        Self {
            repr: SymbolRepr::Sampled(field),
            label: label.into(),
        }
    }

    /// The constant symbol `a ≡ 1` (quantizes to the identity).
    pub fn identity() -> Self {
        Self::from_fn("identity", |_, _| Complex64::new(1.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::from_fn("zero", |_, _| Complex64::new(0.0, 0.0))
    }

    /// The Gaussian symbol `Φ(x, ξ) = e^{-π(x²+ξ²)}`.
    pub fn gaussian() -> Self {
        Self::from_fn("gaussian", |x, xi| {
            Complex64::new((-PI * (x * x + xi * xi)).exp(), 0.0)
        })
    }

    /// ξ-independent Gaussian `σ(x)`; quantizes to multiplication by σ.
    pub fn multiplication_gaussian() -> Self {
        Self::from_fn("mult-gaussian", |x, _| {
            Complex64::new((-PI * x * x).exp(), 0.0)
        })
    }

    /// x-independent Gaussian `σ(ξ)`; quantizes to the Fourier multiplier σ.
    pub fn fourier_multiplier_gaussian() -> Self {
        Self::from_fn("fourier-mult-gaussian", |_, xi| {
            Complex64::new((-PI * xi * xi).exp(), 0.0)
        })
    }

    /// The endpoint-unboundedness symbol
    /// `a(x, ξ) = x^{-1/2} χ_{(0,1]}(x) e^{-πξ²}`.
    pub fn counterexample() -> Self {
        Self::from_fn("counterexample", |x, xi| {
            if x > 0.0 && x <= 1.0 {
                Complex64::new(x.powf(-0.5) * (-PI * xi * xi).exp(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn repr(&self) -> &SymbolRepr {
        &self.repr
    }

    pub fn evaluator(&self) -> Option<&SymbolEval> {
        match &self.repr {
            SymbolRepr::Closed(f) => Some(f),
            SymbolRepr::Sampled(_) => None,
        }
    }

    /// Samples on the requested phase grid. Closed forms are evaluated
    /// directly; sampled symbols must either live on the requested grid or
    /// on an integer refinement of it with the same half-widths.
    pub fn sample_on(&self, pg: &PhaseGrid) -> Result<CField2D> {
        match &self.repr {
            SymbolRepr::Closed(f) => Ok(CField2D::from_fn(*pg, |x, xi| f(x, xi))),
            SymbolRepr::Sampled(field) => {
                if field.grid() == pg {
                    return Ok(field.clone());
                }
                let fx = field.grid().x_grid;
                let fk = field.grid().xi_grid;
                if fx.half_width() == pg.x_grid.half_width()
                    && fk.half_width() == pg.xi_grid.half_width()
                    && fx.n_samples() % pg.x_grid.n_samples() == 0
                    && fk.n_samples() % pg.xi_grid.n_samples() == 0
                {
                    let factor = fx.n_samples() / pg.x_grid.n_samples();
                    if fk.n_samples() / pg.xi_grid.n_samples() == factor {
                        return field.subsample(factor);
                    }
                }
                Err(TfError::SymbolGridIncompatible)
            }
        }
    }

    /// Whether the symbol is real-valued (exactly, on the probe grid).
    pub fn is_real_on(&self, pg: &PhaseGrid) -> Result<bool> {
        let field = self.sample_on(pg)?;
        Ok(field.values().iter().all(|v| v.im == 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    #[test]
    fn counterexample_support_and_singularity() {
        let a = Symbol::counterexample();
        let f = a.evaluator().unwrap();
        assert_eq!(f(-0.5, 0.0), Complex64::new(0.0, 0.0));
        assert_eq!(f(1.5, 0.0), Complex64::new(0.0, 0.0));
        assert!((f(0.25, 0.0).re - 2.0).abs() < 1e-14);
        assert!((f(1.0, 1.0).re - (-PI).exp()).abs() < 1e-14);
    }

    #[test]
    fn sample_on_subsamples_compatible_fields() {
        let fine = PhaseGrid::natural(&Grid1D::default_grid());
        let a = Symbol::gaussian();
        let field = a.sample_on(&fine).unwrap();
        let sampled = Symbol::from_field("g", field);
        let coarse = PhaseGrid::new(Grid1D::new(8.0, 64).unwrap(), Grid1D::new(8.0, 64).unwrap());
        let got = sampled.sample_on(&coarse).unwrap();
        let expect = a.sample_on(&coarse).unwrap();
        for (x, y) in got.values().iter().zip(expect.values()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn incompatible_grid_rejected() {
        let pg = PhaseGrid::natural(&Grid1D::default_grid());
        let a = Symbol::from_field("f", CField2D::zero(pg));
        let other = PhaseGrid::new(Grid1D::new(4.0, 64).unwrap(), Grid1D::new(8.0, 64).unwrap());
        assert!(matches!(
            a.sample_on(&other),
            Err(TfError::SymbolGridIncompatible)
        ));
    }

    #[test]
    fn reality_probe() {
        let pg = PhaseGrid::natural(&Grid1D::default_grid());
        assert!(Symbol::gaussian().is_real_on(&pg).unwrap());
        let complex_sym = Symbol::from_fn("chirp", |x, xi| {
            Complex64::from_polar(1.0, 2.0 * PI * x * xi)
        });
        assert!(!complex_sym.is_real_on(&pg).unwrap());
    }
}
