//! Submultiplicative weight functions on the time-frequency plane.

use crate::error::{Result, TfError};

/// Weight function on ℝ². All kinds are continuous, even, submultiplicative
/// and normalized to `v(0) = 1`:
///
/// * `Constant` — identically 1;
/// * `RadialPoly { s }` — `(1 + |z|)^s`;
/// * `SeparablePoly { s1, s2 }` — `(1 + |z₁|)^{s1} (1 + |z₂|)^{s2}`;
/// * `Exponential { a }` — `e^{a|z|}` (capped at `a ≤ 1` so weighted
///   integrands still decay on the default window).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    Constant,
    RadialPoly { s: f64 },
    SeparablePoly { s1: f64, s2: f64 },
    Exponential { a: f64 },
}

impl Weight {
    pub fn constant() -> Self {
        Weight::Constant
    }

    pub fn radial_poly(s: f64) -> Result<Self> {
        if s < 0.0 || !s.is_finite() {
            return Err(TfError::InvalidWeight(format!("radial order s = {s}")));
        }
        Ok(Weight::RadialPoly { s })
    }

    pub fn separable_poly(s1: f64, s2: f64) -> Result<Self> {
        if s1 < 0.0 || s2 < 0.0 || !s1.is_finite() || !s2.is_finite() {
            return Err(TfError::InvalidWeight(format!(
                "separable orders ({s1}, {s2})"
            )));
        }
        Ok(Weight::SeparablePoly { s1, s2 })
    }

    pub fn exponential(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(TfError::InvalidWeight(format!(
                "exponential rate a = {a} outside [0, 1]"
            )));
        }
        Ok(Weight::Exponential { a })
    }

    pub fn eval2(&self, z: [f64; 2]) -> f64 {
        match *self {
            Weight::Constant => 1.0,
            Weight::RadialPoly { s } => (1.0 + (z[0] * z[0] + z[1] * z[1]).sqrt()).powf(s),
            Weight::SeparablePoly { s1, s2 } => {
                (1.0 + z[0].abs()).powf(s1) * (1.0 + z[1].abs()).powf(s2)
            }
            Weight::Exponential { a } => (a * (z[0] * z[0] + z[1] * z[1]).sqrt()).exp(),
        }
    }

    /// Restriction to one variable (second coordinate zero).
    pub fn eval1(&self, t: f64) -> f64 {
        self.eval2([t, 0.0])
    }

    /// The rotated weight `v_J(ζ) = v(Jζ) = v(ζ₂, -ζ₁)`. The implemented
    /// family is closed under this rotation: radial and exponential kinds are
    /// invariant, separable orders swap.
    pub fn compose_with_j(&self) -> Weight {
        match *self {
            Weight::SeparablePoly { s1, s2 } => Weight::SeparablePoly { s1: s2, s2: s1 },
            w => w,
        }
    }
}

/// Anything that evaluates as a weight on the phase plane. Lets the norm
/// machinery take either a plain [`Weight`] or a derived expression such as
/// its reciprocal `1/v` (which is v-moderate, not submultiplicative, and so
/// is not a `Weight` kind itself).
pub trait PhaseWeight {
    fn eval2(&self, z: [f64; 2]) -> f64;

    fn eval1(&self, t: f64) -> f64 {
        self.eval2([t, 0.0])
    }
}

impl PhaseWeight for Weight {
    fn eval2(&self, z: [f64; 2]) -> f64 {
        Weight::eval2(self, z)
    }
}

/// A weight or its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightExpr {
    base: Weight,
    reciprocal: bool,
}

impl WeightExpr {
    pub fn plain(base: Weight) -> Self {
        Self {
            base,
            reciprocal: false,
        }
    }

    pub fn reciprocal_of(base: Weight) -> Self {
        Self {
            base,
            reciprocal: true,
        }
    }

    pub fn compose_with_j(&self) -> Self {
        Self {
            base: self.base.compose_with_j(),
            reciprocal: self.reciprocal,
        }
    }
}

impl PhaseWeight for WeightExpr {
    fn eval2(&self, z: [f64; 2]) -> f64 {
        let v = self.base.eval2(z);
        if self.reciprocal {
            1.0 / v
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn radial_poly_example() {
        let v = Weight::radial_poly(2.0).unwrap();
        assert!((v.eval2([1.0, 0.0]) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn constant_everywhere_one() {
        let v = Weight::constant();
        for z in [[0.0, 0.0], [3.0, -7.0], [100.0, 0.5]] {
            assert_eq!(v.eval2(z), 1.0);
        }
    }

    #[test]
    fn exponential_eventually_dominates_polynomial() {
        // e^{|z|} vs (1+|z|)^3 along the ray z = (t, 0)
        let e = Weight::exponential(1.0).unwrap();
        let p = Weight::radial_poly(3.0).unwrap();
        // last point on the scanned ray where the polynomial still wins
        let mut last_fail = None;
        for i in 0..400 {
            let t = i as f64 * 0.1;
            if e.eval1(t) < p.eval1(t) {
                last_fail = Some(t);
            }
        }
        let r = last_fail.expect("polynomial should win near t = 1") + 0.1;
        assert!(r < 20.0, "crossover unexpectedly far out: {r}");
        for i in 0..100 {
            let t = r + i as f64 * 0.25;
            assert!(e.eval1(t) >= p.eval1(t), "domination fails at t = {t}");
        }
    }

    #[test]
    fn compose_with_j_radial_invariant() {
        let v = Weight::radial_poly(1.5).unwrap();
        let vj = v.compose_with_j();
        for z in [[0.3, -0.7], [2.0, 1.0]] {
            assert!((v.eval2(z) - vj.eval2(z)).abs() < 1e-15);
        }
    }

    #[test]
    fn compose_with_j_separable_example() {
        let v = Weight::separable_poly(1.0, 2.0).unwrap();
        let vj = v.compose_with_j();
        // v_J(3,5) = v(5,-3) = (1+5)^1 (1+3)^2 = 96
        assert!((vj.eval2([3.0, 5.0]) - 96.0).abs() < 1e-12);
    }

    #[test]
    fn double_rotation_is_identity() {
        // v_J ∘ J = v ∘ (-I) = v by evenness
        let v = Weight::separable_poly(0.5, 2.5).unwrap();
        let vjj = v.compose_with_j().compose_with_j();
        for z in [[1.0, 2.0], [-0.4, 0.9]] {
            assert!((vjj.eval2(z) - v.eval2(z)).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_and_even() {
        for v in [
            Weight::constant(),
            Weight::radial_poly(2.0).unwrap(),
            Weight::separable_poly(1.0, 3.0).unwrap(),
            Weight::exponential(0.5).unwrap(),
        ] {
            assert!((v.eval2([0.0, 0.0]) - 1.0).abs() < 1e-15);
            for z in [[1.3, -0.2], [0.0, 4.0]] {
                assert!((v.eval2(z) - v.eval2([-z[0], -z[1]])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Weight::radial_poly(-1.0).is_err());
        assert!(Weight::exponential(2.0).is_err());
        assert!(Weight::separable_poly(1.0, f64::NAN).is_err());
    }

    fn all_kinds() -> Vec<Weight> {
        vec![
            Weight::constant(),
            Weight::radial_poly(1.0).unwrap(),
            Weight::radial_poly(2.0).unwrap(),
            Weight::separable_poly(1.0, 2.0).unwrap(),
            Weight::exponential(0.7).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn submultiplicative(
            z1 in -20.0f64..20.0, z2 in -20.0f64..20.0,
            w1 in -20.0f64..20.0, w2 in -20.0f64..20.0,
        ) {
            for v in all_kinds() {
                let lhs = v.eval2([z1 + w1, z2 + w2]);
                let rhs = v.eval2([z1, z2]) * v.eval2([w1, w2]);
                prop_assert!(lhs <= rhs * (1.0 + 1e-12),
                    "{v:?}: v(z+w)={lhs} > v(z)v(w)={rhs}");
            }
        }

        #[test]
        fn reciprocal_is_v_moderate(
            x1 in -20.0f64..20.0, x2 in -20.0f64..20.0,
            y1 in -20.0f64..20.0, y2 in -20.0f64..20.0,
        ) {
            // 1/v(x+y) <= v(y) * (1/v(x))
            for v in all_kinds() {
                let lhs = 1.0 / v.eval2([x1 + y1, x2 + y2]);
                let rhs = v.eval2([y1, y2]) / v.eval2([x1, x2]);
                prop_assert!(lhs <= rhs * (1.0 + 1e-12));
            }
        }
    }
}
