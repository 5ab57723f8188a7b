//! Finite nonnegative combinations of ridge units with an explicit affine part.

use rand::Rng as _;

use crate::design::Design;
use crate::dictionary::{random_cover_element, Activation, RidgeUnit, Sign};
use crate::error::{Error, Result};
use crate::seed::Rng;

/// `f(x) = intercept + slope·x + Σ β_h h(x)` with every `β_h ≥ 0`.
///
/// `v` caches `Σ β_h`; the affine part is not counted in it.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeModel {
    dim: usize,
    terms: Vec<(f64, RidgeUnit)>,
    intercept: f64,
    slope: Vec<f64>,
    v: f64,
}

impl RidgeModel {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
            intercept: 0.0,
            slope: vec![0.0; dim],
            v: 0.0,
        }
    }

    pub fn from_terms(dim: usize, terms: Vec<(f64, RidgeUnit)>) -> Result<Self> {
        let mut m = Self::zero(dim);
        for (b, h) in terms {
            m.push(b, h)?;
        }
        Ok(m)
    }

    pub fn with_affine(mut self, intercept: f64, slope: Vec<f64>) -> Result<Self> {
        if slope.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: slope.len(),
            });
        }
        self.intercept = intercept;
        self.slope = slope;
        Ok(self)
    }

    pub fn push(&mut self, beta: f64, unit: RidgeUnit) -> Result<()> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::input(format!("coefficient {beta} must be finite and >= 0")));
        }
        if unit.input_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: unit.input_dim(),
            });
        }
        self.terms.push((beta, unit));
        self.recompute_v();
        Ok(())
    }

    /// Multiplies every coefficient by `factor ≥ 0`; the affine part is untouched.
    pub fn scale_terms(&mut self, factor: f64) {
        debug_assert!(factor >= 0.0);
        for (b, _) in &mut self.terms {
            *b *= factor;
        }
        self.recompute_v();
    }

    /// Drops terms whose coefficient is exactly zero.
    pub fn retain_nonzero(&mut self) {
        self.terms.retain(|(b, _)| *b != 0.0);
        self.recompute_v();
    }

    /// Replaces the unit of term `i`, keeping its coefficient.
    pub fn replace_unit(&mut self, i: usize, unit: RidgeUnit) {
        self.terms[i].1 = unit;
    }

    fn recompute_v(&mut self) {
        self.v = self.terms.iter().map(|(b, _)| b).sum();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, RidgeUnit)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn slope(&self) -> &[f64] {
        &self.slope
    }

    /// `‖β‖₁`.
    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn has_affine(&self) -> bool {
        self.intercept != 0.0 || self.slope.iter().any(|s| *s != 0.0)
    }

    /// Copy with the ridge terms removed.
    pub fn affine_only(&self) -> Self {
        Self {
            terms: Vec::new(),
            v: 0.0,
            ..self.clone()
        }
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut acc = self.intercept;
        for (s, xi) in self.slope.iter().zip(x) {
            acc += s * xi;
        }
        for (b, h) in &self.terms {
            acc += b * h.value(x);
        }
        acc
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.value(x))
    }

    pub fn eval_design(&self, design: &Design) -> Result<Vec<f64>> {
        if design.d() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: design.d(),
            });
        }
        Ok(design.map_rows(|x| self.value(x)))
    }

    /// Upper bound on `sup |f|` over the cube.
    pub fn sup_bound(&self) -> f64 {
        let ridge: f64 = self
            .terms
            .iter()
            .map(|(b, h)| b * h.activation.bound_for_radius(h.l1_norm()))
            .sum();
        ridge + self.intercept.abs() + self.slope.iter().map(|s| s.abs()).sum::<f64>()
    }
}

/// Ramp model with `terms` units drawn from the sparse cover grid of the
/// lifted `dim + 1` coordinates and coefficients uniform on `[0.5, 1.5]`.
///
/// Zero parameters are redrawn so every unit is non-trivial.
pub fn random_cover_model(dim: usize, terms: usize, m_grid: usize, radius: f64, rng: &mut Rng) -> RidgeModel {
    let mut m = RidgeModel::zero(dim);
    while m.num_terms() < terms {
        let theta = random_cover_element(dim + 1, m_grid, radius, rng);
        if theta.iter().all(|t| *t == 0.0) {
            continue;
        }
        let beta = rng.gen_range(0.5..=1.5);
        let unit = RidgeUnit {
            activation: Activation::Ramp,
            theta,
            sign: Sign::Plus,
        };
        m.push(beta, unit).expect("dimension matches");
    }
    m
}

/// Mean of squared differences of two equal-length vectors.
pub fn mean_sq_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64
}
