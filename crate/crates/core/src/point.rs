use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Location of a point of the closed unit square relative to its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Interior,
    /// λ = 0 (and the point is not on another classified edge).
    LambdaZero,
    /// λ = 1 with k < 1.
    LambdaOne,
    /// k = 0 with 0 < λ < 1.
    ModulusZero,
    /// k = 1 with λ < 1.
    ModulusOne,
    /// λ = k = 1, the logarithmic singularity.
    Singular,
}

/// An argument pair (λ, k) of F(λ, k) on the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    lambda: f64,
    k: f64,
}

impl EvalPoint {
    pub fn new(lambda: f64, k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::domain(format!("lambda = {lambda} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::domain(format!("k = {k} outside [0, 1]")));
        }
        Ok(EvalPoint { lambda, k })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }

    /// 1 − λ², formed as (1 − λ)(1 + λ).
    #[inline]
    pub fn lambda_comp_sq(&self) -> f64 {
        (1.0 - self.lambda) * (1.0 + self.lambda)
    }

    /// Squared complementary modulus k′² = 1 − k².
    #[inline]
    pub fn k_prime_sq(&self) -> f64 {
        (1.0 - self.k) * (1.0 + self.k)
    }

    pub fn is_singular(&self) -> bool {
        self.lambda == 1.0 && self.k == 1.0
    }

    pub fn region(&self) -> Region {
        match (self.lambda, self.k) {
            (1.0, 1.0) => Region::Singular,
            (0.0, _) => Region::LambdaZero,
            (1.0, _) => Region::LambdaOne,
            (_, 0.0) => Region::ModulusZero,
            (_, 1.0) => Region::ModulusOne,
            _ => Region::Interior,
        }
    }
}

/// Accuracy target for iterative and quadrature-based routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quality {
    abs_tol: f64,
    max_iter: usize,
}

impl Quality {
    pub const MIN_TOL: f64 = 4.0 * f64::EPSILON;

    pub fn new(abs_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol >= Self::MIN_TOL) || !abs_tol.is_finite() {
            return Err(Error::domain(format!(
                "abs_tol = {abs_tol} must be finite and at least {:e}",
                Self::MIN_TOL
            )));
        }
        if max_iter == 0 {
            return Err(Error::domain("max_iter must be positive"));
        }
        Ok(Quality { abs_tol, max_iter })
    }

    #[inline]
    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    #[inline]
    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for Quality {
    fn default() -> Self {
        Quality {
            abs_tol: 1e-14,
            max_iter: 64,
        }
    }
}
