//! Reference values for the complete and incomplete elliptic integrals of
//! the first kind.
//!
//! The incomplete integral is evaluated through Carlson's symmetric form,
//! `F(λ, k) = λ R_F(1 − λ², 1 − k²λ², 1)`, which stays well conditioned as
//! `kλ → 1`. A trigonometric-substitution quadrature is kept alongside as an
//! independent cross-check.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::point::{EvalPoint, Quality};
use crate::quad;

/// Complete elliptic integral of the first kind K(k) by the arithmetic–geometric mean.
pub fn complete_k(k: f64, q: Quality) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::domain(format!(
            "complete K requires 0 <= k < 1 (k = {k}); K diverges at k = 1"
        )));
    }
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let mut a = 1.0;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    for _ in 0..q.max_iter() {
        if (a - b).abs() <= q.abs_tol() * a {
            return Ok(PI / (a + b));
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Err(Error::Convergence {
        what: "arithmetic-geometric mean",
        iterations: q.max_iter(),
    })
}

/// Carlson's symmetric integral R_F(x, y, z) by the duplication theorem.
pub fn carlson_rf(x: f64, y: f64, z: f64, q: Quality) -> Result<f64> {
    if [x, y, z].iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain(format!(
            "R_F arguments must be finite and non-negative (got {x}, {y}, {z})"
        )));
    }
    if [x, y, z].iter().filter(|v| **v == 0.0).count() > 1 {
        return Err(Error::domain("R_F is infinite when two arguments vanish"));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    let mut mean = (x + y + z) / 3.0;
    for _ in 0..q.max_iter() {
        let spread = (mean - x).abs().max((mean - y).abs()).max((mean - z).abs());
        if spread <= q.abs_tol() * mean {
            let dx = 1.0 - x / mean;
            let dy = 1.0 - y / mean;
            let dz = -(dx + dy);
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
            return Ok(series / mean.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mean = 0.25 * (mean + lam);
    }
    Err(Error::Convergence {
        what: "R_F duplication",
        iterations: q.max_iter(),
    })
}

/// F(λ, k) on the closed unit square, excluding the corner λ = k = 1.
pub fn reference_f(p: EvalPoint, q: Quality) -> Result<f64> {
    let (lambda, k) = (p.lambda(), p.k());
    if p.is_singular() {
        return Err(Error::domain(
            "F(lambda, k) has a logarithmic singularity at lambda = k = 1",
        ));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    if k == 0.0 {
        return Ok(lambda.asin());
    }
    if k == 1.0 {
        return Ok(lambda.atanh());
    }
    if lambda == 1.0 {
        return complete_k(k, q);
    }
    let y = (1.0 - k * lambda) * (1.0 + k * lambda);
    Ok(lambda * carlson_rf(p.lambda_comp_sq(), y, 1.0, q)?)
}

/// F(λ | m) for a real parameter `m = k²`, which may be negative.
///
/// Needed for the reflected integral `F(√(1−λ²), k̃)` whose squared
/// modulus `−k²/(1−k²)` is negative.
pub fn f_with_parameter(lambda: f64, m: f64, q: Quality) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::domain(format!("lambda = {lambda} outside [0, 1]")));
    }
    let y = 1.0 - m * lambda * lambda;
    if !(y > 0.0) || (lambda == 1.0 && m >= 1.0) {
        return Err(Error::domain(format!(
            "F(lambda | m) requires m * lambda^2 < 1 (lambda = {lambda}, m = {m})"
        )));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let x = (1.0 - lambda) * (1.0 + lambda);
    Ok(lambda * carlson_rf(x, y, 1.0, q)?)
}

/// F(λ, k) as `∫₀^{asin λ} dθ / √(1 − k² sin²θ)` by adaptive quadrature.
///
/// Independent of the R_F path; used to cross-check [`reference_f`].
pub fn reference_f_quadrature(p: EvalPoint, q: Quality) -> Result<f64> {
    if p.is_singular() {
        return Err(Error::domain(
            "F(lambda, k) has a logarithmic singularity at lambda = k = 1",
        ));
    }
    let k2 = p.k() * p.k();
    let upper = p.lambda().asin();
    quad::integrate(
        |theta| {
            let s = theta.sin();
            1.0 / (1.0 - k2 * s * s).sqrt()
        },
        0.0,
        upper,
        0.1 * q.abs_tol(),
        0.0,
        20_000,
    )
}
