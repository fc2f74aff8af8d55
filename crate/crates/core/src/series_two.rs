//! Expansion of F(λ, k) around the complete integral K(k) in powers of
//! `1 − λ²`, with coefficients
//!
//! ```text
//! A_n(x) = Σ_j C(n+j, j) (−1)^j (½)_j x^j / ((2(n+j)+1) j!),
//! ```
//!
//! evaluated through a smooth integral representation. The truncation
//! remainder is negative and enclosed from both sides.

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::hyper::{f_n_recurrence, half_pochhammer_ratio, legendre_p, MAX_DEGREE};
use crate::point::{EvalPoint, Quality};
use crate::quad;
use crate::special::complete_k;

const QUAD_SEGMENTS: usize = 4000;

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "A_n requires finite x >= 0 (x = {x})"
        )));
    }
    Ok(())
}

fn integrate_unit<F: Fn(f64) -> f64>(f: F, q: Quality) -> Result<f64> {
    quad::integrate(f, 0.0, 1.0, 1e-3 * q.abs_tol(), q.abs_tol(), QUAD_SEGMENTS)
}

/// `A_n(x) = ∫₀¹ s^{2n} (1+xs²)^{−1/2} F_n(xs²/(1+xs²)) ds`.
pub fn a_n_integral(n: usize, x: f64, q: Quality) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Ok(1.0 / (2 * n + 1) as f64);
    }
    integrate_unit(
        |s| {
            let t = x * s * s;
            s.powi(2 * n as i32) / (1.0 + t).sqrt() * f_n_recurrence(n, t / (1.0 + t))
        },
        q,
    )
}

/// Memoized `A_n(x)` for one argument `x`.
#[derive(Debug, Clone)]
pub struct AnCache {
    x: f64,
    values: Vec<f64>,
}

impl AnCache {
    pub fn new(x: f64) -> Result<Self> {
        check_x(x)?;
        Ok(AnCache {
            x,
            values: Vec::new(),
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `A_n(x)`; the closed form is used for `n = 0`.
    pub fn get(&mut self, n: usize, q: Quality) -> Result<f64> {
        while self.values.len() <= n {
            let i = self.values.len();
            let v = if i == 0 {
                a0_closed(self.x)
            } else {
                a_n_integral(i, self.x, q)?
            };
            self.values.push(v);
        }
        Ok(self.values[n])
    }
}

/// `A_0(x) = asinh(√x)/√x`, continuous at `x = 0`.
pub fn a0_closed(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let r = x.sqrt();
        r.asinh() / r
    }
}

/// `A_1(x) = (A_0(x) − (1−x)/√(1+x)) / (4x)`.
pub fn a1_closed(x: f64) -> f64 {
    (a0_closed(x) - (1.0 - x) / (1.0 + x).sqrt()) / (4.0 * x)
}

/// `A_n(x)`, memoized in `cache`.
pub fn a_n(cache: &mut AnCache, n: usize, q: Quality) -> Result<f64> {
    cache.get(n, q)
}

/// Direct summation of the defining series (at most `terms` terms).
pub fn a_n_series(n: usize, x: f64, terms: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!(
            "series for A_n requires 0 <= x < 1 (x = {x})"
        )));
    }
    let mut c: f64 = 1.0;
    let mut sum: f64 = 0.0;
    for j in 0..terms {
        let t = c / (2 * (n + j) + 1) as f64;
        sum += t;
        if t.abs() <= 1e-18 * sum.abs() {
            break;
        }
        let jf = j as f64;
        c *= -x * (n as f64 + jf + 1.0) * (jf + 0.5) / ((jf + 1.0) * (jf + 1.0));
    }
    Ok(sum)
}

/// `A_n(x)` from the Legendre-polynomial representation
/// `∫₀¹ s^{2n} (1+xs²)^{−(n+1)/2} P_n((2+xs²)/(2√(1+xs²))) ds`.
pub fn a_n_legendre(n: usize, x: f64, q: Quality) -> Result<f64> {
    check_x(x)?;
    integrate_unit(
        |s| {
            let t = x * s * s;
            let w = (1.0 + t).sqrt();
            s.powi(2 * n as i32) * w.powi(-(n as i32) - 1) * legendre_p(n, (2.0 + t) / (2.0 * w))
        },
        q,
    )
}

/// `√(1+y²) − asinh(y)/y`, non-negative, with its small-`y` series.
pub fn sqrt_asinh_gap(y: f64) -> f64 {
    if y >= 0.5 {
        return (1.0 + y * y).sqrt() - y.asinh() / y;
    }
    let u = y * y;
    // Coefficients of √(1+u) and asinh(√u)/√u.
    let (mut b, mut d) = (1.0, 1.0);
    let mut pow = 1.0;
    let mut sum = 0.0;
    for m in 0..60 {
        let mf = m as f64;
        b *= (0.5 - mf) / (mf + 1.0);
        d *= -(mf + 0.5) / (mf + 1.0);
        pow *= u;
        let term = (b - d / (2.0 * mf + 3.0)) * pow;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn check_modulus(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain(format!(
            "expansion around K(k) requires 0 < k < 1 (k = {k})"
        )));
    }
    Ok(())
}

/// Argument `(1−λ²)/(1−k²)` of the coefficient functions at `p`.
pub fn coefficient_argument(p: EvalPoint) -> f64 {
    p.lambda_comp_sq() / p.k_prime_sq()
}

/// Truncated expansion of order `N` with its two-sided remainder enclosure.
///
/// At `λ = 0` the lower error bound is unavailable and reported as `−∞`.
pub fn expansion_two(p: EvalPoint, order: usize, q: Quality) -> Result<Enclosure> {
    check_modulus(p.k())?;
    let mut cache = AnCache::new(coefficient_argument(p))?;
    expansion_two_with(p, order, &mut cache, q)
}

/// As [`expansion_two`], reusing a cache built for `coefficient_argument(p)`.
pub fn expansion_two_with(
    p: EvalPoint,
    order: usize,
    cache: &mut AnCache,
    q: Quality,
) -> Result<Enclosure> {
    if order == 0 || order > MAX_DEGREE {
        return Err(Error::domain(format!(
            "truncation order {order} outside 1..={MAX_DEGREE}"
        )));
    }
    check_modulus(p.k())?;
    let kk = complete_k(p.k(), q)?;
    let a = p.lambda_comp_sq();
    let x = cache.x();
    let mut sum = 0.0;
    let mut pow = 1.0;
    for n in 0..order {
        sum += pow * cache.get(n, q)?;
        pow *= a;
    }
    let value = kk - x.sqrt() * sum;
    let (upper, lower) = remainder_bounds(p, order);
    Ok(Enclosure::new(value, -upper, -lower, order))
}

/// `(U, L)` with the remainder in `[−U, −L]`.
fn remainder_bounds(p: EvalPoint, order: usize) -> (f64, f64) {
    let a = p.lambda_comp_sq();
    if a == 0.0 {
        return (0.0, 0.0);
    }
    let b = p.k_prime_sq();
    let l2 = p.lambda() * p.lambda();
    let nf = order as f64;
    let upper = if l2 == 0.0 {
        f64::INFINITY
    } else {
        a.powf(nf + 0.5) / (2.0 * l2 * nf * (a + b).sqrt())
    };
    let lower = a.powf(nf - 0.5) * half_pochhammer_ratio(order) / (2.0 * nf)
        * b.sqrt()
        * sqrt_asinh_gap((a / b).sqrt());
    (upper, lower)
}

/// Width `Δ̃_N = U − L` of the remainder enclosure of [`expansion_two`].
pub fn delta_tilde(order: usize, p: EvalPoint) -> Result<f64> {
    if order == 0 || order > MAX_DEGREE {
        return Err(Error::domain(format!(
            "truncation order {order} outside 1..={MAX_DEGREE}"
        )));
    }
    check_modulus(p.k())?;
    let (u, l) = remainder_bounds(p, order);
    Ok(u - l)
}

/// Closed forms of the first- and second-order approximations.
pub fn approx_ftilde(p: EvalPoint, q: Quality) -> Result<(f64, f64)> {
    check_modulus(p.k())?;
    let kk = complete_k(p.k(), q)?;
    let a = p.lambda_comp_sq();
    let b = p.k_prime_sq();
    let ash = (a / b).sqrt().asinh();
    let f1 = kk - ash;
    let l2 = p.lambda() * p.lambda();
    let f2 = f1 - b / 4.0 * ash + (l2 - p.k() * p.k()) / 4.0 * (a / (a + b)).sqrt();
    Ok((f1, f2))
}

/// Sums `Σ ((1−k²)t)^n (1+t)^{−n/2} P_n((2+t)/(2√(1+t)))`, which converges to
/// `√(1+t)/√((1+k²t)(1−(1−k²)t))` when `(1−k²)t < 1`.
pub fn generating_check(k: f64, t: f64) -> Result<f64> {
    let b = (1.0 - k) * (1.0 + k);
    if !(k > 0.0 && k < 1.0) || !(t >= 0.0) || !(b * t < 1.0) {
        return Err(Error::domain(format!(
            "generating series requires 0 < k < 1, t >= 0, (1 - k^2) t < 1 (k = {k}, t = {t})"
        )));
    }
    let w = (1.0 + t).sqrt();
    let z = (2.0 + t) / (2.0 * w);
    let r = b * t / w;
    let (mut p_prev, mut p_cur) = (1.0, z);
    let mut sum = 1.0;
    let mut pow = 1.0;
    for n in 1..1_000_000 {
        pow *= r;
        if n > 1 {
            let m = (n - 1) as f64;
            let next = ((2.0 * m + 1.0) * z * p_cur - m * p_prev) / (m + 1.0);
            p_prev = p_cur;
            p_cur = next;
        }
        let term = pow * p_cur;
        sum += term;
        if term <= 1e-17 * sum * (1.0 - b * t) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "generating-function series",
        iterations: 1_000_000,
    })
}
