//! Expansion of F(λ, k) valid on the whole unit square, built from
//! `½ ln((1+λ)/(1−λ))` and the coefficient functions
//!
//! ```text
//! s_n(x) = Σ_{j≥n+1} (½)_j (½−j)_n / (j! · j · (1−j)_n) · (−x)^j,
//! ```
//!
//! which are elementary: `s_0, s_1, s_2` have closed forms and the rest follow
//! from a four-term inhomogeneous recurrence. The truncation remainder is
//! negative and enclosed from both sides.

use std::f64::consts::PI;

use crate::dd::Dd;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::hyper::MAX_DEGREE;
use crate::point::{EvalPoint, Quality};
use crate::special::complete_k;

/// Below this argument the forward recurrence loses accuracy (s_n is then
/// the minimal solution) and the convergent series is used instead.
pub const SERIES_CUTOFF: f64 = 0.5;

const SERIES_MAX_TERMS: usize = 100_000;

/// `[(½)_n / n!]²`.
fn c_sq(n: usize) -> f64 {
    let r = crate::hyper::half_pochhammer_ratio(n);
    r * r
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_DEGREE {
        return Err(Error::domain(format!(
            "truncation order {order} outside 1..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "s_n requires finite x >= 0 (x = {x})"
        )));
    }
    Ok(())
}

fn closed_dd(n: usize, x: Dd) -> Dd {
    let r = (Dd::ONE + x).sqrt();
    let lg = ((Dd::ONE + r) * Dd::new(0.5)).ln();
    let half = Dd::new(0.5);
    match n {
        0 => -(lg * Dd::new(2.0)),
        1 => (x * half - Dd::ONE) * lg - r * half + half + x * half,
        2 => {
            let x2 = x * x;
            let c_lg = Dd::new(-9.0 / 32.0) * x2 + x * Dd::new(0.25) - Dd::new(0.75);
            let c_r = Dd::new(9.0 / 32.0) * x - Dd::new(7.0 / 16.0);
            c_lg * lg + c_r * r + Dd::new(7.0 / 16.0) + x * Dd::new(0.125)
                - Dd::new(21.0 / 64.0) * x2
        }
        _ => unreachable!("closed forms exist for n <= 2"),
    }
}

/// Closed forms of `s_0`, `s_1`, `s_2`.
pub fn s_closed(n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    if n > 2 {
        return Err(Error::domain(format!("no closed form for s_{n}")));
    }
    Ok(closed_dd(n, Dd::new(x)).to_f64())
}

/// Direct summation of the defining series with at most `terms` terms,
/// stopping early once terms drop below the working precision.
pub fn s_n_series(n: usize, x: f64, terms: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!(
            "series for s_n requires 0 <= x < 1 (x = {x})"
        )));
    }
    let nf = n as f64;
    let mut t = 2.0 * c_sq(n + 1) * (-x).powi(n as i32 + 1);
    let mut sum = 0.0;
    for m in 0..terms {
        sum += t;
        if t.abs() <= 1e-18 * sum.abs() {
            break;
        }
        let mf = m as f64;
        let num = (mf + 1.0) * (nf + 1.5 + mf) * (nf + 1.5 + mf);
        let den = (mf + 1.5) * (nf + 2.0 + mf) * (nf + 2.0 + mf);
        t *= -x * num / den;
    }
    Ok(sum)
}

/// Extends `values` (holding at least `s_0, s_1, s_2`) by the four-term
/// recurrence in double-double arithmetic up to index `n`.
fn extend_recurrence(x: Dd, values: &mut Vec<Dd>, n: usize) {
    while values.len() <= n {
        let m = values.len() - 3;
        let mf = m as f64;
        // [(3/2)_m]² (−x)^{m+2} / [(m+2)!]²
        let mut p = x * x * Dd::new(0.25);
        for i in 0..m {
            let r = (1.5 + i as f64) / (i as f64 + 3.0);
            p = -(p * Dd::new(r * r) * x);
        }
        let a = Dd::new(8.0 * mf * mf + 36.0 * mf + 42.0) - x * Dd::new((2.0 * mf + 5.0).powi(2));
        let b = x * Dd::new(2.0 * (4.0 * mf * mf + 14.0 * mf + 13.0))
            - Dd::new((2.0 * mf + 3.0).powi(2));
        let c = -(x * Dd::new(4.0 * (mf + 1.0).powi(2)));
        let h_num = x * Dd::new((2.0 * mf + 5.0) * (2.0 * mf + 3.0).powi(2))
            + Dd::new((mf + 3.0) * (8.0 * mf * mf + 24.0 * mf + 17.0));
        let h = h_num * p / Dd::new(8.0 * (mf + 3.0));
        let rhs = a * values[m + 2] + b * values[m + 1] + c * values[m] + h;
        values.push(rhs / Dd::new(4.0 * (mf + 3.0).powi(2)));
    }
}

/// `s_n(x)` by the closed-form seeds and the forward recurrence, in
/// double-double arithmetic, for any `x ≥ 0`.
pub fn s_n_recurrence(n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    let xd = Dd::new(x);
    let mut v: Vec<Dd> = (0..3).map(|i| closed_dd(i, xd)).collect();
    extend_recurrence(xd, &mut v, n);
    Ok(v[n].to_f64())
}

/// Which evaluation path an [`SnCache`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnPath {
    Series,
    Recurrence,
}

/// Memoized `s_n(x)` for one argument `x`.
#[derive(Debug, Clone)]
pub struct SnCache {
    x: f64,
    path: SnPath,
    values: Vec<f64>,
    exact: Vec<Dd>,
}

impl SnCache {
    pub fn new(x: f64) -> Result<Self> {
        check_x(x)?;
        let path = if x < SERIES_CUTOFF {
            SnPath::Series
        } else {
            SnPath::Recurrence
        };
        let exact = match path {
            SnPath::Series => Vec::new(),
            SnPath::Recurrence => (0..3).map(|i| closed_dd(i, Dd::new(x))).collect(),
        };
        Ok(SnCache {
            x,
            path,
            values: Vec::new(),
            exact,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn path(&self) -> SnPath {
        self.path
    }

    /// Values computed so far, `values()[n] = s_n(x)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&mut self, n: usize) -> f64 {
        while self.values.len() <= n {
            let i = self.values.len();
            let v = match self.path {
                SnPath::Series => s_n_series(i, self.x, SERIES_MAX_TERMS)
                    .expect("series path is only chosen for x < 1"),
                SnPath::Recurrence => {
                    extend_recurrence(Dd::new(self.x), &mut self.exact, i);
                    self.exact[i].to_f64()
                }
            };
            self.values.push(v);
        }
        self.values[n]
    }
}

/// Argument `λ²(1−k²)/(1−λ²)` of the coefficient functions at `p`.
pub fn coefficient_argument(p: EvalPoint) -> f64 {
    let l = p.lambda();
    l * l * p.k_prime_sq() / p.lambda_comp_sq()
}

fn check_open_lambda(p: EvalPoint) -> Result<()> {
    let l = p.lambda();
    if !(l > 0.0 && l < 1.0) {
        return Err(Error::domain(format!(
            "requires 0 < lambda < 1 (lambda = {l})"
        )));
    }
    Ok(())
}

/// Truncated expansion of order `N` with its two-sided remainder enclosure.
pub fn expansion_one(p: EvalPoint, order: usize) -> Result<Enclosure> {
    check_order(order)?;
    if p.lambda() == 0.0 {
        return Ok(Enclosure::exact(0.0, order));
    }
    check_open_lambda(p)?;
    let mut cache = SnCache::new(coefficient_argument(p))?;
    expansion_one_with(p, order, &mut cache)
}

/// As [`expansion_one`], reusing a cache built for `coefficient_argument(p)`.
pub fn expansion_one_with(p: EvalPoint, order: usize, cache: &mut SnCache) -> Result<Enclosure> {
    check_order(order)?;
    if p.lambda() == 0.0 {
        return Ok(Enclosure::exact(0.0, order));
    }
    check_open_lambda(p)?;
    let lambda = p.lambda();
    let kp2 = p.k_prime_sq();
    let a = p.lambda_comp_sq();
    let half_log = lambda.atanh();

    let mut log_factor = 0.0;
    let mut pow = 1.0;
    for j in 0..=order {
        log_factor += c_sq(j) * pow;
        pow *= kp2;
    }
    let mut tail = 0.0;
    let ratio = -a / (lambda * lambda);
    let mut pow = 1.0;
    for n in 0..order {
        tail += pow * cache.get(n);
        pow *= ratio;
    }
    let value = half_log * log_factor + tail / (2.0 * lambda);

    if kp2 == 0.0 {
        return Ok(Enclosure::exact(value, order));
    }
    let pre = prefactor(order, kp2);
    let upper = pre * f_bound(order, p)?;
    let lower = pre * f_bound(order + 1, p)?;
    Ok(Enclosure::new(value, -upper, -lower, order))
}

/// `[(½)_{N+1}]² k′^{2N} / (2 [(N+1)!]²)`.
fn prefactor(order: usize, kp2: f64) -> f64 {
    0.5 * c_sq(order + 1) * kp2.powi(order as i32)
}

/// The positive function `g(α, λ, k)` appearing in the remainder bound.
pub fn g_closed(alpha: f64, p: EvalPoint) -> Result<f64> {
    check_open_lambda(p)?;
    let kp2 = p.k_prime_sq();
    if kp2 == 0.0 {
        return Ok(0.0);
    }
    let l = p.lambda();
    let a = p.lambda_comp_sq();
    let r = (1.0 + a / (alpha * l * l * kp2)).sqrt();
    let log_ratio = 2.0 * (1.0 / r).atanh();
    let big_l = 2.0 * l.atanh();
    Ok((log_ratio / (alpha * l * r) - kp2 * big_l) / (1.0 - alpha * kp2))
}

/// `f_N(λ, k) = g((N+½)²/(N+1)², λ, k)`; zero at `k = 1`.
pub fn f_bound(order: usize, p: EvalPoint) -> Result<f64> {
    let n = order as f64;
    g_closed(((n + 0.5) / (n + 1.0)).powi(2), p)
}

/// Width `Δ_N` of the remainder enclosure of [`expansion_one`].
pub fn delta_n(order: usize, p: EvalPoint) -> Result<f64> {
    check_order(order)?;
    let pre = prefactor(order, p.k_prime_sq());
    Ok(pre * (f_bound(order, p)? - f_bound(order + 1, p)?))
}

/// Cruder elementary bound: `0 ≤ −R_N ≤ simple_bound(N, p)`.
pub fn simple_bound(order: usize, p: EvalPoint) -> Result<f64> {
    check_order(order)?;
    check_open_lambda(p)?;
    let l = p.lambda();
    let kp2 = p.k_prime_sq();
    Ok(c_sq(order + 1) * kp2.powi(order as i32 + 1) * (l / p.lambda_comp_sq() - l.atanh()))
}

/// Closed forms of the first- and second-order approximations.
pub fn approx_f1_f2(p: EvalPoint) -> Result<(f64, f64)> {
    check_open_lambda(p)?;
    let l = p.lambda();
    let kp2 = p.k_prime_sq();
    let a = p.lambda_comp_sq();
    let m = (1.0 - p.k() * l) * (1.0 + p.k() * l);
    let big_l = 2.0 * l.atanh();
    // ln(2/(1+√(m/a))) with √(m/a) − 1 formed without cancellation.
    let root = (m / a).sqrt();
    let delta = (l * l * kp2 / a) / (1.0 + root);
    let log2 = -(0.5 * delta).ln_1p();
    let f1 = 0.5 * big_l + log2 / l + kp2 / 8.0 * big_l;
    let f2 = f1 + (kp2 / (4.0 * l) - a / (2.0 * l * l * l)) * log2
        - kp2 * m.sqrt() / (4.0 * l * a.sqrt() + 4.0 * l * m.sqrt())
        + 9.0 / 128.0 * kp2 * kp2 * big_l;
    Ok((f1, f2))
}

/// `₃F₂(1, N+3/2, N+3/2; N+2, N+2; −x)` for `x ≥ 0`.
///
/// Summed directly for `x < ½`; otherwise recovered from the tail of
/// `₂F₁(½, ½; 1; −x) = (2/π) K(√(x/(1+x))) / √(1+x)`.
pub fn hyp3f2_tail(order: usize, x: f64, q: Quality) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("requires finite x >= 0 (x = {x})")));
    }
    let nf = order as f64;
    if x < 0.5 {
        let mut t: f64 = 1.0;
        let mut sum: f64 = 0.0;
        for m in 0..SERIES_MAX_TERMS {
            sum += t;
            if t.abs() <= 1e-18 * sum.abs() {
                break;
            }
            let mf = m as f64;
            t *= -x * ((nf + 1.5 + mf) / (nf + 2.0 + mf)).powi(2);
        }
        return Ok(sum);
    }
    let full = 2.0 / PI * complete_k((x / (1.0 + x)).sqrt(), q)? / (1.0 + x).sqrt();
    let mut head = 0.0;
    let mut pow = 1.0;
    for j in 0..=order {
        head += c_sq(j) * pow;
        pow *= -x;
    }
    Ok((full - head) / (c_sq(order + 1) * pow))
}

/// Conjectured bracket `[1/(1+βx), 1/(1+αx)]` for [`hyp3f2_tail`], with
/// `α = ((N+½)/(N+1))²`, `β = ((N+3/2)/(N+2))²`.
pub fn hyp3f2_sandwich(order: usize, x: f64) -> (f64, f64) {
    let nf = order as f64;
    let alpha = ((nf + 0.5) / (nf + 1.0)).powi(2);
    let beta = ((nf + 1.5) / (nf + 2.0)).powi(2);
    (1.0 / (1.0 + beta * x), 1.0 / (1.0 + alpha * x))
}
