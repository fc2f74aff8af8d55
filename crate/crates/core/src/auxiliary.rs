//! Auxiliary expansions: a closed-form moment integral, the expansion of
//! F(λ, k) in powers of `k′²` (valid for `λ²k′² < 1 − λ²`), the reflection
//! `λ → √(1−λ²)`, and the expansion around the complete integral K(k).

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::hyper::{f_n, half_pochhammer_ratio, MAX_DEGREE};
use crate::point::{EvalPoint, Quality};
use crate::special::{complete_k, f_with_parameter};

/// Inequality under which [`radon_expansion`] is certified.
pub const RADON_REGION: &str = "1 - k^2 < (1 - lambda^2)/lambda^2";
/// Inequality under which [`kelisky_expansion`] is certified.
pub const KELISKY_REGION: &str = "(1 - k^2)/k^2 > 1 - lambda^2";

fn check_order(order: usize, min: usize) -> Result<()> {
    if order < min || order > MAX_DEGREE {
        return Err(Error::domain(format!(
            "truncation order {order} outside {min}..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

/// `∫₀^λ t^{2j} (1−t²)^{−(j+1)} dt` for `0 ≤ λ < 1`.
///
/// Uses the closed form (a logarithm plus a rational sum) for `λ² > ½`; below
/// that the two parts cancel to about `λ^{2j}` relative, so the binomial
/// power series is summed instead.
pub fn lemma1_integral(j: usize, lambda: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::domain(format!(
            "moment integral requires 0 <= lambda < 1 (lambda = {lambda})"
        )));
    }
    if lambda * lambda > 0.5 {
        return lemma1_closed_form(j, lambda);
    }
    let l2 = lambda * lambda;
    let mut term = lambda.powi(2 * j as i32 + 1);
    let mut sum = 0.0;
    for m in 0..2000 {
        let contrib = term / (2 * (j + m) + 1) as f64;
        sum += contrib;
        if contrib <= 1e-17 * sum {
            return Ok(sum);
        }
        term *= (j + m + 1) as f64 / (m + 1) as f64 * l2;
    }
    Ok(sum)
}

/// The closed form of [`lemma1_integral`], evaluated literally.
pub fn lemma1_closed_form(j: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::domain(format!(
            "closed form requires 0 < lambda < 1 (lambda = {lambda})"
        )));
    }
    let log_term = 2.0 * lambda.atanh();
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut total = sign * half_pochhammer_ratio(j) * 0.5 * log_term;
    if j > 0 {
        let r = lambda * lambda / ((1.0 - lambda) * (1.0 + lambda));
        let jf = j as f64;
        // n-th summand: (−1)^n (½−j)_n/(1−j)_n r^{j−n}.
        let mut ratio = 1.0;
        let mut sum = 0.0;
        for n in 0..j {
            let nf = n as f64;
            sum += ratio * r.powi((j - n) as i32);
            ratio *= -(0.5 - jf + nf) / (1.0 - jf + nf);
        }
        total += sum / (2.0 * jf * lambda);
    }
    Ok(total)
}

/// Expansion of F(λ, k) in powers of `k′² = 1 − k²` with `N+1` terms and a
/// symmetric remainder bound.
pub fn radon_expansion(p: EvalPoint, order: usize) -> Result<Enclosure> {
    check_order(order, 0)?;
    let lambda = p.lambda();
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::domain(format!(
            "expansion in k' requires 0 < lambda < 1 (lambda = {lambda})"
        )));
    }
    let kp2 = p.k_prime_sq();
    let a = p.lambda_comp_sq();
    let ratio = lambda * lambda * kp2 / a;
    if !(ratio < 1.0) {
        return Err(Error::Region {
            inequality: RADON_REGION,
            detail: format!("lambda^2 (1 - k^2)/(1 - lambda^2) = {ratio}"),
        });
    }
    let mut coeff = 1.0;
    let mut value = 0.0;
    for j in 0..=order {
        value += coeff * lemma1_integral(j, lambda)?;
        let jf = j as f64;
        coeff *= -(jf + 0.5) / (jf + 1.0) * kp2;
    }
    let n1 = (order + 1) as f64;
    let bound =
        lambda * half_pochhammer_ratio(order + 1) / (2.0 * n1) * ratio.powi(order as i32 + 1);
    Ok(Enclosure::symmetric(value, bound, order))
}

/// The reflection `F(λ, k) = K(k) − (1−k²)^{−1/2} F(√(1−λ²), k̃)` with
/// `k̃² = −k²/(1−k²)`, held as data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    /// Square of the reflected first argument, `1 − λ²`.
    pub lambda_sq: f64,
    /// Reflected squared modulus `−k²/(1−k²)` (negative).
    pub m: f64,
    /// `(1 − k²)^{−1/2}`.
    pub scale: f64,
    /// `K(k)`.
    pub k_term: f64,
}

impl Reflection {
    pub fn reflected_lambda(&self) -> f64 {
        self.lambda_sq.sqrt()
    }

    /// Reassembles F(λ, k) from the reflected integral.
    pub fn evaluate(&self, q: Quality) -> Result<f64> {
        Ok(self.k_term - self.scale * f_with_parameter(self.reflected_lambda(), self.m, q)?)
    }
}

pub fn reflect_f(p: EvalPoint, q: Quality) -> Result<Reflection> {
    let (lambda, k) = (p.lambda(), p.k());
    if !(lambda > 0.0 && lambda < 1.0 && k > 0.0 && k < 1.0) {
        return Err(Error::domain(format!(
            "reflection requires 0 < lambda, k < 1 (lambda = {lambda}, k = {k})"
        )));
    }
    let kp2 = p.k_prime_sq();
    Ok(Reflection {
        lambda_sq: p.lambda_comp_sq(),
        m: -k * k / kp2,
        scale: 1.0 / kp2.sqrt(),
        k_term: complete_k(k, q)?,
    })
}

/// Partial sum `Σ_{i<terms} λ^{2i+1}/(2i+1) F_i(1 − m)` of the expansion of
/// F(λ | m) around λ = 0, with `F_i` from its three-term recurrence.
pub fn kelisky_series(lambda: f64, m: f64, terms: usize) -> f64 {
    let y = 1.0 - m;
    let l2 = lambda * lambda;
    let (mut prev, mut cur) = (1.0, 1.0 - 0.5 * y);
    let mut pow = lambda;
    let mut sum = 0.0;
    for i in 0..terms {
        let fi = match i {
            0 => 1.0,
            1 => cur,
            _ => {
                let n = (i - 1) as f64;
                let next =
                    ((2.0 * n + 1.0) * (1.0 - 0.5 * y) * cur - n * (1.0 - y) * prev) / (n + 1.0);
                prev = cur;
                cur = next;
                next
            }
        };
        sum += pow * fi / (2 * i + 1) as f64;
        pow *= l2;
    }
    sum
}

/// Expansion of F(λ, k) around K(k) in powers of `1 − λ²`, with a
/// symmetric remainder bound.
pub fn kelisky_expansion(p: EvalPoint, order: usize, q: Quality) -> Result<Enclosure> {
    check_order(order, 1)?;
    let (lambda, k) = (p.lambda(), p.k());
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain(format!(
            "expansion around K(k) requires 0 < k < 1 (k = {k})"
        )));
    }
    let a = p.lambda_comp_sq();
    let b = p.k_prime_sq();
    let k2 = k * k;
    if !(b > k2 * a) {
        return Err(Error::Region {
            inequality: KELISKY_REGION,
            detail: format!("(1 - k^2)/k^2 = {}, 1 - lambda^2 = {a}", b / k2),
        });
    }
    let kk = complete_k(k, q)?;
    let x = 1.0 / b;
    let mut sum = 0.0;
    let mut pow = 1.0;
    for m in 0..order {
        sum += pow / (2 * m + 1) as f64 * f_n(m, x);
        pow *= a;
    }
    let value = kk - (a / b).sqrt() * sum;

    let nf = order as f64;
    let near_one =
        || (a * k2 / b).powi(order as i32) * (a * b).sqrt() / ((2.0 * nf + 1.0) * (b - k2 * a));
    let near_zero = || {
        if a == 0.0 {
            0.0
        } else {
            a.powi(order as i32) * (a / b).sqrt() / ((2.0 * nf + 1.0) * lambda * lambda)
        }
    };
    let bound = if k2 > 0.5 {
        near_one()
    } else if k2 < 0.5 {
        near_zero()
    } else {
        near_one().min(near_zero())
    };
    Ok(Enclosure::symmetric(value, bound, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use crate::special::reference_f;

    fn pt(l: f64, k: f64) -> EvalPoint {
        EvalPoint::new(l, k).unwrap()
    }

    fn q() -> Quality {
        Quality::default()
    }

    fn moment_by_quadrature(j: usize, lambda: f64) -> f64 {
        quad::integrate(
            |t: f64| t.powi(2 * j as i32) / (1.0 - t * t).powi(j as i32 + 1),
            0.0,
            lambda,
            1e-16,
            1e-14,
            2000,
        )
        .unwrap()
    }

    #[test]
    fn moment_integral_values() {
        assert!((lemma1_integral(0, 0.5).unwrap() - 0.5f64.atanh()).abs() < 1e-15);
        assert!((lemma1_closed_form(0, 0.5).unwrap() - 0.5f64.atanh()).abs() < 1e-15);
        let want = moment_by_quadrature(1, 0.5);
        assert!((lemma1_integral(1, 0.5).unwrap() - want).abs() < 1e-12);
        assert!((lemma1_closed_form(1, 0.5).unwrap() - want).abs() < 1e-12);
        let want = moment_by_quadrature(4, 0.9);
        assert!((lemma1_integral(4, 0.9).unwrap() - want).abs() < 1e-10 * want);
        assert!(lemma1_integral(2, 1.0).is_err());
        assert_eq!(lemma1_integral(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn series_and_closed_form_agree_where_both_are_accurate() {
        for j in 0..6 {
            for &l in &[0.6, 0.7, 0.75] {
                let s = lemma1_integral(j, l).unwrap();
                let c = lemma1_closed_form(j, l).unwrap();
                assert!((s - c).abs() < 1e-12 * s.max(1.0), "j = {j}, l = {l}");
            }
        }
    }

    #[test]
    fn moment_estimate_is_an_upper_bound() {
        for &a in &[1usize, 2, 5] {
            for i in 1..20 {
                let l = i as f64 / 20.0;
                let lhs = moment_by_quadrature(a, l);
                let rhs =
                    l.powi(2 * a as i32 + 1) / (2.0 * a as f64 * (1.0 - l * l).powi(a as i32));
                assert!(lhs <= rhs * (1.0 + 1e-12), "a = {a}, l = {l}");
            }
        }
    }

    #[test]
    fn radon_order_zero_is_atanh() {
        let e = radon_expansion(pt(0.6, 0.95), 0).unwrap();
        assert!((e.value - 0.6f64.atanh()).abs() < 1e-15);
        assert!(e.contains(reference_f(pt(0.6, 0.95), q()).unwrap()));
    }

    #[test]
    fn radon_encloses_reference() {
        let p = pt(0.6, 0.95);
        let f = reference_f(p, q()).unwrap();
        let e = radon_expansion(p, 3).unwrap();
        assert!(e.contains(f), "{e:?} vs {f}");
    }

    #[test]
    fn radon_bound_ratio() {
        let p = pt(0.6, 0.95);
        let r = 0.36 * p.k_prime_sq() / 0.64;
        for n in 0..6 {
            let b0 = radon_expansion(p, n).unwrap().err_hi;
            let b1 = radon_expansion(p, n + 1).unwrap().err_hi;
            let nf = n as f64;
            let want = r * (nf + 1.5) * (nf + 1.0) / ((nf + 2.0) * (nf + 2.0));
            assert!((b1 / b0 - want).abs() < 1e-12);
        }
    }

    #[test]
    fn radon_region_error_names_inequality() {
        match radon_expansion(pt(0.9, 0.1), 2) {
            Err(Error::Region { inequality, .. }) => assert_eq!(inequality, RADON_REGION),
            other => panic!("expected region error, got {other:?}"),
        }
        assert!(matches!(
            radon_expansion(pt(0.0, 0.5), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn radon_remainders_shrink() {
        for &(l, k) in &[(0.6, 0.95), (0.5, 0.5), (0.3, 0.1), (0.7, 0.9)] {
            let p = pt(l, k);
            let f = reference_f(p, q()).unwrap();
            let mut prev = f64::INFINITY;
            for n in 0..=8 {
                let r = (f - radon_expansion(p, n).unwrap().value).abs();
                assert!(r <= prev + 1e-15, "({l}, {k}) N = {n}");
                prev = r;
            }
        }
    }

    #[test]
    fn reflection_reassembles_f() {
        let p = pt(0.8, 0.6);
        let r = reflect_f(p, q()).unwrap();
        let f = reference_f(p, q()).unwrap();
        assert!((r.evaluate(q()).unwrap() - f).abs() < 1e-13);
        // Same through the series expansion of the reflected integral.
        let series = kelisky_series(r.reflected_lambda(), r.m, 200);
        assert!((r.k_term - r.scale * series - f).abs() < 1e-12);
        assert!((r.lambda_sq - 0.36).abs() < 1e-15);
        assert!(reflect_f(pt(1.0, 0.6), q()).is_err());
    }

    #[test]
    fn reflection_limits() {
        let r = reflect_f(pt(1.0 - 1e-9, 0.5), q()).unwrap();
        let kk = complete_k(0.5, q()).unwrap();
        assert!((r.evaluate(q()).unwrap() - kk).abs() < 1e-4);
        // Reflecting the squared first argument twice returns λ².
        let l: f64 = 0.3;
        let once = 1.0 - l * l;
        assert!((1.0 - once - l * l).abs() < 1e-16);
    }

    #[test]
    fn gauss_series_converges() {
        let f = reference_f(pt(0.5, 0.7), q()).unwrap();
        assert!((kelisky_series(0.5, 0.49, 80) - f).abs() < 1e-10);
        // Recurrence-generated F_i agree with the explicit polynomial.
        for n in 0..10 {
            let direct = f_n(n, 0.51);
            let mut partial = kelisky_series(1.0, 0.49, n + 1) - kelisky_series(1.0, 0.49, n);
            partial *= (2 * n + 1) as f64;
            assert!((partial - direct).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn kelisky_at_lambda_one_is_k() {
        let e = kelisky_expansion(pt(1.0, 0.8), 3, q()).unwrap();
        assert_eq!(e.value, complete_k(0.8, q()).unwrap());
        assert_eq!(e.width(), 0.0);
    }

    #[test]
    fn kelisky_encloses_reference() {
        let p = pt(0.95, 0.8);
        let e = kelisky_expansion(p, 4, q()).unwrap();
        assert!(e.contains(reference_f(p, q()).unwrap()));
    }

    #[test]
    fn kelisky_bound_by_hand() {
        let (l, k, n) = (0.9f64, 0.8f64, 2);
        let a = 1.0 - l * l;
        let b = 1.0 - k * k;
        let want = (a * k * k / b).powi(n) * (a * b).sqrt()
            / ((2 * n + 1) as f64 * (1.0 + k * k * l * l - 2.0 * k * k));
        let e = kelisky_expansion(pt(l, k), n as usize, q()).unwrap();
        assert!((e.err_hi - want).abs() < 1e-15 * want.max(1.0));
    }

    #[test]
    fn kelisky_region_and_domain() {
        match kelisky_expansion(pt(0.1, 0.9), 2, q()) {
            Err(Error::Region { inequality, .. }) => assert_eq!(inequality, KELISKY_REGION),
            other => panic!("expected region error, got {other:?}"),
        }
        assert!(matches!(
            kelisky_expansion(pt(0.5, 1.0), 2, q()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kelisky_expansion(pt(0.5, 0.5), 0, q()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn grid_soundness() {
        let mut checked = 0;
        for i in 1..50 {
            for j in 1..50 {
                let p = pt(i as f64 / 50.0, j as f64 / 50.0);
                let f = reference_f(p, q()).unwrap();
                let margin = 64.0 * f64::EPSILON * f.abs();
                for n in 0..=6 {
                    if let Ok(e) = radon_expansion(p, n) {
                        assert!(
                            e.contains_with_margin(f, margin),
                            "radon {p:?} N = {n}: {e:?} vs {f}"
                        );
                        checked += 1;
                    }
                    if n >= 1 {
                        if let Ok(e) = kelisky_expansion(p, n, q()) {
                            assert!(
                                e.contains_with_margin(f, margin),
                                "kelisky {p:?} N = {n}: {e:?} vs {f}"
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 10_000);
    }
}
