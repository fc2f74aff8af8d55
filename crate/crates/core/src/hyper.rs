//! Pochhammer symbols, the terminating hypergeometric polynomial
//! `F_n(x) = ₂F₁(−n, ½; 1; x)` and Legendre polynomials.

/// Largest polynomial degree accepted by [`f_n`] and [`f_n_reflection`].
///
/// The alternating sum loses roughly `n log10(1 + |x|)` digits, so accuracy
/// degrades well before this for `|x| > 1`.
pub const MAX_DEGREE: usize = 64;

/// Rising factorial `(a)_n = a (a+1) ··· (a+n−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Precomputed `(a)_0, (a)_1, …, (a)_n` for a fixed `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct PochhammerTable {
    a: f64,
    values: Vec<f64>,
}

impl PochhammerTable {
    pub fn new(a: f64, n_max: usize) -> Self {
        let mut values = Vec::with_capacity(n_max + 1);
        values.push(1.0);
        for i in 0..n_max {
            let last = values[i];
            values.push(last * (a + i as f64));
        }
        PochhammerTable { a, values }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(a)_n`, extending the table if needed.
    pub fn get(&mut self, n: usize) -> f64 {
        while self.values.len() <= n {
            let i = self.values.len() - 1;
            let next = self.values[i] * (self.a + i as f64);
            self.values.push(next);
        }
        self.values[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `(½)_n / n!`, the value of `F_n(1)` by Chu–Vandermonde.
pub fn half_pochhammer_ratio(n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (i as f64 + 0.5) / (i as f64 + 1.0))
}

/// `₂F₁(−n, ½; 1; x)` as the explicit degree-`n` polynomial.
pub fn f_n(n: usize, x: f64) -> f64 {
    assert!(n <= MAX_DEGREE, "f_n degree {n} exceeds {MAX_DEGREE}");
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - nf) * (jf + 0.5) / ((jf + 1.0) * (jf + 1.0)) * x;
        sum += term;
    }
    sum
}

/// `(½)_n/n! · ₂F₁(−n, ½; ½−n; x)`, which equals `F_n(1 − x)`.
pub fn f_n_reflection(n: usize, x: f64) -> f64 {
    assert!(n <= MAX_DEGREE, "f_n degree {n} exceeds {MAX_DEGREE}");
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - nf) * (jf + 0.5) / ((0.5 - nf + jf) * (jf + 1.0)) * x;
        sum += term;
    }
    half_pochhammer_ratio(n) * sum
}

/// `F_n(x)` by the three-term recurrence
/// `(n+1)F_{n+1} = (2n+1)(1 − x/2)F_n − n(1−x)F_{n−1}`.
///
/// Free of the cancellation in [`f_n`] for `0 ≤ x ≤ 2`, where `F_n` is the
/// dominant solution; not limited to [`MAX_DEGREE`].
pub fn f_n_recurrence(n: usize, x: f64) -> f64 {
    let c = 1.0 - 0.5 * x;
    let (mut prev, mut cur) = (1.0, c);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * c * cur - mf * (1.0 - x) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial `P_n(z)` by the three-term recurrence.
pub fn legendre_p(n: usize, z: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => z,
        _ => {
            let (mut prev, mut cur) = (1.0, z);
            for m in 1..n {
                let mf = m as f64;
                let next = ((2.0 * mf + 1.0) * z * cur - mf * prev) / (mf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|i| i as f64).product()
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert_eq!(pochhammer(0.5, 3), 15.0 / 8.0);
        for j in 1..6usize {
            for n in j..8 {
                assert_eq!(pochhammer(1.0 - j as f64, n), 0.0);
            }
        }
        let mut t = PochhammerTable::new(0.5, 2);
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(3), 15.0 / 8.0);
        assert_eq!(t.values()[0], 1.0);
    }

    proptest! {
        #[test]
        fn table_recurrence(a in -5.0f64..5.0, n in 1usize..20) {
            let t = PochhammerTable::new(a, n);
            for i in 0..n {
                prop_assert_eq!(t.values()[i + 1], t.values()[i] * (a + i as f64));
            }
        }

        #[test]
        fn f_n_satisfies_contiguous_recurrence(n in 1usize..20, x in -1.0f64..3.0) {
            // From the Legendre recurrence after scaling by (1−x)^{n/2}:
            // (n+1)F_{n+1} = (2n+1)(1 − x/2)F_n − n(1−x)F_{n−1}.
            let nf = n as f64;
            let lhs = (nf + 1.0) * f_n(n + 1, x);
            let rhs = (2.0 * nf + 1.0) * (1.0 - 0.5 * x) * f_n(n, x)
                - nf * (1.0 - x) * f_n(n - 1, x);
            let scale = 1.0 + (2.0 + x.abs()).powi(n as i32 + 1);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn f_n_special_values() {
        for n in 0..=12 {
            assert_eq!(f_n(n, 0.0), 1.0);
            let chu = half_pochhammer_ratio(n);
            assert!((f_n(n, 1.0) - chu).abs() < 1e-13);
            assert!((chu - pochhammer(0.5, n) / factorial(n)).abs() < 1e-15);
        }
        assert!(f_n(5, 2.0).abs() < 1e-14);
        assert!((f_n(4, 2.0) - 3.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn reflection_identity() {
        assert_eq!(f_n_reflection(0, 0.37), 1.0);
        assert!((f_n_reflection(3, 0.25) - f_n(3, 0.75)).abs() < 1e-15);
        assert!((f_n_reflection(6, 1.0) - f_n(6, 0.0)).abs() < 1e-13);
        for n in 0..=10 {
            for i in 0..=20 {
                let x = i as f64 / 20.0;
                assert!(
                    (f_n_reflection(n, x) - f_n(n, 1.0 - x)).abs() < 1e-12,
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for n in 0..=16 {
            for &x in &[0.0f64, 0.2, 0.7, 1.0, 1.5, 2.0] {
                // The explicit sum loses about (1+x)^n in relative accuracy.
                let tol = 1e-14 * (1.0 + x).powi(n as i32);
                assert!(
                    (f_n_recurrence(n, x) - f_n(n, x)).abs() < tol,
                    "n = {n}, x = {x}"
                );
            }
        }
        // Beyond the explicit-sum cap the value stays within its proven bounds.
        let v = f_n_recurrence(200, 0.9);
        assert!(half_pochhammer_ratio(200) <= v && v <= 1.0);
    }

    #[test]
    fn legendre_basics() {
        assert_eq!(legendre_p(0, 0.3), 1.0);
        assert_eq!(legendre_p(1, 0.3), 0.3);
        for n in 0..=10 {
            assert!((legendre_p(n, 1.0) - 1.0).abs() < 1e-14);
        }
        // P_3(z) = (5z³ − 3z)/2.
        let z = 0.41;
        assert!((legendre_p(3, z) - 0.5 * (5.0 * z * z * z - 3.0 * z)).abs() < 1e-15);
    }

    #[test]
    fn legendre_form_of_f_n() {
        let x: f64 = 0.3;
        let w = (1.0 - x).sqrt();
        let via_p = w.powi(4) * legendre_p(4, (2.0 - x) / (2.0 * w));
        assert!((via_p - f_n(4, x)).abs() < 1e-14);
    }

    #[test]
    fn laplace_integral() {
        for n in 0..=8 {
            for &x in &[0.3, 1.5, 3.0] {
                let v = quad::integrate(
                    |phi: f64| (1.0 - x * (0.5 * phi).sin().powi(2)).powi(n as i32),
                    0.0,
                    PI,
                    1e-14,
                    0.0,
                    200,
                )
                .unwrap()
                    / PI;
                assert!((v - f_n(n, x)).abs() < 1e-10, "n = {n}, x = {x}");
            }
        }
    }

    // Monotonicity and bounds on [0, 1], [1, 2] and (2, 4].
    const SLOP: f64 = 1e-13;

    #[test]
    fn bounds_on_unit_interval() {
        for n in 0..=12 {
            let low = half_pochhammer_ratio(n);
            let mut prev = f64::INFINITY;
            for i in 0..100 {
                let x = i as f64 / 99.0;
                let v = f_n(n, x);
                assert!(v <= prev + SLOP, "n = {n} not decreasing at {x}");
                assert!(low - SLOP <= v && v <= 1.0 + SLOP);
                prev = v;
            }
        }
    }

    #[test]
    fn bounds_on_one_two_odd() {
        for n in (1..=11).step_by(2) {
            let hi = half_pochhammer_ratio(n);
            let mut prev = f64::INFINITY;
            for i in 0..100 {
                let x = 1.0 + i as f64 / 99.0;
                let v = f_n(n, x);
                assert!(v <= prev + SLOP);
                assert!(-SLOP <= v && v <= hi + SLOP, "n = {n}, x = {x}: {v}");
                prev = v;
            }
        }
    }

    #[test]
    fn bounds_on_one_two_even() {
        for n in (0..=12).step_by(2) {
            let cap = factorial(n) / (2f64.powi(n as i32) * factorial(n / 2).powi(2));
            assert!(cap <= 1.0);
            for i in 0..100 {
                let x = 1.0 + i as f64 / 99.0;
                let v = f_n(n, x);
                assert!(v > 0.0 && v <= cap + SLOP, "n = {n}, x = {x}: {v}");
            }
        }
    }

    #[test]
    fn sign_and_growth_beyond_two() {
        for n in 0..=12 {
            for i in 1..=100 {
                let x = 2.0 + 2.0 * i as f64 / 100.0;
                let v = f_n(n, x);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!(v * sign > 0.0, "n = {n}, x = {x}");
                assert!(v.abs() <= (x - 1.0).powi(n as i32) * (1.0 + SLOP));
            }
        }
    }
}
