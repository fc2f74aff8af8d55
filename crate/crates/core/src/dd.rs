//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! carrying roughly 106 bits of significand.
//!
//! Only the operations the coefficient recurrences need are provided:
//! the four field operations, square root and natural logarithm.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// ln 2 to double-double precision.
const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // One Newton step on the f64 root doubles the precision.
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let resid = ((self.hi - p) - e + self.lo) / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, resid);
        Dd { hi, lo }
    }

    /// Natural logarithm for positive arguments.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "Dd::ln of non-positive value");
        // Reduce to m in [1/√2, √2): ln x = e ln 2 + 2 atanh((m-1)/(m+1)).
        let mut e = self.hi.log2().round() as i32;
        let mut m = self.scale_pow2(-e);
        if m.hi >= std::f64::consts::SQRT_2 {
            m = m.scale_pow2(-1);
            e += 1;
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale_pow2(1);
            e -= 1;
        }
        let z = (m - Dd::ONE) / (m + Dd::ONE);
        let z2 = z * z;
        let mut pow = z;
        let mut sum = z;
        for j in 1..60 {
            pow = pow * z2;
            let term = pow / Dd::new((2 * j + 1) as f64);
            sum = sum + term;
            if term.hi.abs() <= 1e-34 * sum.hi.abs() {
                break;
            }
        }
        LN2 * Dd::new(e as f64) + sum * Dd::new(2.0)
    }

    #[inline]
    fn scale_pow2(self, e: i32) -> Dd {
        let f = 2f64.powi(e);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}
