//! Logarithmic approximations of F(λ, k) near the
//! singular corner, with their relative or absolute error brackets.
//!
//! The brackets are asymptotic statements for λ, k → 1, not global bounds.

use std::f64::consts::{FRAC_2_PI, LN_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{EvalPoint, Quality};
use crate::special::complete_k;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorKind {
    /// `F = value + θ F` with `θ ∈ [bracket_lo, bracket_hi]`.
    Relative,
    /// `F = value + sign · δ` with `δ ∈ [bracket_lo, bracket_hi]`.
    Absolute { sign: i8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CgResult {
    pub value: f64,
    pub kind: ErrorKind,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
}

impl CgResult {
    /// The error parameter (θ or δ) realized by the exact value `truth`.
    pub fn realized(&self, truth: f64) -> f64 {
        match self.kind {
            ErrorKind::Relative => (truth - self.value) / truth,
            ErrorKind::Absolute { sign } => f64::from(sign) * (truth - self.value),
        }
    }

    pub fn bracket_contains(&self, truth: f64) -> bool {
        let r = self.realized(truth);
        self.bracket_lo <= r && r <= self.bracket_hi
    }

    pub fn bracket_width(&self) -> f64 {
        self.bracket_hi - self.bracket_lo
    }
}

/// Shared pieces: `ln(4/(√(1−λ²)+√(1−k²λ²)))` and `m = 1 − k²λ²`.
fn common(p: EvalPoint) -> Result<(f64, f64)> {
    let (l, k) = (p.lambda(), p.k());
    if !(l > 0.0 && k > 0.0) {
        return Err(Error::domain(format!(
            "logarithmic approximations require lambda, k > 0 (lambda = {l}, k = {k})"
        )));
    }
    let m = (1.0 - k * l) * (1.0 + k * l);
    if !(m > 0.0) {
        return Err(Error::domain(
            "logarithmic approximations require k * lambda < 1",
        ));
    }
    let lg = (4.0 / (p.lambda_comp_sq().sqrt() + m.sqrt())).ln();
    Ok((lg, m))
}

/// First-order approximation `λ ln(4/(√(1−λ²)+√(1−k²λ²)))`.
pub fn cg1(p: EvalPoint) -> Result<CgResult> {
    let (lg, m) = common(p)?;
    let l2 = p.lambda() * p.lambda();
    let c = 2.0 - l2 * (1.0 + p.k() * p.k());
    Ok(CgResult {
        value: p.lambda() * lg,
        kind: ErrorKind::Relative,
        bracket_lo: c * m.ln() / (4.0 * (m / 16.0).ln()),
        bracket_hi: c / 4.0,
    })
}

/// Second-order approximation.
pub fn cg2(p: EvalPoint) -> Result<CgResult> {
    let (lg, m) = common(p)?;
    let l = p.lambda();
    let s = l * l * (1.0 + p.k() * p.k());
    let radical = (p.lambda_comp_sq() * m).sqrt();
    Ok(CgResult {
        value: l / 4.0 * ((6.0 - s) * lg - 2.0 + s + radical),
        kind: ErrorKind::Relative,
        bracket_lo: 9.0 * m * m * m.ln() / (64.0 * (m / 16.0).ln()),
        bracket_hi: 3.0 * m * m / 8.0,
    })
}

/// The two approximations carrying `K(k′)`, with absolute-error brackets:
/// `F = v₃ − δ₁` and `F = v₄ + δ₂`.
pub fn cg3_cg4(p: EvalPoint, q: Quality) -> Result<(CgResult, CgResult)> {
    let (l, k) = (p.lambda(), p.k());
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain(format!(
            "K-bearing approximations require 0 < k < 1 (k = {k})"
        )));
    }
    let (lg, m) = common(p)?;
    let kp = p.k_prime_sq().sqrt();
    let v3 = FRAC_2_PI * complete_k(kp, q)? * lg;
    let kl2 = k * k * l * l;
    let v4 = v3 - 0.25 * (2.0 - l * l - kl2 - (p.lambda_comp_sq() * p.k_prime_sq()).sqrt());
    let third = CgResult {
        value: v3,
        kind: ErrorKind::Absolute { sign: -1 },
        bracket_lo: m / 8.0,
        bracket_hi: m * 2.0 * LN_2 / kl2,
    };
    let fourth = CgResult {
        value: v4,
        kind: ErrorKind::Absolute { sign: 1 },
        bracket_lo: 9.0 * m * m / 64.0,
        bracket_hi: 3.0 * m * m * LN_2 / (2.0 * kl2),
    };
    Ok((third, fourth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::reference_f;

    fn pt(l: f64, k: f64) -> EvalPoint {
        EvalPoint::new(l, k).unwrap()
    }

    fn reference(l: f64, k: f64) -> f64 {
        reference_f(pt(l, k), Quality::default()).unwrap()
    }

    #[test]
    fn first_order_rows() {
        let f = reference(0.8, 0.8);
        let r = cg1(pt(0.8, 0.8)).unwrap();
        assert_eq!(format!("{:.5}", r.value), "0.85814");
        assert_eq!(format!("{:.5}", r.realized(f) * f), "0.15968");
        assert_eq!(format!("{:.4}", r.bracket_width() * f), "0.2032");
        let f = reference(0.99, 0.999);
        let r = cg1(pt(0.99, 0.999)).unwrap();
        assert_eq!(format!("{:.5}", f - r.value), "0.02232");
        let r = cg1(pt(1.0, 0.6)).unwrap();
        assert!((r.value - (4.0 / 0.8f64).ln()).abs() < 1e-15);
    }

    #[test]
    fn second_order_rows() {
        let f = reference(0.9, 0.9);
        let r = cg2(pt(0.9, 0.9)).unwrap();
        assert_eq!(format!("{:.4}", r.value), "1.3291");
        assert_eq!(format!("{:.5}", f - r.value), "0.02411");
        let f = reference(0.99, 0.99);
        let r = cg2(pt(0.99, 0.99)).unwrap();
        assert_eq!(format!("{:.2e}", f - r.value), "6.47e-4");
        assert_eq!(format!("{:.5}", r.bracket_width() * f), "0.00115");
    }

    #[test]
    fn radical_is_symmetric_in_the_two_squares() {
        // √((1−u)(1−v)) with u = λ², v = k²λ² is unchanged by u ↔ v.
        let (l, k) = (0.83f64, 0.61f64);
        let (u, v) = (l * l, k * k * l * l);
        let r1 = ((1.0 - u) * (1.0 - v)).sqrt();
        let r2 = ((1.0 - v) * (1.0 - u)).sqrt();
        assert_eq!(r1, r2);
        let s = u + v;
        let lg = (4.0 / ((1.0 - u).sqrt() + (1.0 - v).sqrt())).ln();
        let direct = l / 4.0 * ((6.0 - s) * lg - 2.0 + s + r1);
        assert!((cg2(pt(l, k)).unwrap().value - direct).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(cg1(pt(1.0, 1.0)), Err(Error::Domain(_))));
        assert!(cg2(pt(0.0, 0.5)).is_err());
        assert!(cg3_cg4(pt(0.5, 1.0), Quality::default()).is_err());
        assert!(cg3_cg4(pt(0.5, 0.0), Quality::default()).is_err());
    }

    #[test]
    fn k_bearing_brackets() {
        let q = Quality::default();
        let f = reference(0.95, 0.95);
        let (c3, c4) = cg3_cg4(pt(0.95, 0.95), q).unwrap();
        assert!(c3.bracket_contains(f), "{c3:?} {}", c3.realized(f));
        assert!(c4.bracket_contains(f), "{c4:?} {}", c4.realized(f));
        let (c3, c4) = cg3_cg4(pt(0.999_999, 0.999_999), q).unwrap();
        assert!(c3.bracket_hi < 1e-5 && c4.bracket_hi < 1e-10);
        // K(√(1−k²)) at k = 0.6 is K(0.8).
        let (c3, _) = cg3_cg4(pt(0.7, 0.6), q).unwrap();
        let lg = (4.0 / ((0.51f64).sqrt() + (1.0 - 0.36f64 * 0.49).sqrt())).ln();
        let want = FRAC_2_PI * complete_k(0.8, q).unwrap() * lg;
        assert!((c3.value - want).abs() < 1e-14);
    }

    #[test]
    fn near_corner_brackets() {
        let q = Quality::default();
        let mut fourth_violations = 0;
        let mut total = 0;
        for i in 90..100 {
            for j in 90..100 {
                let (l, k) = (i as f64 / 100.0, j as f64 / 100.0);
                let f = reference(l, k);
                let p = pt(l, k);
                assert!(
                    cg1(p).unwrap().bracket_contains(f),
                    "first order at ({l}, {k})"
                );
                assert!(
                    cg2(p).unwrap().bracket_contains(f),
                    "second order at ({l}, {k})"
                );
                let (c3, c4) = cg3_cg4(p, q).unwrap();
                assert!(c3.bracket_contains(f), "third at ({l}, {k})");
                total += 1;
                if !c4.bracket_contains(f) {
                    fourth_violations += 1;
                }
            }
        }
        eprintln!("fourth-approximation bracket violated at {fourth_violations}/{total} near-corner points");
    }
}
