use serde::{Deserialize, Serialize};

/// A truncated-series value together with certified bounds on its signed
/// error: the exact quantity lies in `value + [err_lo, err_hi]`.
///
/// An infinite `err_lo` or `err_hi` means the bound is not available on that
/// side (e.g. a bound carrying a `1/λ²` factor at `λ = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub value: f64,
    pub err_lo: f64,
    pub err_hi: f64,
    pub order: usize,
}

impl Enclosure {
    pub fn new(value: f64, err_lo: f64, err_hi: f64, order: usize) -> Self {
        debug_assert!(err_lo <= err_hi, "inverted enclosure [{err_lo}, {err_hi}]");
        Enclosure {
            value,
            err_lo,
            err_hi,
            order,
        }
    }

    /// Symmetric enclosure `[−bound, +bound]`.
    pub fn symmetric(value: f64, bound: f64, order: usize) -> Self {
        Self::new(value, -bound, bound, order)
    }

    /// Enclosure with exactly zero error.
    pub fn exact(value: f64, order: usize) -> Self {
        Self::new(value, 0.0, 0.0, order)
    }

    /// Whether `truth − value` lies in the error interval.
    pub fn contains(&self, truth: f64) -> bool {
        let err = truth - self.value;
        self.err_lo <= err && err <= self.err_hi
    }

    /// Like [`contains`](Self::contains) but widened by `margin` on both sides.
    pub fn contains_with_margin(&self, truth: f64, margin: f64) -> bool {
        let err = truth - self.value;
        self.err_lo - margin <= err && err <= self.err_hi + margin
    }

    pub fn width(&self) -> f64 {
        self.err_hi - self.err_lo
    }

    pub fn is_bounded(&self) -> bool {
        self.err_lo.is_finite() && self.err_hi.is_finite()
    }

    /// Interval guaranteed to contain the exact quantity.
    pub fn bounds(&self) -> (f64, f64) {
        (self.value + self.err_lo, self.value + self.err_hi)
    }
}
