//! Legendre's incomplete elliptic integral of the first kind,
//! `F(λ, k) = ∫₀^λ dt / √((1 − t²)(1 − k²t²))`, evaluated by convergent
//! expansions that carry rigorous two-sided error enclosures.
//!
//! * [`series_one::expansion_one`] — valid on the whole unit square, built
//!   around `½ ln((1+λ)/(1−λ))`.
//! * [`series_two::expansion_two`] — built around the complete integral
//!   `K(k)`, most effective as λ → 1.
//! * [`special::reference_f`] — an independent reference value via Carlson's
//!   `R_F`.

// Negated comparisons are used deliberately so that NaN arguments are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod auxiliary;
pub mod baseline;
pub mod dd;
pub mod enclosure;
pub mod error;
pub mod hyper;
pub mod point;
pub mod quad;
pub mod series_one;
pub mod series_two;
pub mod special;
pub mod tables;

pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use point::{EvalPoint, Quality, Region};
pub use series_one::expansion_one;
pub use series_two::expansion_two;
pub use special::{complete_k, reference_f};
pub use tables::{Method, TableRow};
