//! Certified harmonic numbers.
//!
//! Exact harmonic numbers `Hₙ`, rigorous enclosures of `ln` and of Euler's
//! constant `γ`, the closed-form approximations
//!
//! ```text
//! Hₙ ≈ ln n + γ + 1/(2n)                      (linear, error < 1/(2n) − 1/(2(n+1)))
//! Hₙ = ln n + γ + 1/(2n) − 1/(12n²) + εₙ      (quadratic, 0 < εₙ < 1/(4n³))
//! ```
//!
//! and the truncated Euler–Maclaurin expansion, all checked with rational
//! interval arithmetic: no floating point takes part in any certificate.
//!
//! ```
//! use harmonic_cert::harmonic::{gamma_enclosure, residual_epsilon};
//! use harmonic_cert::numerics::{rat, PrecisionBudget};
//!
//! let budget = PrecisionBudget::default();
//! let gamma = gamma_enclosure(10_000, budget).unwrap();
//! let eps = residual_epsilon(10, &gamma, budget).unwrap();
//! assert!(eps.strictly_inside(&rat(0, 1), &rat(1, 4000)));
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks are
//! compiled and run as doc-tests of this crate.

pub mod approx;
pub mod decimal;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod numerics;
pub mod series;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{BigRational, PrecisionBudget, RatInterval};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/logarithm.md")]
    mod logarithm {}
    #[doc = include_str!("../../../book/src/harmonic-numbers.md")]
    mod harmonic_numbers {}
    #[doc = include_str!("../../../book/src/euler-constant.md")]
    mod euler_constant {}
    #[doc = include_str!("../../../book/src/approximations.md")]
    mod approximations {}
    #[doc = include_str!("../../../book/src/trapezoid.md")]
    mod trapezoid {}
    #[doc = include_str!("../../../book/src/tail-bounds.md")]
    mod tail_bounds {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
