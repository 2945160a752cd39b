//! Exact conditional probability on finite Riesz spaces.
//!
//! The crate models the Riesz space of rational-valued functions on a finite
//! sample space and builds, on top of it, band projections, conditional
//! expectations, the conditional-probability operator
//! `P(B₁ | B₂)(f) = [T P_{B₂} P_{B₁} f] · [T P_{B₂} f]⁻¹`, and checkers for
//! the law of total probability, Bayes' theorem and the inclusion-exclusion
//! formula for band projections. All arithmetic is exact, so every identity
//! is checked by equality.
//!
//! ```
//! use riesz_prob::{Band, BandPartition, CondExpectation, Element, FiniteSampleSpace};
//! use riesz_prob::theorems::check_ltp;
//!
//! let space = FiniteSampleSpace::uniform(["1", "2", "3", "4"]).unwrap();
//! let t = CondExpectation::expectation(&space);
//! let parts = BandPartition::new(vec![
//!     Band::from_labels(&space, ["1", "2"]).unwrap(),
//!     Band::from_labels(&space, ["3", "4"]).unwrap(),
//! ])
//! .unwrap();
//! let d = Band::from_labels(&space, ["2", "3"]).unwrap();
//! let report = check_ltp(&t, &parts, &d, &Element::unit(&space)).unwrap();
//! assert!(report.passed());
//! ```

pub mod bands;
pub mod cli;
pub mod cond_expectation;
pub mod cond_probability;
pub mod riesz_core;
pub mod theorems;

pub use bands::{Band, SignedProjectionSum};
pub use cond_expectation::{CondExpectation, Partition};
pub use cond_probability::{cond_prob, independent, CondProbResult};
pub use riesz_core::{Element, FiniteSampleSpace, Rational, RieszError};
pub use theorems::{BandPartition, CheckReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/riesz-space.md")]
    mod riesz_space {}
    #[doc = include_str!("../../../book/src/bands.md")]
    mod bands {}
    #[doc = include_str!("../../../book/src/conditional-expectation.md")]
    mod conditional_expectation {}
    #[doc = include_str!("../../../book/src/conditional-probability.md")]
    mod conditional_probability {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
