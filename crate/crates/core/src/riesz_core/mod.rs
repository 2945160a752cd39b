//! The ambient Riesz space: rational-valued functions on a finite sample
//! space, ordered pointwise, with the pointwise product as f-algebra
//! multiplication.
//!
//! Every element of this space is a vector of exact [`Rational`]
//! coordinates, one per outcome. Lattice operations, the order and the
//! product all act coordinatewise, so the space is Dedekind complete and
//! every band is a projection band. The all-ones function is the canonical
//! weak order unit `e` and the identity of the product.

mod element;
mod rational;
mod space;

pub use element::Element;
pub use rational::Rational;
pub use space::FiniteSampleSpace;

use thiserror::Error;

/// Errors raised by the Riesz-space kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RieszError {
    #[error("operands belong to different sample spaces")]
    SpaceMismatch,
    #[error("element is not invertible: coordinate {index} (outcome `{label}`) is zero")]
    NotInvertible { index: usize, label: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{text}`: {reason}")]
    MalformedRational { text: String, reason: String },
    #[error("sample space has no outcomes")]
    EmptySpace,
    #[error("outcome label `{0}` appears more than once")]
    DuplicateOutcome(String),
    #[error("{outcomes} outcomes but {weights} weights")]
    WeightCountMismatch { outcomes: usize, weights: usize },
    #[error("weight of outcome `{label}` is {weight}, but weights must be strictly positive")]
    NonPositiveWeight { label: String, weight: Rational },
    #[error("weights sum to {sum}, expected exactly 1")]
    WeightSum { sum: Rational },
    #[error("expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("outcome index {index} out of range for a space of {len} outcomes")]
    IndexOutOfRange { index: usize, len: usize },
}
