//! Classical finite probability by direct summation over outcomes.
//!
//! Nothing here touches elements, bands or operators: events are plain index
//! sets and every probability is a sum of outcome weights. That keeps it an
//! independent reference for the Riesz-space computations.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::riesz_core::{FiniteSampleSpace, Rational};

pub type Event = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("conditioning on an event of probability zero: {0:?}")]
    ConditioningOnNull(Vec<usize>),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone)]
pub struct ClassicalSpace {
    weights: Vec<Rational>,
}

/// Builds the classical view of a sample space.
pub fn classical_oracle(space: &FiniteSampleSpace) -> ClassicalSpace {
    ClassicalSpace {
        weights: space.weights().to_vec(),
    }
}

impl ClassicalSpace {
    pub fn from_weights(weights: Vec<Rational>) -> Self {
        ClassicalSpace { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn omega(&self) -> Event {
        (0..self.weights.len()).collect()
    }

    pub fn prob(&self, a: &Event) -> Rational {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| a.contains(i))
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// `P(A | B) = P(A ∩ B) / P(B)`.
    pub fn cond(&self, a: &Event, b: &Event) -> Result<Rational, OracleError> {
        let pb = self.prob(b);
        if pb.is_zero() {
            return Err(OracleError::ConditioningOnNull(b.iter().copied().collect()));
        }
        let both: Event = a.intersection(b).copied().collect();
        Ok(self.prob(&both) / pb)
    }

    /// `Σᵢ P(A | Bᵢ) P(Bᵢ)`.
    pub fn total_probability(&self, a: &Event, parts: &[Event]) -> Result<Rational, OracleError> {
        let mut sum = Rational::zero();
        for b in parts {
            sum = sum + self.cond(a, b)? * self.prob(b);
        }
        Ok(sum)
    }

    /// `P(D | Bⱼ) P(Bⱼ) / Σᵢ P(D | Bᵢ) P(Bᵢ)`.
    pub fn bayes(&self, parts: &[Event], d: &Event, j: usize) -> Result<Rational, OracleError> {
        let bj = parts.get(j).ok_or(OracleError::IndexOutOfRange(j))?;
        let numerator = self.cond(d, bj)? * self.prob(bj);
        let denominator = self.total_probability(d, parts)?;
        if denominator.is_zero() {
            return Err(OracleError::ConditioningOnNull(d.iter().copied().collect()));
        }
        Ok(numerator / denominator)
    }

    /// `P(A₁ ∪ … ∪ Aₙ)` by summing over the union directly.
    pub fn union_prob(&self, events: &[Event]) -> Rational {
        let union: Event = events.iter().flatten().copied().collect();
        self.prob(&union)
    }

    /// The classical alternating sum over all nonempty sub-collections.
    pub fn inclusion_exclusion(&self, events: &[Event]) -> Rational {
        let n = events.len();
        let mut total = Rational::zero();
        for mask in 1u64..(1u64 << n) {
            let mut chosen = (0..n).filter(|i| mask & (1 << i) != 0);
            let first = chosen.next().expect("mask is nonzero");
            let mut inter = events[first].clone();
            for i in chosen {
                inter = inter.intersection(&events[i]).copied().collect();
            }
            let p = self.prob(&inter);
            if mask.count_ones() % 2 == 1 {
                total = total + p;
            } else {
                total = total - p;
            }
        }
        total
    }

    pub fn are_independent(&self, a: &Event, b: &Event) -> bool {
        let both: Event = a.intersection(b).copied().collect();
        self.prob(&both) == self.prob(a) * self.prob(b)
    }
}
