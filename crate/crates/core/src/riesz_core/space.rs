use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Rational, RieszError};

/// A finite probability space: distinct outcome labels, each with a strictly
/// positive rational weight, the weights summing exactly to one.
///
/// The handle is cheap to clone; elements, bands and operators all hold one
/// and refuse to combine with objects built over a different space.
#[derive(Clone)]
pub struct FiniteSampleSpace {
    inner: Arc<SpaceInner>,
}

#[derive(PartialEq, Eq)]
struct SpaceInner {
    outcomes: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl FiniteSampleSpace {
    pub fn new<S: Into<String>>(
        outcomes: impl IntoIterator<Item = S>,
        weights: Vec<Rational>,
    ) -> Result<Self, RieszError> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(RieszError::EmptySpace);
        }
        if outcomes.len() != weights.len() {
            return Err(RieszError::WeightCountMismatch {
                outcomes: outcomes.len(),
                weights: weights.len(),
            });
        }
        let mut index = HashMap::with_capacity(outcomes.len());
        for (i, label) in outcomes.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(RieszError::DuplicateOutcome(label.clone()));
            }
        }
        for (label, weight) in outcomes.iter().zip(&weights) {
            if !weight.is_positive() {
                return Err(RieszError::NonPositiveWeight {
                    label: label.clone(),
                    weight: weight.clone(),
                });
            }
        }
        let sum: Rational = weights.iter().sum();
        if sum != Rational::one() {
            return Err(RieszError::WeightSum { sum });
        }
        Ok(FiniteSampleSpace {
            inner: Arc::new(SpaceInner {
                outcomes,
                weights,
                index,
            }),
        })
    }

    /// Uniform weights over the given labels.
    pub fn uniform<S: Into<String>>(
        outcomes: impl IntoIterator<Item = S>,
    ) -> Result<Self, RieszError> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(RieszError::EmptySpace);
        }
        let w = Rational::new(1, outcomes.len() as i64)?;
        let weights = vec![w; outcomes.len()];
        Self::new(outcomes, weights)
    }

    /// Normalizes arbitrary positive weights so they sum to one.
    pub fn from_relative_weights<S: Into<String>>(
        outcomes: impl IntoIterator<Item = S>,
        relative: Vec<Rational>,
    ) -> Result<Self, RieszError> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        let total: Rational = relative.iter().sum();
        if !total.is_positive() || relative.iter().any(|w| !w.is_positive()) {
            // Let `new` report the offending weight.
            return Self::new(outcomes, relative);
        }
        let weights = relative.iter().map(|w| w / &total).collect();
        Self::new(outcomes, weights)
    }

    pub fn len(&self) -> usize {
        self.inner.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn outcomes(&self) -> &[String] {
        &self.inner.outcomes
    }

    pub fn weights(&self) -> &[Rational] {
        &self.inner.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.inner.weights[index]
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.outcomes[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, RieszError> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| RieszError::UnknownOutcome(label.to_string()))
    }

    /// Two handles denote the same space if they share storage or agree on
    /// every outcome and weight.
    pub fn same_as(&self, other: &FiniteSampleSpace) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }

    pub(crate) fn ensure_same(&self, other: &FiniteSampleSpace) -> Result<(), RieszError> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(RieszError::SpaceMismatch)
        }
    }

    /// Compact `label:weight` listing used in report digests.
    pub fn digest(&self) -> String {
        self.outcomes()
            .iter()
            .zip(self.weights())
            .map(|(o, w)| format!("{o}:{w}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for FiniteSampleSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteSampleSpace {}

impl fmt::Debug for FiniteSampleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSampleSpace({})", self.digest())
    }
}
