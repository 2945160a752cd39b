use std::fmt;

use super::{FiniteSampleSpace, Rational, RieszError};

/// A rational-valued function on a finite sample space, stored as one
/// coordinate per outcome in outcome order.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    space: FiniteSampleSpace,
    coords: Vec<Rational>,
}

impl Element {
    pub fn new(space: &FiniteSampleSpace, coords: Vec<Rational>) -> Result<Self, RieszError> {
        if coords.len() != space.len() {
            return Err(RieszError::DimensionMismatch {
                expected: space.len(),
                actual: coords.len(),
            });
        }
        Ok(Element {
            space: space.clone(),
            coords,
        })
    }

    pub fn from_integers(space: &FiniteSampleSpace, values: &[i64]) -> Result<Self, RieszError> {
        Self::new(space, values.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn zero(space: &FiniteSampleSpace) -> Self {
        Self::constant(space, Rational::zero())
    }

    /// The weak order unit `e`: the constant-one function.
    pub fn unit(space: &FiniteSampleSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn constant(space: &FiniteSampleSpace, value: Rational) -> Self {
        Element {
            space: space.clone(),
            coords: vec![value; space.len()],
        }
    }

    /// The `i`-th standard basis vector (indicator of a single outcome).
    pub fn basis(space: &FiniteSampleSpace, index: usize) -> Result<Self, RieszError> {
        if index >= space.len() {
            return Err(RieszError::IndexOutOfRange {
                index,
                len: space.len(),
            });
        }
        let mut e = Self::zero(space);
        e.coords[index] = Rational::one();
        Ok(e)
    }

    /// Indicator function of a set of outcome indices.
    pub fn indicator(
        space: &FiniteSampleSpace,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, RieszError> {
        let mut e = Self::zero(space);
        for i in members {
            if i >= space.len() {
                return Err(RieszError::IndexOutOfRange {
                    index: i,
                    len: space.len(),
                });
            }
            e.coords[i] = Rational::one();
        }
        Ok(e)
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> &Rational {
        &self.coords[index]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn zip_with(
        &self,
        other: &Element,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Element, RieszError> {
        self.space.ensure_same(&other.space)?;
        Ok(Element {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub(crate) fn map(&self, op: impl Fn(&Rational) -> Rational) -> Element {
        Element {
            space: self.space.clone(),
            coords: self.coords.iter().map(op).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, RieszError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, RieszError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scalar_mul(&self, c: &Rational) -> Element {
        self.map(|a| c * a)
    }

    pub fn neg(&self) -> Element {
        self.map(|a| -a)
    }

    /// Pointwise maximum, `f ∨ g`.
    pub fn sup(&self, other: &Element) -> Result<Element, RieszError> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    /// Pointwise minimum, `f ∧ g`.
    pub fn inf(&self, other: &Element) -> Result<Element, RieszError> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    /// `|f| = f ∨ (−f)`.
    pub fn abs(&self) -> Element {
        self.map(Rational::abs)
    }

    /// Positive part `f ∨ 0`.
    pub fn positive_part(&self) -> Element {
        self.map(|a| {
            if a.is_negative() {
                Rational::zero()
            } else {
                a.clone()
            }
        })
    }

    /// The f-algebra product: pointwise multiplication.
    pub fn mul(&self, other: &Element) -> Result<Element, RieszError> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Pointwise reciprocal. Fails on the first zero coordinate.
    pub fn invert(&self) -> Result<Element, RieszError> {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.recip().ok_or_else(|| RieszError::NotInvertible {
                    index: i,
                    label: self.space.label(i).to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Element {
            space: self.space.clone(),
            coords,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.coords.iter().all(|a| !a.is_zero())
    }

    /// Index of the first zero coordinate, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.coords.iter().position(Rational::is_zero)
    }

    /// Pointwise order: `f ≤ g` iff every coordinate of `f` is at most the
    /// corresponding coordinate of `g`.
    pub fn leq(&self, other: &Element) -> Result<bool, RieszError> {
        self.space.ensure_same(&other.space)?;
        Ok(self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|a| !a.is_negative())
    }

    /// `f > 0` in the Riesz sense: `f ≥ 0` and `f ≠ 0`.
    pub fn is_strictly_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    /// Returns the common value when every coordinate agrees.
    pub fn constant_value(&self) -> Option<&Rational> {
        let first = self.coords.first()?;
        self.coords.iter().all(|a| a == first).then_some(first)
    }

    /// Coordinates rendered as strings, for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{self}")
    }
}
