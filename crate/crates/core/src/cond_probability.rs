//! The conditional-probability operator and independence of bands.
//!
//! Given a conditional expectation `T`, bands `B₁`, `B₂` and an element `f`,
//!
//! ```text
//! P(B₁ | B₂)(f) = [T P_{B₂} P_{B₁} f] · [T P_{B₂} f]⁻¹
//! ```
//!
//! where the product and inverse are those of the f-algebra. The inverse
//! exists only when `T P_{B₂} f` has no zero coordinate; otherwise the
//! operation fails with [`RieszError::NotInvertible`] naming the outcome.
//!
//! ```
//! use riesz_prob::{Band, CondExpectation, Element, FiniteSampleSpace, Rational};
//! use riesz_prob::cond_probability::cond_prob;
//!
//! let space = FiniteSampleSpace::uniform(["1", "2", "3", "4"]).unwrap();
//! let t = CondExpectation::expectation(&space);
//! let a = Band::from_labels(&space, ["1", "2"]).unwrap();
//! let b = Band::from_labels(&space, ["2", "3"]).unwrap();
//! let p = cond_prob(&t, &a, &b, &Element::unit(&space)).unwrap();
//! assert_eq!(p.value, Element::constant(&space, "1/2".parse::<Rational>().unwrap()));
//! ```

use crate::bands::Band;
use crate::cond_expectation::CondExpectation;
use crate::riesz_core::{Element, RieszError};

/// The value of `P(B₁ | B₂)(f)` together with the two factors it was
/// computed from. `value · denominator = numerator` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondProbResult {
    pub value: Element,
    /// `T P_{B₂} P_{B₁} f`
    pub numerator: Element,
    /// `T P_{B₂} f`
    pub denominator: Element,
}

/// Order in which the two band projections are composed in the numerator.
/// Band projections commute, so both give the same result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionOrder {
    /// `T P_{B₂} P_{B₁} f`
    ConditionLast,
    /// `T P_{B₁} P_{B₂} f`
    ConditionFirst,
}

pub fn cond_prob(
    t: &CondExpectation,
    b1: &Band,
    b2: &Band,
    f: &Element,
) -> Result<CondProbResult, RieszError> {
    cond_prob_with_order(t, b1, b2, f, ProjectionOrder::ConditionLast)
}

pub fn cond_prob_with_order(
    t: &CondExpectation,
    b1: &Band,
    b2: &Band,
    f: &Element,
    order: ProjectionOrder,
) -> Result<CondProbResult, RieszError> {
    let space = t.space();
    for s in [b1.space(), b2.space(), f.space()] {
        if !space.same_as(s) {
            return Err(RieszError::SpaceMismatch);
        }
    }
    let projected = match order {
        ProjectionOrder::ConditionLast => b2.project(&b1.project(f)?)?,
        ProjectionOrder::ConditionFirst => b1.project(&b2.project(f)?)?,
    };
    let numerator = t.apply(&projected)?;
    let denominator = t.apply(&b2.project(f)?)?;
    let value = numerator.mul(&denominator.invert()?)?;
    Ok(CondProbResult {
        value,
        numerator,
        denominator,
    })
}

/// Independence with respect to `T`:
/// `T P_{B₂} P_{B₁} e = (T P_{B₂} e) · (T P_{B₁} e)`, exactly.
pub fn independent(t: &CondExpectation, b1: &Band, b2: &Band) -> Result<bool, RieszError> {
    let space = t.space();
    for s in [b1.space(), b2.space()] {
        if !space.same_as(s) {
            return Err(RieszError::SpaceMismatch);
        }
    }
    let e = Element::unit(space);
    let joint = t.apply(&b2.project(&b1.project(&e)?)?)?;
    let product = t
        .apply(&b2.project(&e)?)?
        .mul(&t.apply(&b1.project(&e)?)?)?;
    Ok(joint == product)
}

/// The three-way independence condition
/// `T P_{B₁} T P_{B₂} e = T P_{B₁} P_{B₂} e = T P_{B₂} T P_{B₁} e`,
/// kept as a cross-check against [`independent`].
pub fn independent_composed(t: &CondExpectation, b1: &Band, b2: &Band) -> Result<bool, RieszError> {
    let e = Element::unit(t.space());
    let left = t.apply(&b1.project(&t.apply(&b2.project(&e)?)?)?)?;
    let middle = t.apply(&b1.project(&b2.project(&e)?)?)?;
    let right = t.apply(&b2.project(&t.apply(&b1.project(&e)?)?)?)?;
    Ok(left == middle && middle == right)
}

/// On indicators, the f-algebra product coincides with `∧`:
/// `P_{B₁}(e) · P_{B₂}(e) = P_{B₁}(e) ∧ P_{B₂}(e) = P_{B₁ ∩ B₂}(e)`.
pub fn indicator_product_is_meet(b1: &Band, b2: &Band) -> Result<bool, RieszError> {
    let (i1, i2) = (b1.indicator(), b2.indicator());
    let product = i1.mul(&i2)?;
    Ok(product == i1.inf(&i2)? && product == b1.meet(b2)?.indicator())
}
