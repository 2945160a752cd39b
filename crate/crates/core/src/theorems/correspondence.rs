use crate::bands::{inclusion_exclusion_expand, Band, DEFAULT_IE_CAP};
use crate::cond_expectation::CondExpectation;
use crate::cond_probability::cond_prob;
use crate::riesz_core::{Element, FiniteSampleSpace, Rational};

use super::oracle::{classical_oracle, Event};
use super::report::{CheckKind, CheckReport, InputsDigest, Witness};
use super::{ltp_sides, BandPartition, TheoremError};

/// Compares the Riesz-space quantities with their classical counterparts,
/// taking `T` to be the expectation operator and `f = e`.
///
/// For the given `events`:
/// * every ordered pair `(A, B)` with `P(B) > 0` must give
///   `P(A | B)(e) = P(A | B)·e`;
/// * every event `D` must give `T P_D e = Σᵢ P(D | Bᵢ)(e) T P_{Bᵢ} e
///   = P(D)·e` over `parts`, and the classical total-probability sum must
///   equal `P(D)`;
/// * every event `D` with `P(D) > 0` and every band `Bⱼ` of `parts` must give
///   both sides of Bayes equal to `P(Bⱼ | D)·e`;
/// * the inclusion-exclusion expansion of `events`, applied to `e` and
///   averaged, must equal `P(A₁ ∪ … ∪ Aₙ)·e`, as must the classical
///   alternating sum.
pub fn check_correspondence(
    space: &FiniteSampleSpace,
    events: &[Band],
    parts: &BandPartition,
) -> Result<CheckReport, TheoremError> {
    for b in events {
        if !space.same_as(b.space()) {
            return Err(crate::riesz_core::RieszError::SpaceMismatch.into());
        }
    }
    if !space.same_as(parts.space()) {
        return Err(crate::riesz_core::RieszError::SpaceMismatch.into());
    }
    let inputs = InputsDigest {
        space: space.digest(),
        bands: events.iter().map(ToString::to_string).collect(),
        partition: Some(parts.to_string()),
        expectation: Some("expectation".into()),
        f: Some("e".into()),
        trial: None,
    };
    let oracle = classical_oracle(space);
    let t = CondExpectation::expectation(space);
    let e = Element::unit(space);
    let as_event = |b: &Band| -> Event { b.members().clone() };
    let classical_parts: Vec<Event> = parts.bands().iter().map(as_event).collect();
    let constant = |v: &Rational| Element::constant(space, v.clone());
    let mut compared = 0usize;

    macro_rules! expect_eq {
        ($note:expr, $riesz:expr, $classical:expr) => {{
            let riesz: Element = $riesz;
            let classical: Element = $classical;
            compared += 1;
            if riesz != classical {
                return Ok(CheckReport::fail(
                    CheckKind::Correspondence,
                    inputs,
                    Witness::from_sides($note, &riesz, &classical),
                )
                .with_sides(&riesz, &classical));
            }
        }};
    }

    for a in events {
        for b in events {
            let pb = oracle.prob(&as_event(b));
            if pb.is_zero() {
                continue;
            }
            let classical = oracle.cond(&as_event(a), &as_event(b)).expect("P(B) > 0");
            let riesz = cond_prob(&t, a, b, &e)?.value;
            expect_eq!(format!("P({a} | {b})"), riesz, constant(&classical));
        }
    }

    for d in events {
        let pd = oracle.prob(&as_event(d));
        let classical_ltp = oracle
            .total_probability(&as_event(d), &classical_parts)
            .expect("partition bands are nonempty");
        if classical_ltp != pd {
            let (l, r) = (constant(&classical_ltp), constant(&pd));
            expect_eq!(format!("classical total probability of {d}"), l, r);
        }
        let sides = match ltp_sides(&t, parts, d, &e)? {
            Ok(s) => s,
            Err(reason) => {
                return Ok(CheckReport::skipped(
                    CheckKind::Correspondence,
                    inputs,
                    reason,
                ))
            }
        };
        expect_eq!(
            format!("T P_D e for D = {d}"),
            sides.lhs.clone(),
            constant(&pd)
        );
        expect_eq!(
            format!("LTP sum for D = {d}"),
            sides.rhs.clone(),
            constant(&pd)
        );

        if pd.is_zero() {
            continue;
        }
        let denominator_inv = sides.rhs.invert()?;
        for (j, bj) in parts.bands().iter().enumerate() {
            let classical = oracle
                .bayes(&classical_parts, &as_event(d), j)
                .expect("P(D) > 0");
            let direct = oracle.cond(&as_event(bj), &as_event(d)).expect("P(D) > 0");
            if classical != direct {
                let (l, r) = (constant(&classical), constant(&direct));
                expect_eq!(format!("classical Bayes for B{}", j + 1), l, r);
            }
            let (cp_j, tb_j) = &sides.terms[j];
            let rhs = cp_j.value.mul(tb_j)?.mul(&denominator_inv)?;
            let lhs = cond_prob(&t, bj, d, &e)?.value;
            expect_eq!(
                format!("Bayes lhs P(B{} | {d})", j + 1),
                lhs,
                constant(&classical)
            );
            expect_eq!(
                format!("Bayes rhs for B{} given {d}", j + 1),
                rhs,
                constant(&classical)
            );
        }
    }

    if !events.is_empty() && events.len() <= DEFAULT_IE_CAP {
        let classical_events: Vec<Event> = events.iter().map(as_event).collect();
        let union = oracle.union_prob(&classical_events);
        let alternating = oracle.inclusion_exclusion(&classical_events);
        if alternating != union {
            let (l, r) = (constant(&alternating), constant(&union));
            expect_eq!("classical inclusion-exclusion", l, r);
        }
        let expansion = inclusion_exclusion_expand(events, DEFAULT_IE_CAP)?;
        let riesz = t.apply(&expansion.apply(&e)?)?;
        expect_eq!("T of expanded P_union e", riesz, constant(&union));
    }

    Ok(CheckReport::pass(CheckKind::Correspondence, inputs)
        .with_detail(format!("comparisons = {compared}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cond_expectation::Partition;
    use crate::theorems::Verdict;

    #[test]
    fn uniform_four() {
        let s = FiniteSampleSpace::uniform(["1", "2", "3", "4"]).unwrap();
        let a = Band::from_labels(&s, ["1", "2"]).unwrap();
        let b = Band::from_labels(&s, ["2", "3"]).unwrap();
        let parts =
            BandPartition::from_partition(&Partition::from_assignment(&s, &[0, 0, 1, 1]).unwrap());
        let r = check_correspondence(&s, &[a, b], &parts).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
    }

    #[test]
    fn event_with_itself() {
        let s = FiniteSampleSpace::from_relative_weights(
            ["x", "y", "z"],
            vec![1.into(), 2.into(), 4.into()],
        )
        .unwrap();
        let a = Band::from_labels(&s, ["y", "z"]).unwrap();
        let parts = BandPartition::new(vec![Band::full(&s)]).unwrap();
        let r = check_correspondence(&s, &[a.clone(), a], &parts).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn null_events_are_skipped_as_conditions() {
        let s = FiniteSampleSpace::uniform(["x", "y"]).unwrap();
        let parts = BandPartition::new(vec![Band::full(&s)]).unwrap();
        let r = check_correspondence(&s, &[Band::zero(&s), Band::full(&s)], &parts).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
