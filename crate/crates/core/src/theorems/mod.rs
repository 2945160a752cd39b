//! Checkers for the law of total probability, Bayes' theorem, the
//! inclusion-exclusion formula and the classical correspondence.
//!
//! Every checker returns a [`CheckReport`] rather than an error when the
//! hypotheses of the identity are not met, so that a campaign can tell
//! "identity false" apart from "hypotheses unmet". Only structural misuse
//! (objects from different spaces, malformed indices) is an `Err`.

mod correspondence;
pub mod fuzz;
pub mod oracle;
mod report;

pub use correspondence::check_correspondence;
pub use fuzz::{fuzz_campaign, CampaignReport, FuzzConfig};
pub use oracle::{classical_oracle, ClassicalSpace, Event, OracleError};
pub use report::{CheckKind, CheckReport, InputsDigest, SkipReason, Tally, Verdict, Witness};

use std::fmt;

use thiserror::Error;

use crate::bands::{band_join, inclusion_exclusion_expand, Band, BandError};
use crate::cond_expectation::{verify_axioms, CondExpectation};
use crate::cond_probability::{
    cond_prob, cond_prob_with_order, independent, indicator_product_is_meet, CondProbResult,
    ProjectionOrder,
};
use crate::riesz_core::{Element, FiniteSampleSpace, RieszError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error("band partition needs at least one band")]
    EmptyBandPartition,
    #[error("band {0} of the partition is empty")]
    EmptyBand(usize),
    #[error("bands {0} and {1} of the partition overlap")]
    OverlappingBands(usize, usize),
    #[error("band partition does not cover outcome `{0}`")]
    Uncovered(String),
    #[error("band index {index} out of range for a partition of {len} bands")]
    BandIndexOutOfRange { index: usize, len: usize },
}

/// A decomposition `E = B₁ ⊕ … ⊕ Bₙ` into pairwise disjoint, nonzero bands.
#[derive(Clone, PartialEq, Eq)]
pub struct BandPartition {
    space: FiniteSampleSpace,
    bands: Vec<Band>,
}

impl BandPartition {
    pub fn new(bands: Vec<Band>) -> Result<Self, TheoremError> {
        let space = bands
            .first()
            .ok_or(TheoremError::EmptyBandPartition)?
            .space()
            .clone();
        for (i, b) in bands.iter().enumerate() {
            if !space.same_as(b.space()) {
                return Err(RieszError::SpaceMismatch.into());
            }
            if b.is_zero() {
                return Err(TheoremError::EmptyBand(i));
            }
            for (j, other) in bands.iter().enumerate().take(i) {
                if !b.is_disjoint(other)? {
                    return Err(TheoremError::OverlappingBands(j, i));
                }
            }
        }
        let union = band_join(&space, &bands)?;
        if let Some(missing) = (0..space.len()).find(|&i| !union.contains(i)) {
            return Err(TheoremError::Uncovered(space.label(missing).to_string()));
        }
        Ok(BandPartition { space, bands })
    }

    /// The blocks of a partition, read as bands.
    pub fn from_partition(p: &crate::cond_expectation::Partition) -> Self {
        let bands = p
            .blocks()
            .iter()
            .map(|b| Band::from_indices(p.space(), b.iter().copied()).expect("blocks in range"))
            .collect();
        BandPartition {
            space: p.space().clone(),
            bands,
        }
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }
}

impl fmt::Display for BandPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bands.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("/"))
    }
}

impl fmt::Debug for BandPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BandPartition({self})")
    }
}

fn ensure_same(space: &FiniteSampleSpace, other: &FiniteSampleSpace) -> Result<(), RieszError> {
    if space.same_as(other) {
        Ok(())
    } else {
        Err(RieszError::SpaceMismatch)
    }
}

fn singular(what: &str, element: &Element) -> SkipReason {
    let index = element
        .first_zero()
        .expect("caller checked non-invertibility");
    SkipReason {
        message: format!(
            "{what} is not invertible: zero at outcome `{}`",
            element.space().label(index)
        ),
        nonzero_but_singular: !element.is_zero(),
    }
}

/// The pieces of the total-probability identity for one instance.
#[derive(Debug, Clone)]
pub struct LtpSides {
    /// `T P_D f`
    pub lhs: Element,
    /// `Σᵢ P(D | Bᵢ)(f) · T P_{Bᵢ} f`
    pub rhs: Element,
    /// The same sum with every product taken in the opposite order.
    pub rhs_swapped: Element,
    /// `(P(D | Bᵢ)(f), T P_{Bᵢ} f)` per band.
    pub terms: Vec<(CondProbResult, Element)>,
}

/// Evaluates both sides of the total-probability identity, or explains which
/// proviso fails.
pub fn ltp_sides(
    t: &CondExpectation,
    parts: &BandPartition,
    d: &Band,
    f: &Element,
) -> Result<Result<LtpSides, SkipReason>, RieszError> {
    let space = t.space();
    for s in [parts.space(), d.space(), f.space()] {
        ensure_same(space, s)?;
    }
    let mut terms = Vec::with_capacity(parts.len());
    for (i, b) in parts.bands().iter().enumerate() {
        let tb = t.apply(&b.project(f)?)?;
        if !tb.is_invertible() {
            return Ok(Err(singular(&format!("T P_B{} f", i + 1), &tb)));
        }
        let cp = cond_prob(t, d, b, f)?;
        terms.push((cp, tb));
    }
    let lhs = t.apply(&d.project(f)?)?;
    let mut rhs = Element::zero(space);
    let mut rhs_swapped = Element::zero(space);
    for (cp, tb) in &terms {
        rhs = rhs.add(&cp.value.mul(tb)?)?;
        rhs_swapped = rhs_swapped.add(&tb.mul(&cp.value)?)?;
    }
    Ok(Ok(LtpSides {
        lhs,
        rhs,
        rhs_swapped,
        terms,
    }))
}

fn digest(
    space: &FiniteSampleSpace,
    bands: &[&Band],
    parts: Option<&BandPartition>,
    t: Option<&CondExpectation>,
    f: Option<&Element>,
) -> InputsDigest {
    InputsDigest {
        space: space.digest(),
        bands: bands.iter().map(|b| b.to_string()).collect(),
        partition: parts.map(ToString::to_string),
        expectation: t.map(|t| t.partition().to_string()),
        f: f.map(ToString::to_string),
        trial: None,
    }
}

/// Law of total probability: `T P_D f = Σᵢ P(D | Bᵢ)(f) · T P_{Bᵢ} f`,
/// provided every `T P_{Bᵢ} f` is invertible.
pub fn check_ltp(
    t: &CondExpectation,
    parts: &BandPartition,
    d: &Band,
    f: &Element,
) -> Result<CheckReport, RieszError> {
    let inputs = digest(t.space(), &[d], Some(parts), Some(t), Some(f));
    let sides = match ltp_sides(t, parts, d, f)? {
        Ok(s) => s,
        Err(reason) => return Ok(CheckReport::skipped(CheckKind::Ltp, inputs, reason)),
    };
    let report = if sides.lhs != sides.rhs {
        CheckReport::fail(
            CheckKind::Ltp,
            inputs,
            Witness::from_sides(
                "T P_D f = sum_i P(D|B_i)(f) T P_B_i f",
                &sides.lhs,
                &sides.rhs,
            ),
        )
    } else if sides.rhs != sides.rhs_swapped {
        CheckReport::fail(
            CheckKind::Ltp,
            inputs,
            Witness::from_sides(
                "product order changed the sum",
                &sides.rhs,
                &sides.rhs_swapped,
            ),
        )
    } else {
        CheckReport::pass(CheckKind::Ltp, inputs)
    };
    Ok(report.with_sides(&sides.lhs, &sides.rhs))
}

/// Bayes' theorem for band `j` (zero-based):
///
/// ```text
/// P(Bⱼ | D)(f) = [P(D | Bⱼ)(f) · T P_{Bⱼ} f] · [Σᵢ P(D | Bᵢ)(f) · T P_{Bᵢ} f]⁻¹
/// ```
///
/// Requires the total-probability provisos and invertibility of `T P_D f`.
/// Also confirms that the bracketed sum equals `T P_D f`.
pub fn check_bayes(
    t: &CondExpectation,
    parts: &BandPartition,
    d: &Band,
    j: usize,
    f: &Element,
) -> Result<CheckReport, TheoremError> {
    let bj = parts
        .bands()
        .get(j)
        .ok_or(TheoremError::BandIndexOutOfRange {
            index: j,
            len: parts.len(),
        })?;
    let mut inputs = digest(t.space(), &[d, bj], Some(parts), Some(t), Some(f));
    inputs.bands[1] = format!("B{}={}", j + 1, bj);
    let sides = match ltp_sides(t, parts, d, f)? {
        Ok(s) => s,
        Err(reason) => return Ok(CheckReport::skipped(CheckKind::Bayes, inputs, reason)),
    };
    if !sides.lhs.is_invertible() {
        return Ok(CheckReport::skipped(
            CheckKind::Bayes,
            inputs,
            singular("T P_D f", &sides.lhs),
        ));
    }
    let denominator = &sides.rhs;
    if *denominator != sides.lhs {
        return Ok(CheckReport::fail(
            CheckKind::Bayes,
            inputs,
            Witness::from_sides("denominator must equal T P_D f", denominator, &sides.lhs),
        ));
    }
    let (cp_j, tb_j) = &sides.terms[j];
    let rhs = cp_j.value.mul(tb_j)?.mul(&denominator.invert()?)?;
    let lhs = cond_prob(t, bj, d, f)?.value;
    let report = if lhs == rhs {
        CheckReport::pass(CheckKind::Bayes, inputs)
    } else {
        CheckReport::fail(
            CheckKind::Bayes,
            inputs,
            Witness::from_sides("P(B_j|D)(f) = Bayes right-hand side", &lhs, &rhs),
        )
    };
    Ok(report
        .with_sides(&lhs, &rhs)
        .with_detail(format!("denominator = T P_D f = {}", sides.lhs)))
}

/// Computes `P(B₁ | B₂)(f)` and confirms the certificate
/// `value · denominator = numerator` and order irrelevance.
pub fn check_condprob(
    t: &CondExpectation,
    b1: &Band,
    b2: &Band,
    f: &Element,
) -> Result<CheckReport, RieszError> {
    let inputs = digest(t.space(), &[b1, b2], None, Some(t), Some(f));
    let result = match cond_prob(t, b1, b2, f) {
        Ok(r) => r,
        Err(RieszError::NotInvertible { .. }) => {
            let denom = t.apply(&b2.project(f)?)?;
            return Ok(CheckReport::skipped(
                CheckKind::Condprob,
                inputs,
                singular("T P_B2 f", &denom),
            ));
        }
        Err(e) => return Err(e),
    };
    let swapped = cond_prob_with_order(t, b1, b2, f, ProjectionOrder::ConditionFirst)?;
    let certificate = result.value.mul(&result.denominator)?;
    let report = if certificate != result.numerator {
        CheckReport::fail(
            CheckKind::Condprob,
            inputs,
            Witness::from_sides(
                "value * denominator = numerator",
                &certificate,
                &result.numerator,
            ),
        )
    } else if swapped.value != result.value {
        CheckReport::fail(
            CheckKind::Condprob,
            inputs,
            Witness::from_sides(
                "projection order changed the value",
                &result.value,
                &swapped.value,
            ),
        )
    } else {
        CheckReport::pass(CheckKind::Condprob, inputs)
    };
    Ok(report
        .with_sides(&result.numerator, &result.denominator)
        .with_detail(format!("value = {}", result.value)))
}

/// Evaluates independence and confirms it is symmetric and that indicator
/// products agree with `∧`. The verdict reports on those structural
/// properties; whether the bands are independent is in the detail line.
pub fn check_independence(
    t: &CondExpectation,
    b1: &Band,
    b2: &Band,
) -> Result<CheckReport, RieszError> {
    let inputs = digest(t.space(), &[b1, b2], None, Some(t), None);
    let e = Element::unit(t.space());
    let joint = t.apply(&b2.project(&b1.project(&e)?)?)?;
    let product = t
        .apply(&b2.project(&e)?)?
        .mul(&t.apply(&b1.project(&e)?)?)?;
    let forward = independent(t, b1, b2)?;
    let backward = independent(t, b2, b1)?;
    let report = if forward != backward {
        CheckReport::fail(
            CheckKind::Independence,
            inputs,
            Witness::from_sides("independence is not symmetric", &joint, &product),
        )
    } else if !indicator_product_is_meet(b1, b2)? {
        let (i1, i2) = (b1.indicator(), b2.indicator());
        CheckReport::fail(
            CheckKind::Independence,
            inputs,
            Witness::from_sides(
                "indicator product differs from meet",
                &i1.mul(&i2)?,
                &i1.inf(&i2)?,
            ),
        )
    } else {
        CheckReport::pass(CheckKind::Independence, inputs)
    };
    Ok(report
        .with_sides(&joint, &product)
        .with_detail(format!("independent = {forward}")))
}

/// Expands `P_{B₁+…+Bₙ}` and compares it with the projection onto the union
/// on every basis vector (and on `f`, if given). The term count must be
/// `2ⁿ − 1`.
pub fn check_inclusion_exclusion(
    bands: &[Band],
    cap: usize,
    f: Option<&Element>,
) -> Result<CheckReport, BandError> {
    let expansion = inclusion_exclusion_expand(bands, cap)?;
    let space = expansion.space().clone();
    let refs: Vec<&Band> = bands.iter().collect();
    let inputs = digest(&space, &refs, None, None, f);
    let union = band_join(&space, bands)?;
    let expected_terms = (1usize << bands.len()) - 1;
    let terms: Vec<String> = expansion
        .terms()
        .iter()
        .map(|t| format!("{} {}", t.sign.as_char(), t.band))
        .collect();

    let mut probes: Vec<Element> = (0..space.len())
        .map(|i| Element::basis(&space, i))
        .collect::<Result<_, _>>()?;
    if let Some(f) = f {
        probes.push(f.clone());
    }
    let mut report = None;
    if expansion.len() != expected_terms {
        report = Some(CheckReport::fail(
            CheckKind::InclusionExclusion,
            inputs.clone(),
            Witness {
                outcome: space.label(0).to_string(),
                index: 0,
                lhs: expansion.len().to_string(),
                rhs: expected_terms.to_string(),
                note: "term count".into(),
            },
        ));
    }
    if report.is_none() {
        for probe in &probes {
            let lhs = expansion.apply(probe)?;
            let rhs = union.project(probe)?;
            if lhs != rhs {
                report = Some(
                    CheckReport::fail(
                        CheckKind::InclusionExclusion,
                        inputs.clone(),
                        Witness::from_sides(format!("expansion vs P_union on {probe}"), &lhs, &rhs),
                    )
                    .with_sides(&lhs, &rhs),
                );
                break;
            }
        }
    }
    let mut report = report.unwrap_or_else(|| {
        CheckReport::pass(CheckKind::InclusionExclusion, inputs)
            .with_detail(format!("union = {union}"))
    });
    report = report.with_detail(format!("terms = {}", expansion.len()));
    for line in terms {
        report = report.with_detail(line);
    }
    Ok(report)
}

/// Runs the conditional-expectation axiom verifier and folds its outcome
/// into a report.
pub fn check_axioms(t: &CondExpectation, samples: &[Element]) -> Result<CheckReport, RieszError> {
    let inputs = digest(t.space(), &[], None, Some(t), None);
    let axioms = verify_axioms(t, samples)?;
    let mut report = match axioms.first_failure() {
        None => CheckReport::pass(CheckKind::Axioms, inputs),
        Some(outcome) => {
            let w = outcome
                .witness
                .as_ref()
                .expect("failed outcome has a witness");
            let note = format!(
                "{}: {} (inputs {})",
                outcome.axiom.name(),
                w.note,
                w.inputs
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let witness = Witness::from_sides(note, &w.lhs, &w.rhs);
            CheckReport::fail(CheckKind::Axioms, inputs, witness).with_sides(&w.lhs, &w.rhs)
        }
    };
    for o in &axioms.outcomes {
        report = report.with_detail(format!(
            "{}: {} ({} cases)",
            o.axiom.name(),
            if o.passed() { "pass" } else { "fail" },
            o.cases
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cond_expectation::Partition;
    use crate::riesz_core::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn four() -> FiniteSampleSpace {
        FiniteSampleSpace::uniform(["1", "2", "3", "4"]).unwrap()
    }

    fn band(s: &FiniteSampleSpace, labels: &[&str]) -> Band {
        Band::from_labels(s, labels).unwrap()
    }

    fn halves(s: &FiniteSampleSpace) -> BandPartition {
        BandPartition::new(vec![band(s, &["1", "2"]), band(s, &["3", "4"])]).unwrap()
    }

    #[test]
    fn band_partition_validation() {
        let s = four();
        assert_eq!(
            BandPartition::new(vec![]).unwrap_err(),
            TheoremError::EmptyBandPartition
        );
        assert_eq!(
            BandPartition::new(vec![band(&s, &["1", "2"]), band(&s, &["2", "3", "4"])])
                .unwrap_err(),
            TheoremError::OverlappingBands(0, 1)
        );
        assert_eq!(
            BandPartition::new(vec![band(&s, &["1", "2"]), band(&s, &["3"])]).unwrap_err(),
            TheoremError::Uncovered("4".into())
        );
        assert_eq!(
            BandPartition::new(vec![Band::full(&s), band(&s, &[])]).unwrap_err(),
            TheoremError::EmptyBand(1)
        );
    }

    #[test]
    fn ltp_half() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let r = check_ltp(&t, &halves(&s), &band(&s, &["2", "3"]), &Element::unit(&s)).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
        let half = vec!["1/2".to_string(); 4];
        assert_eq!(r.lhs().unwrap(), &half[..]);
        assert_eq!(r.rhs().unwrap(), &half[..]);
    }

    #[test]
    fn ltp_zero_and_full_band() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let e = Element::unit(&s);
        let r = check_ltp(&t, &halves(&s), &Band::zero(&s), &e).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs().unwrap(), &vec!["0".to_string(); 4][..]);
        let r = check_ltp(&t, &halves(&s), &Band::full(&s), &e).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs().unwrap(), &vec!["1".to_string(); 4][..]);
    }

    #[test]
    fn ltp_skips_on_singular_band_expectation() {
        let s = four();
        // T averages within {1,2} and {3,4}; band {1,2} has T P_B e = 0 on {3,4}.
        let t = CondExpectation::new(Partition::from_assignment(&s, &[0, 0, 1, 1]).unwrap());
        let r = check_ltp(&t, &halves(&s), &band(&s, &["2"]), &Element::unit(&s)).unwrap();
        assert_eq!(r.verdict(), Verdict::PreconditionSkipped);
        let reason = r.skip_reason().unwrap();
        assert!(reason.nonzero_but_singular);
        assert!(reason.message.contains("`3`"), "{}", reason.message);
    }

    #[test]
    fn bayes_half() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let r = check_bayes(
            &t,
            &halves(&s),
            &band(&s, &["2", "3"]),
            0,
            &Element::unit(&s),
        )
        .unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs().unwrap(), &vec!["1/2".to_string(); 4][..]);
    }

    #[test]
    fn bayes_single_band() {
        let s = four();
        let t = CondExpectation::new(Partition::from_assignment(&s, &[0, 1, 0, 1]).unwrap());
        let parts = BandPartition::new(vec![Band::full(&s)]).unwrap();
        let d = band(&s, &["1", "2"]);
        let f = Element::from_integers(&s, &[2, 3, -1, 5]).unwrap();
        let r = check_bayes(&t, &parts, &d, 0, &f).unwrap();
        assert!(r.passed(), "{r:?}");
        let direct = cond_prob(&t, &Band::full(&s), &d, &f).unwrap().value;
        assert_eq!(r.lhs().unwrap(), &direct.to_strings()[..]);
    }

    #[test]
    fn bayes_d_equal_to_band() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let parts = halves(&s);
        let r = check_bayes(&t, &parts, &parts.bands()[1].clone(), 1, &Element::unit(&s)).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs().unwrap(), &vec!["1".to_string(); 4][..]);
    }

    #[test]
    fn bayes_needs_invertible_conditioning() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let r = check_bayes(&t, &halves(&s), &Band::zero(&s), 0, &Element::unit(&s)).unwrap();
        assert_eq!(r.verdict(), Verdict::PreconditionSkipped);
        assert!(!r.skip_reason().unwrap().nonzero_but_singular);
        assert!(matches!(
            check_bayes(&t, &halves(&s), &Band::zero(&s), 2, &Element::unit(&s)),
            Err(TheoremError::BandIndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn condprob_report() {
        let s = four();
        let t = CondExpectation::new(Partition::from_assignment(&s, &[0, 0, 1, 1]).unwrap());
        let ok = check_condprob(
            &t,
            &band(&s, &["1"]),
            &band(&s, &["1", "3"]),
            &Element::unit(&s),
        )
        .unwrap();
        assert!(ok.passed());
        let skipped = check_condprob(
            &t,
            &band(&s, &["1"]),
            &band(&s, &["1", "2"]),
            &Element::unit(&s),
        )
        .unwrap();
        assert_eq!(skipped.verdict(), Verdict::PreconditionSkipped);
    }

    #[test]
    fn independence_report() {
        let s = four();
        let t = CondExpectation::expectation(&s);
        let r = check_independence(&t, &band(&s, &["1", "2"]), &band(&s, &["1", "3"])).unwrap();
        assert!(r.passed());
        assert_eq!(r.detail(), &["independent = true".to_string()]);
    }

    #[test]
    fn inclusion_exclusion_report_lists_terms() {
        let s = four();
        let r = check_inclusion_exclusion(
            &[band(&s, &["1", "2"]), band(&s, &["2", "3"])],
            12,
            Some(&Element::from_integers(&s, &[1, 2, 3, 4]).unwrap()),
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(
            r.detail(),
            &[
                "union = {1,2,3}".to_string(),
                "terms = 3".to_string(),
                "+ {1,2}".to_string(),
                "+ {2,3}".to_string(),
                "- {2}".to_string(),
            ]
        );
    }

    #[test]
    fn axioms_report_carries_witness_on_failure() {
        let s = four();
        let t = CondExpectation::expectation(&s).with_corrupted_block_weight(0, q("1/2"));
        let r = check_axioms(&t, &[]).unwrap();
        assert_eq!(r.verdict(), Verdict::Fail);
        // T f = 2 E[f] stays positive but is no longer idempotent.
        assert!(r.witness().unwrap().note.starts_with("projection"), "{r:?}");
        assert!(check_axioms(&CondExpectation::expectation(&s), &[])
            .unwrap()
            .passed());
    }
}
