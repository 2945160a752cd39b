//! Seeded random campaigns over all checkers.
//!
//! Each trial draws its own generator from the campaign seed and the trial
//! index, so a trial can be replayed in isolation and the report does not
//! depend on how many random numbers earlier trials consumed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bands::{Band, DEFAULT_IE_CAP};
use crate::cond_expectation::{CondExpectation, Partition};
use crate::riesz_core::{Element, FiniteSampleSpace, Rational};

use super::report::{CheckKind, CheckReport, Tally, Verdict};
use super::{
    check_axioms, check_bayes, check_correspondence, check_inclusion_exclusion, check_ltp,
    ltp_sides, BandPartition, TheoremError,
};

/// How many times an instance is redrawn before a proviso failure is
/// recorded as a skip.
pub const MAX_INSTANCE_ATTEMPTS: usize = 16;

/// Coordinates of random elements are drawn from `-COORD_RANGE..=COORD_RANGE`.
pub const COORD_RANGE: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_outcomes: usize,
    pub max_bands: usize,
    pub ie_cap: usize,
    /// Replace the axiom check's operator with a corrupted one.
    pub inject_fault: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 42,
            trials: 1000,
            max_outcomes: 8,
            max_bands: 6,
            ie_cap: DEFAULT_IE_CAP,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuzzConfigError {
    #[error("max-outcomes must be at least 2, got {0}")]
    TooFewOutcomes(usize),
    #[error("max-bands must be at least 1")]
    NoBands,
    #[error("max-bands ({max_bands}) exceeds the inclusion-exclusion cap ({cap})")]
    BandsOverCap { max_bands: usize, cap: usize },
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), FuzzConfigError> {
        if self.max_outcomes < 2 {
            return Err(FuzzConfigError::TooFewOutcomes(self.max_outcomes));
        }
        if self.max_bands == 0 {
            return Err(FuzzConfigError::NoBands);
        }
        if self.max_bands > self.ie_cap {
            return Err(FuzzConfigError::BandsOverCap {
                max_bands: self.max_bands,
                cap: self.ie_cap,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub trials_run: u64,
    /// Set when a failure stopped the campaign early.
    pub aborted_at_trial: Option<u64>,
    pub total: Tally,
    pub by_check: BTreeMap<CheckKind, Tally>,
    /// Skips where the singular element was nonzero, i.e. instances a
    /// "nonzero" reading of the proviso would have admitted.
    pub nonzero_but_singular: u64,
    /// Total-probability and Bayes draws discarded because a proviso failed.
    pub rejected_draws: u64,
    /// Discarded draws whose singular element was nonzero.
    pub rejected_nonzero_but_singular: u64,
    pub reports: Vec<CheckReport>,
}

impl CampaignReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.verdict() == Verdict::Fail)
    }

    pub fn tally(&self, kind: CheckKind) -> Tally {
        self.by_check.get(&kind).copied().unwrap_or_default()
    }
}

/// Runs `config.trials` seeded trials, each exercising inclusion-exclusion,
/// total probability, Bayes, the expectation axioms and the classical
/// correspondence. Stops after the first trial that produced a failure.
pub fn fuzz_campaign(config: &FuzzConfig) -> Result<CampaignReport, FuzzConfigError> {
    config.validate()?;
    let mut reports = Vec::new();
    let mut aborted_at_trial = None;
    let mut trials_run = 0;
    let mut rejections = Rejections::default();
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let trial_reports = run_trial(&mut rng, config, &mut rejections)
            .expect("generated instances are well formed")
            .into_iter()
            .map(|r| r.with_trial(trial));
        let before = reports.len();
        reports.extend(trial_reports);
        trials_run += 1;
        if reports[before..]
            .iter()
            .any(|r| r.verdict() == Verdict::Fail)
        {
            aborted_at_trial = Some(trial);
            break;
        }
    }
    let mut by_check: BTreeMap<CheckKind, Tally> = BTreeMap::new();
    let mut nonzero_but_singular = 0;
    for r in &reports {
        by_check.entry(r.check()).or_default().record(r.verdict());
        if r.skip_reason().is_some_and(|s| s.nonzero_but_singular) {
            nonzero_but_singular += 1;
        }
    }
    Ok(CampaignReport {
        trials_run,
        aborted_at_trial,
        total: Tally::of(&reports),
        by_check,
        nonzero_but_singular,
        rejected_draws: rejections.draws,
        rejected_nonzero_but_singular: rejections.nonzero_but_singular,
        reports,
    })
}

/// The generator used for trial `trial` of a campaign seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws discarded by [`admissible_instance`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rejections {
    pub draws: u64,
    pub nonzero_but_singular: u64,
}

fn run_trial(
    rng: &mut ChaCha8Rng,
    config: &FuzzConfig,
    rejections: &mut Rejections,
) -> Result<Vec<CheckReport>, TheoremError> {
    let mut out = Vec::with_capacity(5);

    let space = random_space(rng, 1, config.max_outcomes);
    let n = rng.gen_range(1..=config.max_bands);
    let bands: Vec<Band> = (0..n).map(|_| random_band(rng, &space)).collect();
    let f = random_element(rng, &space);
    out.push(check_inclusion_exclusion(&bands, config.ie_cap, Some(&f))?);

    let inst = admissible_instance(rng, config.max_outcomes, false, rejections);
    out.push(check_ltp(&inst.t, &inst.parts, &inst.d, &inst.f)?);

    let inst = admissible_instance(rng, config.max_outcomes, true, rejections);
    let j = rng.gen_range(0..inst.parts.len());
    out.push(check_bayes(&inst.t, &inst.parts, &inst.d, j, &inst.f)?);

    let space = random_space(rng, 1, config.max_outcomes);
    let mut t = CondExpectation::new(random_partition(rng, &space, space.len()));
    if config.inject_fault {
        let wrong = &t.block_weights()[0] + &Rational::one();
        t = t.with_corrupted_block_weight(0, wrong);
    }
    let samples: Vec<Element> = (0..3).map(|_| random_element(rng, &space)).collect();
    out.push(check_axioms(&t, &samples)?);

    let space = random_space(rng, 1, config.max_outcomes);
    let events: Vec<Band> = (0..2).map(|_| random_band(rng, &space)).collect();
    let k = rng.gen_range(1..=space.len().min(4));
    let parts = random_band_partition(rng, &space, k);
    out.push(check_correspondence(&space, &events, &parts)?);

    Ok(out)
}

/// A total-probability / Bayes instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub t: CondExpectation,
    pub parts: BandPartition,
    pub d: Band,
    pub f: Element,
    /// Number of draws it took; equals [`MAX_INSTANCE_ATTEMPTS`] when no
    /// admissible draw was found and the last one was kept.
    pub attempts: usize,
}

/// Draws a random space, an operator, a decomposition into 2–4 bands, a band
/// `D` and an element `f`, redrawing until every `T P_{Bᵢ} f` (and, for
/// Bayes, `T P_D f`) is invertible or the attempt budget runs out.
pub fn admissible_instance(
    rng: &mut ChaCha8Rng,
    max_outcomes: usize,
    bayes: bool,
    rejections: &mut Rejections,
) -> Instance {
    let mut last = None;
    for attempt in 1..=MAX_INSTANCE_ATTEMPTS {
        let space = random_space(rng, 2, max_outcomes);
        let t = CondExpectation::new(random_partition(rng, &space, space.len().min(3)));
        let k = rng.gen_range(2..=space.len().min(4));
        let parts = random_band_partition(rng, &space, k);
        let d = random_band(rng, &space);
        let f = random_element(rng, &space);
        // `Some(nonzero)` describes the singular element of a rejected draw.
        let rejected = match ltp_sides(&t, &parts, &d, &f) {
            Ok(Ok(sides)) if bayes && !sides.lhs.is_invertible() => Some(!sides.lhs.is_zero()),
            Ok(Ok(_)) => None,
            Ok(Err(reason)) => Some(reason.nonzero_but_singular),
            Err(e) => unreachable!("generated objects share a space: {e}"),
        };
        let inst = Instance {
            t,
            parts,
            d,
            f,
            attempts: attempt,
        };
        match rejected {
            None => return inst,
            Some(nonzero) => {
                rejections.draws += 1;
                rejections.nonzero_but_singular += u64::from(nonzero);
            }
        }
        last = Some(inst);
    }
    last.expect("at least one attempt")
}

/// A space with between `min` and `max` outcomes labelled `w0, w1, …` and
/// integer relative weights in `1..=9`, normalized to sum to one.
pub fn random_space(rng: &mut impl Rng, min: usize, max: usize) -> FiniteSampleSpace {
    let n = rng.gen_range(min..=max.max(min));
    let labels = (0..n).map(|i| format!("w{i}"));
    let weights = (0..n)
        .map(|_| Rational::from(rng.gen_range(1..=9)))
        .collect();
    FiniteSampleSpace::from_relative_weights(labels, weights).expect("positive weights")
}

/// Relative weights for an `n`-outcome space drawn from a seeded generator.
pub fn random_weight_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from(rng.gen_range(1..=9)))
        .collect()
}

/// Each outcome joins the band with probability one half.
pub fn random_band(rng: &mut impl Rng, space: &FiniteSampleSpace) -> Band {
    Band::from_indices(space, (0..space.len()).filter(|_| rng.gen_bool(0.5)))
        .expect("indices in range")
}

pub fn random_element(rng: &mut impl Rng, space: &FiniteSampleSpace) -> Element {
    let coords = (0..space.len())
        .map(|_| Rational::from(rng.gen_range(-COORD_RANGE..=COORD_RANGE)))
        .collect();
    Element::new(space, coords).expect("dimension matches")
}

/// Coordinates in `0..=COORD_RANGE`.
pub fn random_nonnegative_element(rng: &mut impl Rng, space: &FiniteSampleSpace) -> Element {
    let coords = (0..space.len())
        .map(|_| Rational::from(rng.gen_range(0..=COORD_RANGE)))
        .collect();
    Element::new(space, coords).expect("dimension matches")
}

/// A partition with at most `max_blocks` blocks (at least one).
pub fn random_partition(
    rng: &mut impl Rng,
    space: &FiniteSampleSpace,
    max_blocks: usize,
) -> Partition {
    let k = rng.gen_range(1..=max_blocks.max(1));
    let assignment: Vec<usize> = (0..space.len()).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_assignment(space, &assignment).expect("assignment covers every outcome")
}

/// A decomposition into exactly `k` nonempty bands (`1 ≤ k ≤ |Ω|`).
pub fn random_band_partition(
    rng: &mut impl Rng,
    space: &FiniteSampleSpace,
    k: usize,
) -> BandPartition {
    assert!(
        (1..=space.len()).contains(&k),
        "cannot split {} outcomes into {k} bands",
        space.len()
    );
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.shuffle(rng);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (pos, &i) in order.iter().enumerate() {
        let b = if pos < k { pos } else { rng.gen_range(0..k) };
        members[b].push(i);
    }
    let bands = members
        .into_iter()
        .map(|m| Band::from_indices(space, m).expect("indices in range"))
        .collect();
    BandPartition::new(bands).expect("disjoint, nonempty and covering")
}
