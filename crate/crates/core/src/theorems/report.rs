use serde::Serialize;

use crate::riesz_core::{Element, FiniteSampleSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Condprob,
    Independence,
    InclusionExclusion,
    Ltp,
    Bayes,
    Axioms,
    Correspondence,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Condprob,
        CheckKind::Independence,
        CheckKind::InclusionExclusion,
        CheckKind::Ltp,
        CheckKind::Bayes,
        CheckKind::Axioms,
        CheckKind::Correspondence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Condprob => "condprob",
            CheckKind::Independence => "independence",
            CheckKind::InclusionExclusion => "inclusion-exclusion",
            CheckKind::Ltp => "ltp",
            CheckKind::Bayes => "bayes",
            CheckKind::Axioms => "axioms",
            CheckKind::Correspondence => "correspondence",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckKind> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PreconditionSkipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PreconditionSkipped => "precondition-skipped",
        }
    }
}

/// Where two sides of an identity disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub outcome: String,
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

impl Witness {
    /// Locates the first coordinate where `lhs` and `rhs` differ, falling
    /// back to coordinate 0 when they agree everywhere.
    pub fn from_sides(note: impl Into<String>, lhs: &Element, rhs: &Element) -> Self {
        let index = (0..lhs.len().min(rhs.len()))
            .find(|&i| lhs.coord(i) != rhs.coord(i))
            .unwrap_or(0);
        Witness {
            outcome: lhs.space().label(index).to_string(),
            index,
            lhs: lhs.coord(index).to_string(),
            rhs: rhs.coord(index).to_string(),
            note: note.into(),
        }
    }
}

/// Why a check did not run its identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipReason {
    pub message: String,
    /// The element that had to be inverted was nonzero, so a reading of the
    /// proviso as "nonzero" would have admitted this instance.
    pub nonzero_but_singular: bool,
}

/// Compact, deterministic description of a check's inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InputsDigest {
    pub space: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bands: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

impl InputsDigest {
    pub fn for_space(space: &FiniteSampleSpace) -> Self {
        InputsDigest {
            space: space.digest(),
            ..Default::default()
        }
    }
}

/// The outcome of one check. A failing report always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    check: CheckKind,
    inputs: InputsDigest,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skip: Option<SkipReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    detail: Vec<String>,
}

impl CheckReport {
    pub fn pass(check: CheckKind, inputs: InputsDigest) -> Self {
        Self::build(check, inputs, Verdict::Pass, None, None)
    }

    pub fn fail(check: CheckKind, inputs: InputsDigest, witness: Witness) -> Self {
        Self::build(check, inputs, Verdict::Fail, Some(witness), None)
    }

    pub fn skipped(check: CheckKind, inputs: InputsDigest, reason: SkipReason) -> Self {
        Self::build(
            check,
            inputs,
            Verdict::PreconditionSkipped,
            None,
            Some(reason),
        )
    }

    fn build(
        check: CheckKind,
        inputs: InputsDigest,
        verdict: Verdict,
        witness: Option<Witness>,
        skip: Option<SkipReason>,
    ) -> Self {
        CheckReport {
            check,
            inputs,
            verdict,
            witness,
            skip,
            lhs: None,
            rhs: None,
            detail: Vec::new(),
        }
    }

    pub fn with_sides(mut self, lhs: &Element, rhs: &Element) -> Self {
        self.lhs = Some(lhs.to_strings());
        self.rhs = Some(rhs.to_strings());
        self
    }

    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }

    pub fn with_trial(mut self, trial: u64) -> Self {
        self.inputs.trial = Some(trial);
        self
    }

    pub fn check(&self) -> CheckKind {
        self.check
    }

    pub fn inputs(&self) -> &InputsDigest {
        &self.inputs
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn skip_reason(&self) -> Option<&SkipReason> {
        self.skip.as_ref()
    }

    pub fn lhs(&self) -> Option<&[String]> {
        self.lhs.as_deref()
    }

    pub fn rhs(&self) -> Option<&[String]> {
        self.rhs.as_deref()
    }

    pub fn detail(&self) -> &[String] {
        &self.detail
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Pass / fail / skip counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

impl Tally {
    pub fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::PreconditionSkipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.pass + self.fail + self.skipped
    }

    pub fn of<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Self {
        let mut t = Tally::default();
        for r in reports {
            t.record(r.verdict());
        }
        t
    }
}
