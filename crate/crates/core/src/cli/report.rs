//! Run reports: one JSON document per invocation plus a plain-text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::theorems::{CampaignReport, CheckKind, CheckReport, FuzzConfig, Tally, Verdict};

use super::exit;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_outcomes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_bands: Option<usize>,
    pub ie_cap: usize,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub trials_run: u64,
    pub aborted_at_trial: Option<u64>,
    pub by_check: BTreeMap<CheckKind, Tally>,
    pub nonzero_but_singular: u64,
    pub rejected_draws: u64,
    pub rejected_nonzero_but_singular: u64,
}

/// Everything one invocation produced. `summary` is always the tally of
/// `reports`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config: ConfigEcho,
    pub summary: Tally,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub campaign: Option<CampaignSummary>,
    pub reports: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(
        config: ConfigEcho,
        reports: Vec<CheckReport>,
        campaign: Option<CampaignSummary>,
    ) -> Self {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary: Tally::of(&reports),
            campaign,
            reports,
        }
    }

    pub fn from_campaign(config: &FuzzConfig, campaign: CampaignReport) -> Self {
        let echo = ConfigEcho {
            command: "fuzz".into(),
            seed: Some(config.seed),
            trials: Some(config.trials),
            max_outcomes: Some(config.max_outcomes),
            max_bands: Some(config.max_bands),
            ie_cap: config.ie_cap,
            inject_fault: config.inject_fault,
            ..Default::default()
        };
        let summary = CampaignSummary {
            trials_run: campaign.trials_run,
            aborted_at_trial: campaign.aborted_at_trial,
            by_check: campaign.by_check,
            nonzero_but_singular: campaign.nonzero_but_singular,
            rejected_draws: campaign.rejected_draws,
            rejected_nonzero_but_singular: campaign.rejected_nonzero_but_singular,
        };
        Self::new(echo, campaign.reports, Some(summary))
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            exit::CHECK_FAILED
        } else if self.summary.skipped > 0 {
            exit::PRECONDITION_SKIPPED
        } else {
            exit::OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut s = String::new();
        match &self.campaign {
            None => {
                for r in &self.reports {
                    render_report(&mut s, r);
                }
            }
            Some(c) => {
                let _ = writeln!(
                    s,
                    "{:<22}{:>8}{:>8}{:>10}",
                    "check", "pass", "fail", "skipped"
                );
                for (kind, t) in &c.by_check {
                    let _ = writeln!(
                        s,
                        "{:<22}{:>8}{:>8}{:>10}",
                        kind.name(),
                        t.pass,
                        t.fail,
                        t.skipped
                    );
                }
                let _ = writeln!(s, "trials run: {}", c.trials_run);
                if let Some(trial) = c.aborted_at_trial {
                    let _ = writeln!(s, "aborted at trial {trial}");
                }
                let _ = writeln!(
                    s,
                    "skips where the singular element was nonzero: {}",
                    c.nonzero_but_singular
                );
                let _ = writeln!(
                    s,
                    "redrawn instances: {} ({} with a nonzero singular element)",
                    c.rejected_draws, c.rejected_nonzero_but_singular
                );
                for r in self.reports.iter().filter(|r| r.verdict() == Verdict::Fail) {
                    render_report(&mut s, r);
                }
            }
        }
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} precondition-skipped",
            self.summary.pass, self.summary.fail, self.summary.skipped
        );
        s
    }
}

fn render_report(s: &mut String, r: &CheckReport) {
    let _ = writeln!(s, "{:<22}{}", r.check().name(), r.verdict().name());
    let inputs = r.inputs();
    let _ = writeln!(s, "  space        {}", inputs.space);
    if !inputs.bands.is_empty() {
        let _ = writeln!(s, "  bands        {}", inputs.bands.join(" "));
    }
    if let Some(p) = &inputs.partition {
        let _ = writeln!(s, "  partition    {p}");
    }
    if let Some(t) = &inputs.expectation {
        let _ = writeln!(s, "  expectation  {t}");
    }
    if let Some(f) = &inputs.f {
        let _ = writeln!(s, "  f            {f}");
    }
    if let Some(trial) = inputs.trial {
        let _ = writeln!(s, "  trial        {trial}");
    }
    if let Some(lhs) = r.lhs() {
        let _ = writeln!(s, "  lhs          ({})", lhs.join(", "));
    }
    if let Some(rhs) = r.rhs() {
        let _ = writeln!(s, "  rhs          ({})", rhs.join(", "));
    }
    for line in r.detail() {
        let _ = writeln!(s, "  {line}");
    }
    if let Some(w) = r.witness() {
        let _ = writeln!(
            s,
            "  witness      outcome `{}` (#{}): lhs {} vs rhs {} [{}]",
            w.outcome, w.index, w.lhs, w.rhs, w.note
        );
    }
    if let Some(skip) = r.skip_reason() {
        let _ = writeln!(s, "  skipped      {}", skip.message);
    }
}
