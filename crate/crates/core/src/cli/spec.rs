//! The space specification file.
//!
//! ```toml
//! outcomes = ["1", "2", "3", "4"]
//! weights = ["1/4", "1/4", "1/4", "1/4"]
//!
//! [events]
//! D = ["2", "3"]
//!
//! [partitions]
//! halves = [["1", "2"], ["3", "4"]]
//! ```
//!
//! Weights are strings `"p/q"` or `"p"`, or bare TOML integers. Decimal
//! values are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bands::Band;
use crate::cond_expectation::{Partition, PartitionError};
use crate::riesz_core::{FiniteSampleSpace, Rational, RieszError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceSpec {
    pub outcomes: Vec<String>,
    pub weights: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub partitions: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    outcomes: Vec<String>,
    weights: Vec<RawScalar>,
    #[serde(default)]
    events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    partitions: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Float(f64),
    Text(String),
}

/// Errors from reading a spec, split into the two classes the CLI reports
/// with different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    Invariant(String),
}

impl SpaceSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let raw: RawSpec =
            toml::from_str(text).map_err(|e| SpecError::Parse(e.message().to_string()))?;
        let weights = raw
            .weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| match w {
                RawScalar::Int(n) => Ok(n.to_string()),
                RawScalar::Text(s) => Ok(s),
                RawScalar::Float(x) => Err(SpecError::Parse(format!(
                    "weight {} is the decimal {x}; write it as a fraction p/q",
                    i + 1
                ))),
            })
            .collect::<Result<_, _>>()?;
        Ok(SpaceSpec {
            outcomes: raw.outcomes,
            weights,
            events: raw.events,
            partitions: raw.partitions,
        })
    }

    /// Builds and validates every object the spec describes.
    pub fn load(&self) -> Result<LoadedSpec, SpecError> {
        let weights = self
            .weights
            .iter()
            .map(|w| w.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SpecError::Parse(e.to_string()))?;
        let space = FiniteSampleSpace::new(self.outcomes.iter().cloned(), weights).map_err(
            |e| match e {
                RieszError::DuplicateOutcome(_) => SpecError::Parse(e.to_string()),
                other => SpecError::Invariant(other.to_string()),
            },
        )?;
        let mut events = BTreeMap::new();
        for (name, members) in &self.events {
            let band = Band::from_labels(&space, members)
                .map_err(|e| SpecError::Invariant(format!("event `{name}`: {e}")))?;
            events.insert(name.clone(), band);
        }
        let mut partitions = BTreeMap::new();
        for (name, blocks) in &self.partitions {
            let p = Partition::from_label_blocks(&space, blocks).map_err(|e| {
                let msg = match e {
                    PartitionError::Overlap(label) => {
                        format!("blocks overlap: outcome `{label}` appears in more than one block")
                    }
                    other => other.to_string(),
                };
                SpecError::Invariant(format!("partition `{name}`: {msg}"))
            })?;
            partitions.insert(name.clone(), p);
        }
        Ok(LoadedSpec {
            space,
            events,
            partitions,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }
}

/// A validated spec.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub space: FiniteSampleSpace,
    pub events: BTreeMap<String, Band>,
    pub partitions: BTreeMap<String, Partition>,
}

impl LoadedSpec {
    /// The canonical form: reduced weights, event members and partition
    /// blocks in outcome order, blocks ordered by their first outcome.
    pub fn normalized(&self) -> SpaceSpec {
        let labels = |ids: &mut dyn Iterator<Item = usize>| -> Vec<String> {
            ids.map(|i| self.space.label(i).to_string()).collect()
        };
        SpaceSpec {
            outcomes: self.space.outcomes().to_vec(),
            weights: self
                .space
                .weights()
                .iter()
                .map(ToString::to_string)
                .collect(),
            events: self
                .events
                .iter()
                .map(|(name, band)| (name.clone(), labels(&mut band.members().iter().copied())))
                .collect(),
            partitions: self
                .partitions
                .iter()
                .map(|(name, p)| {
                    let mut blocks: Vec<&Vec<usize>> = p.blocks().iter().collect();
                    blocks.sort_by_key(|b| b[0]);
                    let blocks = blocks
                        .into_iter()
                        .map(|b| labels(&mut b.iter().copied()))
                        .collect();
                    (name.clone(), blocks)
                })
                .collect(),
        }
    }
}

pub fn load_str(text: &str) -> Result<LoadedSpec, SpecError> {
    SpaceSpec::parse(text)?.load()
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIFORM: &str = r#"
outcomes = ["1", "2", "3", "4"]
weights = ["2/8", "1/4", 1, "-3/4"]

[events]
D = ["3", "2", "3"]

[partitions]
halves = [["4", "3"], ["2", "1"]]
"#;

    #[test]
    fn integer_weights_and_normalization() {
        let loaded = load_str(UNIFORM).unwrap_err();
        assert!(matches!(loaded, SpecError::Invariant(_)), "{loaded:?}");

        let text = UNIFORM.replace(r#"1, "-3/4""#, r#""1/4", "1/4""#);
        let loaded = load_str(&text).unwrap();
        let norm = loaded.normalized();
        assert_eq!(norm.weights, vec!["1/4"; 4]);
        assert_eq!(norm.events["D"], vec!["2", "3"]);
        assert_eq!(
            norm.partitions["halves"],
            vec![vec!["1", "2"], vec!["3", "4"]]
        );
    }

    #[test]
    fn normalized_round_trips() {
        let text = UNIFORM.replace(r#"1, "-3/4""#, r#""1/4", "1/4""#);
        let norm = load_str(&text).unwrap().normalized();
        let again = SpaceSpec::parse(&norm.to_toml()).unwrap();
        assert_eq!(again, norm);
        assert_eq!(again.load().unwrap().normalized(), norm);
    }

    #[test]
    fn weight_sum_is_named() {
        let err =
            load_str("outcomes = [\"a\", \"b\"]\nweights = [\"1/2\", \"5/8\"]\n").unwrap_err();
        assert_eq!(
            err,
            SpecError::Invariant("weights sum to 9/8, expected exactly 1".into())
        );
    }

    #[test]
    fn decimals_are_parse_errors() {
        let err = load_str("outcomes = [\"a\", \"b\"]\nweights = [0.5, 0.5]\n").unwrap_err();
        assert!(
            matches!(&err, SpecError::Parse(m) if m.contains("p/q")),
            "{err}"
        );
        let err =
            load_str("outcomes = [\"a\", \"b\"]\nweights = [\"0.5\", \"1/2\"]\n").unwrap_err();
        assert!(
            matches!(&err, SpecError::Parse(m) if m.contains("p/q")),
            "{err}"
        );
    }

    #[test]
    fn duplicate_label_is_parse_error() {
        let err =
            load_str("outcomes = [\"a\", \"a\"]\nweights = [\"1/2\", \"1/2\"]\n").unwrap_err();
        assert!(
            matches!(&err, SpecError::Parse(m) if m.contains("`a`")),
            "{err}"
        );
    }

    #[test]
    fn overlapping_blocks() {
        let err = load_str(
            "outcomes = [\"a\", \"b\"]\nweights = [\"1/2\", \"1/2\"]\n[partitions]\np = [[\"a\", \"b\"], [\"b\"]]\n",
        )
        .unwrap_err();
        assert!(
            matches!(&err, SpecError::Invariant(m) if m.contains("overlap")),
            "{err}"
        );
    }

    #[test]
    fn unknown_fields_and_outcomes() {
        assert!(matches!(
            load_str("outcomes = [\"a\"]\nweights = [1]\nextra = 1\n"),
            Err(SpecError::Parse(_))
        ));
        assert!(matches!(
            load_str("outcomes = [\"a\"]\nweights = [1]\n[events]\nA = [\"z\"]\n"),
            Err(SpecError::Invariant(_))
        ));
    }
}
