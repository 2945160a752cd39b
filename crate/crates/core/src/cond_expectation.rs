//! Conditional expectations induced by partitions of the sample space.
//!
//! For a partition into blocks `C₁, …, Cₘ`, the operator `T` replaces `f` on
//! each block by its weighted block average
//!
//! ```text
//! (T f)(ω) = Σ_{ω' ∈ C} w(ω') f(ω') / Σ_{ω' ∈ C} w(ω'),   ω ∈ C.
//! ```
//!
//! This is the classical `E[f | σ(partition)]`. It is a strictly positive
//! projection fixing `e`, its range is the block-constant functions, and it
//! satisfies the averaging identity `T(g · Tf) = Tg · Tf`. Order continuity
//! holds for every linear operator on a finite-dimensional space, so the
//! axiom verifier does not test it.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::riesz_core::{Element, FiniteSampleSpace, Rational, RieszError};

/// A partition of the outcomes into nonempty, pairwise disjoint blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    space: FiniteSampleSpace,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("outcome `{0}` appears in more than one block")]
    Overlap(String),
    #[error("outcome `{0}` is not covered by any block")]
    Uncovered(String),
}

impl Partition {
    pub fn from_index_blocks(
        space: &FiniteSampleSpace,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self, PartitionError> {
        let mut block_of = vec![usize::MAX; space.len()];
        let mut normalized = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock(b));
            }
            let mut members: Vec<usize> = block
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            members.shrink_to_fit();
            for &i in &members {
                if i >= space.len() {
                    return Err(RieszError::IndexOutOfRange {
                        index: i,
                        len: space.len(),
                    }
                    .into());
                }
                if block_of[i] != usize::MAX {
                    return Err(PartitionError::Overlap(space.label(i).to_string()));
                }
                block_of[i] = b;
            }
            normalized.push(members);
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Uncovered(space.label(i).to_string()));
        }
        Ok(Partition {
            space: space.clone(),
            blocks: normalized,
            block_of,
        })
    }

    pub fn from_label_blocks<S: AsRef<str>>(
        space: &FiniteSampleSpace,
        blocks: &[Vec<S>],
    ) -> Result<Self, PartitionError> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| space.index_of(l.as_ref()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_index_blocks(space, blocks)
    }

    /// The one-block partition; its operator is the full expectation.
    pub fn trivial(space: &FiniteSampleSpace) -> Self {
        Self::from_index_blocks(space, vec![(0..space.len()).collect()])
            .expect("one block covering everything")
    }

    /// The partition into singletons; its operator is the identity.
    pub fn discrete(space: &FiniteSampleSpace) -> Self {
        Self::from_index_blocks(space, (0..space.len()).map(|i| vec![i]).collect())
            .expect("singletons partition the space")
    }

    /// Builds a partition from a block label per outcome. Labels need not be
    /// contiguous; blocks are ordered by first occurrence.
    pub fn from_assignment(
        space: &FiniteSampleSpace,
        assignment: &[usize],
    ) -> Result<Self, PartitionError> {
        if assignment.len() != space.len() {
            return Err(RieszError::DimensionMismatch {
                expected: space.len(),
                actual: assignment.len(),
            }
            .into());
        }
        let mut order: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &label) in assignment.iter().enumerate() {
            match order.iter().position(|&l| l == label) {
                Some(b) => blocks[b].push(i),
                None => {
                    order.push(label);
                    blocks.push(vec![i]);
                }
            }
        }
        Self::from_index_blocks(space, blocks)
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, index: usize) -> usize {
        self.block_of[index]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `true` when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.space.same_as(&coarser.space)
            && self.blocks.iter().all(|block| {
                let target = coarser.block_of(block[0]);
                block.iter().all(|&i| coarser.block_of(i) == target)
            })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let labels: Vec<&str> = b.iter().map(|&i| self.space.label(i)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// The block-averaging conditional expectation `T` of a partition.
#[derive(Clone, PartialEq, Eq)]
pub struct CondExpectation {
    partition: Partition,
    block_weights: Vec<Rational>,
}

impl CondExpectation {
    pub fn new(partition: Partition) -> Self {
        let block_weights = partition
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| partition.space.weight(i)).sum())
            .collect();
        CondExpectation {
            partition,
            block_weights,
        }
    }

    /// The expectation operator `f ↦ E[f]·e`.
    pub fn expectation(space: &FiniteSampleSpace) -> Self {
        Self::new(Partition::trivial(space))
    }

    /// Fault injection: replaces the normalizing weight of one block. The
    /// result is no longer a conditional expectation; it exists to confirm
    /// that [`verify_axioms`] notices.
    pub fn with_corrupted_block_weight(mut self, block: usize, weight: Rational) -> Self {
        self.block_weights[block] = weight;
        self
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.partition.space
    }

    pub fn block_weights(&self) -> &[Rational] {
        &self.block_weights
    }

    pub fn apply(&self, f: &Element) -> Result<Element, RieszError> {
        let space = &self.partition.space;
        space.ensure_same(f.space())?;
        let averages: Vec<Rational> = self
            .partition
            .blocks
            .iter()
            .zip(&self.block_weights)
            .map(|(block, total)| {
                let mass: Rational = block.iter().map(|&i| space.weight(i) * f.coord(i)).sum();
                mass / total
            })
            .collect();
        let coords = (0..space.len())
            .map(|i| averages[self.partition.block_of[i]].clone())
            .collect();
        Element::new(space, coords)
    }

    /// `true` when `f` is constant on every block, i.e. lies in the range of `T`.
    pub fn is_measurable(&self, f: &Element) -> bool {
        self.partition
            .blocks
            .iter()
            .all(|b| b.iter().all(|&i| f.coord(i) == f.coord(b[0])))
    }
}

impl fmt::Debug for CondExpectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CondExpectation({})", self.partition)
    }
}

pub fn apply_t(t: &CondExpectation, f: &Element) -> Result<Element, RieszError> {
    t.apply(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Positivity,
    StrictPositivity,
    Projection,
    UnitPreservation,
    Linearity,
    RangeBlockConstant,
    RangeLatticeClosed,
    Averaging,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Positivity,
        Axiom::StrictPositivity,
        Axiom::Projection,
        Axiom::UnitPreservation,
        Axiom::Linearity,
        Axiom::RangeBlockConstant,
        Axiom::RangeLatticeClosed,
        Axiom::Averaging,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Positivity => "positivity",
            Axiom::StrictPositivity => "strict-positivity",
            Axiom::Projection => "projection",
            Axiom::UnitPreservation => "unit-preservation",
            Axiom::Linearity => "linearity",
            Axiom::RangeBlockConstant => "range-block-constant",
            Axiom::RangeLatticeClosed => "range-lattice-closed",
            Axiom::Averaging => "averaging",
        }
    }
}

/// A counterexample: the inputs fed to the operator and the two sides that
/// should have agreed (or the offending value and its bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub inputs: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub cases: usize,
    pub witness: Option<AxiomWitness>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn first_failure(&self) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

struct Tally {
    axiom: Axiom,
    cases: usize,
    witness: Option<AxiomWitness>,
}

impl Tally {
    fn new(axiom: Axiom) -> Self {
        Tally {
            axiom,
            cases: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> AxiomWitness) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> AxiomOutcome {
        AxiomOutcome {
            axiom: self.axiom,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

/// Checks the conditional-expectation axioms on `samples` together with the
/// unit and every basis vector.
///
/// Positivity is tested on `|f|` and strict positivity on every nonzero
/// `|f|`, so arbitrary signed samples are useful. Linearity and the
/// averaging identity are tested on all ordered pairs of test vectors.
pub fn verify_axioms(t: &CondExpectation, samples: &[Element]) -> Result<AxiomReport, RieszError> {
    let space = t.space().clone();
    for s in samples {
        space.ensure_same(s.space())?;
    }
    let unit = Element::unit(&space);
    let mut vectors: Vec<Element> = samples.to_vec();
    vectors.push(unit.clone());
    for i in 0..space.len() {
        vectors.push(Element::basis(&space, i)?);
    }
    let images: Vec<Element> = vectors
        .iter()
        .map(|v| t.apply(v))
        .collect::<Result<_, _>>()?;
    let zero = Element::zero(&space);

    let mut positivity = Tally::new(Axiom::Positivity);
    let mut strict = Tally::new(Axiom::StrictPositivity);
    let mut projection = Tally::new(Axiom::Projection);
    let mut unit_pres = Tally::new(Axiom::UnitPreservation);
    let mut linearity = Tally::new(Axiom::Linearity);
    let mut range = Tally::new(Axiom::RangeBlockConstant);
    let mut lattice = Tally::new(Axiom::RangeLatticeClosed);
    let mut averaging = Tally::new(Axiom::Averaging);

    let t_unit = t.apply(&unit)?;
    unit_pres.record(t_unit == unit, || AxiomWitness {
        inputs: vec![unit.clone()],
        lhs: t_unit.clone(),
        rhs: unit.clone(),
        note: "T(e) = e".into(),
    });

    for (v, tv) in vectors.iter().zip(&images) {
        let pos = v.abs();
        let t_pos = t.apply(&pos)?;
        positivity.record(t_pos.is_nonnegative(), || AxiomWitness {
            inputs: vec![pos.clone()],
            lhs: t_pos.clone(),
            rhs: zero.clone(),
            note: "f >= 0 but T f has a negative coordinate".into(),
        });
        if pos.is_strictly_positive() {
            strict.record(t_pos.is_strictly_positive(), || AxiomWitness {
                inputs: vec![pos.clone()],
                lhs: t_pos.clone(),
                rhs: zero.clone(),
                note: "f > 0 but T f is not > 0".into(),
            });
        }

        let ttv = t.apply(tv)?;
        projection.record(&ttv == tv, || AxiomWitness {
            inputs: vec![v.clone()],
            lhs: ttv.clone(),
            rhs: tv.clone(),
            note: "T(T f) = T f".into(),
        });

        range.record(t.is_measurable(tv), || AxiomWitness {
            inputs: vec![v.clone()],
            lhs: tv.clone(),
            rhs: tv.clone(),
            note: "T f is not constant on a block".into(),
        });
    }

    let a = Rational::from(3);
    let b = Rational::new(-1, 2).expect("nonzero denominator");
    for (i, (f, tf)) in vectors.iter().zip(&images).enumerate() {
        for (g, tg) in vectors.iter().zip(&images).skip(i) {
            let combo = f.scalar_mul(&a).add(&g.scalar_mul(&b))?;
            let lhs = t.apply(&combo)?;
            let rhs = tf.scalar_mul(&a).add(&tg.scalar_mul(&b))?;
            linearity.record(lhs == rhs, || AxiomWitness {
                inputs: vec![f.clone(), g.clone()],
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                note: "T(3f - g/2) = 3 T f - T g / 2".into(),
            });

            for (sup_or_inf, joined) in [("sup", tf.sup(tg)?), ("inf", tf.inf(tg)?)] {
                lattice.record(t.is_measurable(&joined), || AxiomWitness {
                    inputs: vec![tf.clone(), tg.clone()],
                    lhs: joined.clone(),
                    rhs: joined.clone(),
                    note: format!("{sup_or_inf} of range elements left the range"),
                });
            }
        }
        for (g, tg) in vectors.iter().zip(&images) {
            let lhs = t.apply(&g.mul(tf)?)?;
            let rhs = tg.mul(tf)?;
            averaging.record(lhs == rhs, || AxiomWitness {
                inputs: vec![g.clone(), f.clone()],
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                note: "T(g * T f) = T g * T f".into(),
            });
        }
    }

    Ok(AxiomReport {
        outcomes: vec![
            positivity.finish(),
            strict.finish(),
            projection.finish(),
            unit_pres.finish(),
            linearity.finish(),
            range.finish(),
            lattice.finish(),
            averaging.finish(),
        ],
    })
}

/// Tower property for nested partitions: with `fine` refining `coarse`,
/// `T_coarse ∘ T_fine = T_fine ∘ T_coarse = T_coarse` on every basis vector.
/// Returns the first basis index where it fails, or `None`.
pub fn check_tower(
    fine: &CondExpectation,
    coarse: &CondExpectation,
) -> Result<Option<usize>, RieszError> {
    let space = fine.space();
    space.ensure_same(coarse.space())?;
    for i in 0..space.len() {
        let delta = Element::basis(space, i)?;
        let direct = coarse.apply(&delta)?;
        let coarse_after_fine = coarse.apply(&fine.apply(&delta)?)?;
        let fine_after_coarse = fine.apply(&direct)?;
        if coarse_after_fine != direct || fine_after_coarse != direct {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
