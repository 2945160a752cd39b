//! Bands, band projections and the inclusion-exclusion expansion.
//!
//! In the finite function space a band is the set of functions vanishing
//! off a fixed subset of outcomes, so bands are stored extensionally as
//! sorted outcome-index sets. The band projection onto `B` multiplies by
//! the indicator of `B`. Bands form a Boolean algebra: meet is
//! intersection, the sum `B₁ + … + Bₙ` is union, and the disjoint
//! complement `Bᵈ` is the set complement.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::riesz_core::{Element, FiniteSampleSpace, Rational, RieszError};

/// Upper bound on the number of bands accepted by
/// [`inclusion_exclusion_expand`]; the expansion has `2ⁿ − 1` terms.
pub const DEFAULT_IE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error("inclusion-exclusion needs at least one band")]
    EmptyBandList,
    #[error("{count} bands exceed the inclusion-exclusion cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
}

/// A band of the finite function space, identified by its outcome set.
#[derive(Clone, PartialEq, Eq)]
pub struct Band {
    space: FiniteSampleSpace,
    members: BTreeSet<usize>,
}

impl Band {
    pub fn from_indices(
        space: &FiniteSampleSpace,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, RieszError> {
        let members: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= space.len()) {
            return Err(RieszError::IndexOutOfRange {
                index: bad,
                len: space.len(),
            });
        }
        Ok(Band {
            space: space.clone(),
            members,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        space: &FiniteSampleSpace,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, RieszError> {
        let indices = labels
            .into_iter()
            .map(|l| space.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(space, indices)
    }

    /// The zero band `{0}`.
    pub fn zero(space: &FiniteSampleSpace) -> Self {
        Band {
            space: space.clone(),
            members: BTreeSet::new(),
        }
    }

    /// The whole space.
    pub fn full(space: &FiniteSampleSpace) -> Self {
        Band {
            space: space.clone(),
            members: (0..space.len()).collect(),
        }
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.space.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|&i| self.space.label(i)).collect()
    }

    /// Indicator of the outcome set, i.e. `P_B(e)`.
    pub fn indicator(&self) -> Element {
        Element::indicator(&self.space, self.members.iter().copied())
            .expect("band members are in range")
    }

    /// The band projection `P_B f = 1_B · f`.
    pub fn project(&self, f: &Element) -> Result<Element, RieszError> {
        self.space.ensure_same(f.space())?;
        let coords = f
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.members.contains(&i) {
                    c.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Element::new(&self.space, coords)
    }

    pub fn meet(&self, other: &Band) -> Result<Band, RieszError> {
        self.space.ensure_same(&other.space)?;
        Ok(Band {
            space: self.space.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    /// The disjoint complement `Bᵈ`.
    pub fn complement(&self) -> Band {
        Band {
            space: self.space.clone(),
            members: (0..self.space.len())
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Band) -> Result<bool, RieszError> {
        self.space.ensure_same(&other.space)?;
        Ok(self.members.is_disjoint(&other.members))
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Debug for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Band{self}")
    }
}

/// `P_A P_B = P_{A ∩ B}`.
pub fn band_meet(a: &Band, b: &Band) -> Result<Band, RieszError> {
    a.meet(b)
}

/// The sum band `B₁ + … + Bₙ`. An empty list yields the zero band.
pub fn band_join(space: &FiniteSampleSpace, bands: &[Band]) -> Result<Band, RieszError> {
    let mut members = BTreeSet::new();
    for b in bands {
        space.ensure_same(&b.space)?;
        members.extend(b.members.iter().copied());
    }
    Ok(Band {
        space: space.clone(),
        members,
    })
}

pub fn band_complement(a: &Band) -> Band {
    a.complement()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of_subset_size(k: usize) -> Sign {
        if k % 2 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One summand `±P_{B_{i₁} ∩ … ∩ B_{iₖ}}` of an inclusion-exclusion expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTerm {
    pub sign: Sign,
    pub band: Band,
    /// Zero-based positions of the intersected bands in the input list.
    pub selection: Vec<usize>,
}

/// A formal signed sum of band projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedProjectionSum {
    space: FiniteSampleSpace,
    terms: Vec<SignedTerm>,
}

impl SignedProjectionSum {
    pub fn new(space: &FiniteSampleSpace, terms: Vec<SignedTerm>) -> Result<Self, RieszError> {
        for t in &terms {
            space.ensure_same(&t.band.space)?;
        }
        Ok(SignedProjectionSum {
            space: space.clone(),
            terms,
        })
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn terms(&self) -> &[SignedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates `Σ sign · P_band(f)`.
    pub fn apply(&self, f: &Element) -> Result<Element, RieszError> {
        self.space.ensure_same(f.space())?;
        let mut acc = vec![Rational::zero(); self.space.len()];
        for term in &self.terms {
            for &i in term.band.members() {
                let c = f.coord(i);
                acc[i] = match term.sign {
                    Sign::Plus => &acc[i] + c,
                    Sign::Minus => &acc[i] - c,
                };
            }
        }
        Element::new(&self.space, acc)
    }
}

/// Expands `P_{B₁+…+Bₙ}` into the alternating sum over all nonempty
/// intersections.
///
/// Terms come in order of subset size, then lexicographically by the
/// selected positions; the term for a selection of size `k` carries sign
/// `(−1)^(k−1)`. Empty intersections are kept so the expansion always has
/// exactly `2ⁿ − 1` terms.
pub fn inclusion_exclusion_expand(
    bands: &[Band],
    cap: usize,
) -> Result<SignedProjectionSum, BandError> {
    let first = bands.first().ok_or(BandError::EmptyBandList)?;
    if bands.len() > cap {
        return Err(BandError::CapExceeded {
            count: bands.len(),
            cap,
        });
    }
    let space = first.space.clone();
    for b in bands {
        space.ensure_same(&b.space)?;
    }
    let n = bands.len();
    let mut terms = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n {
        for selection in Combinations::new(n, k) {
            let mut members = bands[selection[0]].members.clone();
            for &i in &selection[1..] {
                members.retain(|m| bands[i].members.contains(m));
            }
            terms.push(SignedTerm {
                sign: Sign::of_subset_size(k),
                band: Band {
                    space: space.clone(),
                    members,
                },
                selection,
            });
        }
    }
    Ok(SignedProjectionSum { space, terms })
}

pub fn apply_signed_sum(s: &SignedProjectionSum, f: &Element) -> Result<Element, RieszError> {
    s.apply(f)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> FiniteSampleSpace {
        FiniteSampleSpace::uniform(["a", "b", "c"]).unwrap()
    }

    fn band(s: &FiniteSampleSpace, labels: &[&str]) -> Band {
        Band::from_labels(s, labels).unwrap()
    }

    #[test]
    fn projection_zeroes_outside() {
        let s = abc();
        let f = Element::from_integers(&s, &[1, 2, 3]).unwrap();
        let b = band(&s, &["a", "b"]);
        assert_eq!(
            b.project(&f).unwrap(),
            Element::from_integers(&s, &[1, 2, 0]).unwrap()
        );
        assert_eq!(Band::full(&s).project(&f).unwrap(), f);
        assert!(Band::zero(&s).project(&f).unwrap().is_zero());
    }

    #[test]
    fn canonical_storage() {
        let s = abc();
        assert_eq!(band(&s, &["c", "a", "c"]), band(&s, &["a", "c"]));
        assert_eq!(band(&s, &["c", "a"]).to_string(), "{a,c}");
    }

    #[test]
    fn unknown_label() {
        let s = abc();
        assert_eq!(
            Band::from_labels(&s, ["z"]).unwrap_err(),
            RieszError::UnknownOutcome("z".into())
        );
    }

    #[test]
    fn boolean_operations() {
        let s = abc();
        let ab = band(&s, &["a", "b"]);
        let bc = band(&s, &["b", "c"]);
        assert_eq!(band_meet(&ab, &bc).unwrap(), band(&s, &["b"]));
        let joined = band_join(
            &s,
            &[band(&s, &["a"]), band(&s, &["b"]), band(&s, &["a", "c"])],
        );
        assert_eq!(joined.unwrap(), Band::full(&s));
        assert!(band_meet(&ab, &band_complement(&ab)).unwrap().is_zero());
        assert!(band_join(&s, &[ab.clone(), ab.complement()])
            .unwrap()
            .is_full());
        assert!(band_join(&s, &[]).unwrap().is_zero());
    }

    #[test]
    fn two_band_expansion() {
        let s = abc();
        let b1 = band(&s, &["a", "b"]);
        let b2 = band(&s, &["b", "c"]);
        let sum = inclusion_exclusion_expand(&[b1.clone(), b2.clone()], DEFAULT_IE_CAP).unwrap();
        let shape: Vec<(Sign, Band)> = sum
            .terms()
            .iter()
            .map(|t| (t.sign, t.band.clone()))
            .collect();
        assert_eq!(
            shape,
            vec![
                (Sign::Plus, b1.clone()),
                (Sign::Plus, b2.clone()),
                (Sign::Minus, band_meet(&b1, &b2).unwrap()),
            ]
        );
    }

    #[test]
    fn single_band_expansion() {
        let s = abc();
        let b = band(&s, &["c"]);
        let sum = inclusion_exclusion_expand(std::slice::from_ref(&b), DEFAULT_IE_CAP).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.terms()[0].sign, Sign::Plus);
        assert_eq!(sum.terms()[0].band, b);
    }

    #[test]
    fn expansion_term_order_and_count() {
        let s = abc();
        let bands = vec![
            band(&s, &["a"]),
            band(&s, &["b"]),
            band(&s, &["c"]),
            band(&s, &["a"]),
        ];
        let sum = inclusion_exclusion_expand(&bands, DEFAULT_IE_CAP).unwrap();
        assert_eq!(sum.len(), 15);
        let selections: Vec<Vec<usize>> = sum.terms().iter().map(|t| t.selection.clone()).collect();
        assert_eq!(
            &selections[..5],
            &[vec![0], vec![1], vec![2], vec![3], vec![0, 1]]
        );
        assert_eq!(selections[14], vec![0, 1, 2, 3]);
        // Empty intersections are retained.
        assert!(sum.terms()[4].band.is_zero());
        assert_eq!(sum.terms()[14].sign, Sign::Minus);
    }

    #[test]
    fn expansion_errors() {
        let s = abc();
        assert_eq!(
            inclusion_exclusion_expand(&[], DEFAULT_IE_CAP).unwrap_err(),
            BandError::EmptyBandList
        );
        let many = vec![Band::full(&s); 4];
        assert_eq!(
            inclusion_exclusion_expand(&many, 3).unwrap_err(),
            BandError::CapExceeded { count: 4, cap: 3 }
        );
        let other = FiniteSampleSpace::uniform(["x"]).unwrap();
        assert_eq!(
            inclusion_exclusion_expand(&[Band::full(&s), Band::full(&other)], 12).unwrap_err(),
            BandError::Riesz(RieszError::SpaceMismatch)
        );
    }

    #[test]
    fn signed_sum_cancellation() {
        let s = abc();
        let b = band(&s, &["a", "c"]);
        let f = Element::from_integers(&s, &[4, -5, 6]).unwrap();
        let cancel = SignedProjectionSum::new(
            &s,
            vec![
                SignedTerm {
                    sign: Sign::Plus,
                    band: b.clone(),
                    selection: vec![0],
                },
                SignedTerm {
                    sign: Sign::Minus,
                    band: b,
                    selection: vec![1],
                },
            ],
        )
        .unwrap();
        assert!(apply_signed_sum(&cancel, &f).unwrap().is_zero());
        let identity = SignedProjectionSum::new(
            &s,
            vec![SignedTerm {
                sign: Sign::Plus,
                band: Band::full(&s),
                selection: vec![0],
            }],
        )
        .unwrap();
        assert_eq!(identity.apply(&f).unwrap(), f);
    }

    #[test]
    fn combinations_enumerate_binomials() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(
            Combinations::new(4, 4).collect::<Vec<_>>(),
            vec![vec![0, 1, 2, 3]]
        );
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }
}
