//! Worked examples with hand-computed values, and exhaustive sweeps
//! against the classical oracle on small spaces.

mod common;

use std::collections::BTreeSet;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_prob::bands::{band_join, inclusion_exclusion_expand, DEFAULT_IE_CAP};
use riesz_prob::theorems::fuzz::{random_band, random_space};
use riesz_prob::theorems::{
    check_bayes, check_correspondence, check_ltp, classical_oracle, ltp_sides, Verdict,
};
use riesz_prob::{
    cond_prob, independent, Band, BandPartition, CondExpectation, Element, FiniteSampleSpace,
    Partition, Rational,
};

fn uniform(n: usize) -> FiniteSampleSpace {
    FiniteSampleSpace::uniform((1..=n).map(|i| i.to_string())).unwrap()
}

fn band(s: &FiniteSampleSpace, ids: &[usize]) -> Band {
    Band::from_indices(s, ids.iter().copied()).unwrap()
}

fn el(s: &FiniteSampleSpace, c: &[&str]) -> Element {
    Element::new(s, c.iter().map(|x| q(x)).collect()).unwrap()
}

#[test]
fn conditional_probability_on_a_die() {
    // Fair die, A = even, B = {1..4}: P(A|B) = 2/4.
    let s = uniform(6);
    let t = CondExpectation::expectation(&s);
    let r = cond_prob(
        &t,
        &band(&s, &[1, 3, 5]),
        &band(&s, &[0, 1, 2, 3]),
        &Element::unit(&s),
    )
    .unwrap();
    assert_eq!(r.value, Element::constant(&s, q("1/2")));
    assert_eq!(r.denominator, Element::constant(&s, q("2/3")));
}

#[test]
fn conditional_probability_with_block_averaging() {
    // T averages over {1,2} and {3,4} under weights 1/8, 3/8, 1/4, 1/4.
    let s = FiniteSampleSpace::new(
        ["1", "2", "3", "4"],
        vec![q("1/8"), q("3/8"), q("1/4"), q("1/4")],
    )
    .unwrap();
    let t = CondExpectation::new(
        Partition::from_index_blocks(&s, vec![vec![0, 1], vec![2, 3]]).unwrap(),
    );
    let f = el(&s, &["2", "1", "4", "-2"]);
    let r = cond_prob(&t, &band(&s, &[1, 2]), &band(&s, &[0, 1, 2]), &f).unwrap();
    // Block one: T P_B2 f = (1/8·2 + 3/8·1)/(1/2) = 5/4, numerator 3/8·1/(1/2) = 3/4.
    // Block two: T P_B2 f = (1/4·4)/(1/2) = 2, numerator also 2.
    assert_eq!(r.denominator, el(&s, &["5/4", "5/4", "2", "2"]));
    assert_eq!(r.numerator, el(&s, &["3/4", "3/4", "2", "2"]));
    assert_eq!(r.value, el(&s, &["3/5", "3/5", "1", "1"]));
}

#[test]
fn total_probability_two_urns() {
    // Urn 1 w.p. 1/3 holds 2 red of 5, urn 2 holds 3 red of 4.
    let s = FiniteSampleSpace::new(
        ["u1r", "u1b", "u2r", "u2b"],
        vec![q("2/15"), q("1/5"), q("1/2"), q("1/6")],
    )
    .unwrap();
    let parts = BandPartition::new(vec![band(&s, &[0, 1]), band(&s, &[2, 3])]).unwrap();
    let red = band(&s, &[0, 2]);
    let t = CondExpectation::expectation(&s);
    let e = Element::unit(&s);
    let sides = ltp_sides(&t, &parts, &red, &e).unwrap().unwrap();
    assert_eq!(sides.lhs, Element::constant(&s, q("19/30")));
    assert_eq!(sides.rhs, sides.lhs);
    assert!(check_ltp(&t, &parts, &red, &e).unwrap().passed());
    let r = check_bayes(&t, &parts, &red, 0, &e).unwrap();
    assert!(r.passed());
    // P(urn 1 | red) = (2/15)/(19/30) = 4/19.
    assert!(
        r.detail().iter().any(|d| d.contains("19/30")),
        "{:?}",
        r.detail()
    );
    let oracle = classical_oracle(&s);
    let events: Vec<BTreeSet<usize>> = parts.bands().iter().map(|b| b.members().clone()).collect();
    assert_eq!(oracle.bayes(&events, red.members(), 0).unwrap(), q("4/19"));
}

#[test]
fn bayes_skips_when_d_is_null_somewhere() {
    let s = uniform(4);
    let t = CondExpectation::new(
        Partition::from_index_blocks(&s, vec![vec![0, 1], vec![2, 3]]).unwrap(),
    );
    let parts = BandPartition::new(vec![band(&s, &[0, 2]), band(&s, &[1, 3])]).unwrap();
    let r = check_bayes(&t, &parts, &band(&s, &[0]), 0, &Element::unit(&s)).unwrap();
    assert_eq!(r.verdict(), Verdict::PreconditionSkipped);
}

#[test]
fn inclusion_exclusion_three_bands_on_five_outcomes() {
    let s = uniform(5);
    let bands = vec![band(&s, &[0, 1]), band(&s, &[1, 2, 3]), band(&s, &[3, 4])];
    let exp = inclusion_exclusion_expand(&bands, DEFAULT_IE_CAP).unwrap();
    let signs: String = exp.terms().iter().map(|t| t.sign.as_char()).collect();
    assert_eq!(signs, "+++---+");
    let labels: Vec<String> = exp.terms().iter().map(|t| t.band.to_string()).collect();
    assert_eq!(
        labels,
        ["{1,2}", "{2,3,4}", "{4,5}", "{2}", "{}", "{4}", "{}"]
    );
    let f = el(&s, &["1", "-2", "3/2", "7", "-1/3"]);
    let union = band_join(&s, &bands).unwrap();
    assert_eq!(exp.apply(&f).unwrap(), union.project(&f).unwrap());
    assert_eq!(exp.apply(&f).unwrap(), f);
}

#[test]
fn inclusion_exclusion_with_disjoint_gap() {
    let s = uniform(5);
    let bands = vec![band(&s, &[0]), band(&s, &[0, 2])];
    let f = el(&s, &["1", "2", "3", "4", "5"]);
    assert_eq!(
        inclusion_exclusion_expand(&bands, DEFAULT_IE_CAP)
            .unwrap()
            .apply(&f)
            .unwrap(),
        el(&s, &["1", "0", "3", "0", "0"])
    );
}

#[test]
fn product_space_independence() {
    // Two coins with heads probabilities 1/3 and 1/4.
    let s = FiniteSampleSpace::new(
        ["HH", "HT", "TH", "TT"],
        vec![q("1/12"), q("3/12"), q("2/12"), q("6/12")],
    )
    .unwrap();
    let t = CondExpectation::expectation(&s);
    let first = band(&s, &[0, 1]);
    let second = band(&s, &[0, 2]);
    assert!(independent(&t, &first, &second).unwrap());
    assert!(!independent(&t, &first, &band(&s, &[0])).unwrap());
}

#[test]
fn exhaustive_correspondence_up_to_five_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut comparisons = 0usize;
    for n in 1..=5 {
        for _ in 0..2 {
            let s = random_space(&mut rng, n, n);
            let subsets = all_subsets(n);
            for a in &subsets {
                for b in &subsets {
                    let events = [band(&s, a), band(&s, b)];
                    let parts = BandPartition::from_partition(&Partition::discrete(&s));
                    let r = check_correspondence(&s, &events, &parts).unwrap();
                    assert!(r.passed(), "{r:?}");
                    comparisons += 1;
                }
            }
        }
    }
    // Two spaces for each n, 4^n ordered pairs each.
    assert_eq!(comparisons, 2 * (4 + 16 + 64 + 256 + 1024));
}

#[test]
fn classical_reduction_on_random_nonuniform_spaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let s = random_space(&mut rng, 1, 7);
        let oracle = classical_oracle(&s);
        let t = CondExpectation::expectation(&s);
        let e = Element::unit(&s);
        let a = random_band(&mut rng, &s);
        let b = random_band(&mut rng, &s);
        match oracle.cond(a.members(), b.members()) {
            Ok(p) => assert_eq!(
                cond_prob(&t, &a, &b, &e).unwrap().value,
                Element::constant(&s, p)
            ),
            Err(_) => assert!(cond_prob(&t, &a, &b, &e).is_err()),
        }
        let bands = [a.clone(), b.clone()];
        let union = oracle.union_prob(&[a.members().clone(), b.members().clone()]);
        let exp = inclusion_exclusion_expand(&bands, DEFAULT_IE_CAP).unwrap();
        assert_eq!(
            t.apply(&exp.apply(&e).unwrap()).unwrap(),
            Element::constant(&s, union)
        );
    }
}

#[test]
fn weights_are_reduced() {
    let s = FiniteSampleSpace::from_relative_weights(
        ["a", "b", "c"],
        vec![Rational::from(2), Rational::from(4), Rational::from(6)],
    )
    .unwrap();
    let w: Vec<String> = s.weights().iter().map(ToString::to_string).collect();
    assert_eq!(w, ["1/6", "1/3", "1/2"]);
}
