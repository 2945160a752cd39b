#![allow(dead_code)]

use proptest::prelude::*;
use riesz_prob::{Band, Element, FiniteSampleSpace, Partition, Rational};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn space_from_weights(relative: &[i64]) -> FiniteSampleSpace {
    FiniteSampleSpace::from_relative_weights(
        (0..relative.len()).map(|i| format!("w{i}")),
        relative.iter().map(|&w| Rational::from(w)).collect(),
    )
    .unwrap()
}

/// A space with 1..=max outcomes and relative weights in 1..=9.
pub fn arb_space(max: usize) -> impl Strategy<Value = FiniteSampleSpace> {
    prop::collection::vec(1i64..=9, 1..=max).prop_map(|w| space_from_weights(&w))
}

/// Small rationals p/q with |p| ≤ 9 and 1 ≤ q ≤ 4.
pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, d)| Rational::new(p, d).unwrap())
}

pub fn arb_element(space: &FiniteSampleSpace) -> impl Strategy<Value = Element> {
    let space = space.clone();
    prop::collection::vec(arb_rational(), space.len())
        .prop_map(move |c| Element::new(&space, c).unwrap())
}

pub fn arb_nonnegative(space: &FiniteSampleSpace) -> impl Strategy<Value = Element> {
    let space = space.clone();
    prop::collection::vec((0i64..=9, 1i64..=4), space.len()).prop_map(move |c| {
        Element::new(
            &space,
            c.into_iter()
                .map(|(p, d)| Rational::new(p, d).unwrap())
                .collect(),
        )
        .unwrap()
    })
}

pub fn arb_band(space: &FiniteSampleSpace) -> impl Strategy<Value = Band> {
    let space = space.clone();
    prop::collection::vec(any::<bool>(), space.len()).prop_map(move |mask| {
        Band::from_indices(
            &space,
            mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i),
        )
        .unwrap()
    })
}

pub fn arb_partition(space: &FiniteSampleSpace) -> impl Strategy<Value = Partition> {
    let space = space.clone();
    let n = space.len();
    prop::collection::vec(0usize..n.max(1), n)
        .prop_map(move |a| Partition::from_assignment(&space, &a).unwrap())
}

/// Every subset of `0..n` as a sorted index list.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// All set partitions of `0..n` as block-label assignments in restricted
/// growth form.
pub fn all_set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(i + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0];
    go(1, n, &mut cur, 0, &mut out);
    out
}
