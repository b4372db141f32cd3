//! Frozen worked fixtures, each checked twice: against the naive oracle in
//! `common` and against the library pipeline.

#![allow(clippy::type_complexity)]

mod common;

use common::{chain, exhaustive_joint_min, ints, pair_values};
use sumdiv::search::{exhaustive_search, Objective, SearchConfig, SearchMode};
use sumdiv::{verify_sum_division, PairCap, PosRational, PositiveSet};

/// (set, |A+A|, |A/A|, k, m_k, tail)
const CHAIN_FIXTURES: [(&[u128], usize, usize, usize, u128, u128); 4] = [
    (&[1, 2, 4], 6, 5, 4, 2, 5),
    (&[1, 2, 3], 5, 7, 5, 1, 5),
    (&[7], 1, 1, 1, 1, 1),
    (&[1, 2], 3, 3, 2, 1, 3),
];

#[test]
fn oracle_reproduces_frozen_chain_values() {
    for (set, s, r, k, m_k, tail) in CHAIN_FIXTURES {
        assert_eq!(chain(&ints(set)), (s, r, k, m_k, tail), "{set:?}");
    }
}

#[test]
fn pipeline_matches_frozen_chain_values() {
    for (set, s, r, k, m_k, tail) in CHAIN_FIXTURES {
        let a = PositiveSet::from_integers(set.iter().map(|&x| x as u64)).unwrap();
        let rep = verify_sum_division(&a, PairCap::default()).unwrap();
        assert_eq!(
            (rep.sumset_size, rep.ratioset_size, rep.k, rep.m_k as u128, rep.tail_mass as u128),
            (s, r, k, m_k, tail),
            "{set:?}"
        );
    }
}

#[test]
fn oracle_small_set_sizes() {
    let a = ints(&[1, 2, 3]);
    assert_eq!(pair_values(&a, common::add).len(), 5);
    assert_eq!(pair_values(&a, common::mul).len(), 6);
    assert_eq!(pair_values(&a, common::div).len(), 7);
    let b = ints(&[1, 2, 4]);
    assert_eq!(pair_values(&b, common::add).len(), 6);
    assert_eq!(pair_values(&b, common::mul).len(), 5);
    assert_eq!(pair_values(&b, common::div).len(), 5);
}

/// Minimum of J over 3-subsets of {1..12}: 175/81 at {1, 2, 3}, over 220 subsets.
const EXHAUSTIVE_FIXTURE: ((u128, u128), [u128; 3], usize) = ((175, 81), [1, 2, 3], 220);

#[test]
fn exhaustive_fixture_from_oracle() {
    let (value, witness, count) = exhaustive_joint_min(3, 12);
    assert_eq!((value, witness.as_slice(), count), (EXHAUSTIVE_FIXTURE.0, &EXHAUSTIVE_FIXTURE.1[..], EXHAUSTIVE_FIXTURE.2));
}

#[test]
fn exhaustive_fixture_from_library() {
    let cfg = SearchConfig {
        objective: Objective::Joint,
        mode: SearchMode::Exhaustive { cardinality: 3, universe: 12, budget: 1000 },
    };
    let r = exhaustive_search(&cfg, PairCap::default()).unwrap();
    let ((n, d), w, count) = EXHAUSTIVE_FIXTURE;
    assert_eq!(r.best_value, PosRational::from_u64s(n as u64, d as u64));
    assert_eq!(r.best_set, PositiveSet::from_integers(w.iter().map(|&x| x as u64)).unwrap());
    assert_eq!(r.evaluations, count as u64);
}

#[test]
fn rational_inputs_agree_with_oracle() {
    let fr = [(1u128, 2u128), (2, 3), (3, 4), (1, 1), (5, 4)];
    let a = PositiveSet::new(fr.iter().map(|&(n, d)| PosRational::from_u64s(n as u64, d as u64))).unwrap();
    let rep = verify_sum_division(&a, PairCap::default()).unwrap();
    let (s, r, k, m_k, tail) = chain(&fr);
    assert_eq!(
        (rep.sumset_size, rep.ratioset_size, rep.k, rep.m_k as u128, rep.tail_mass as u128),
        (s, r, k, m_k, tail)
    );
}
