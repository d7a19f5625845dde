//! Between-searches, sor certification, and edim on the worked examples.

mod common;

use common::{load_from_ia, load_generators};
use goodsemi::closure::{irreducible_absolutes, GeneratorSet};
use goodsemi::point::{col_ray, pt, row_ray, Point};
use goodsemi::reduce::{big_bedim, satisfies_reducibility_condition};
use goodsemi::search::{
    conductor_bound, edim, enumerate_good_between, exists_good_between, is_msor, is_sor,
    minimal_good_containing, EdimMethod, SearchBudget, SearchError, SearchUpper,
};
use goodsemi::tracks::{bedim, minimal_hitting_sets};

fn gs(pts: &[Point]) -> GeneratorSet {
    GeneratorSet::new(pts.iter().copied()).unwrap()
}

/// (fixture, edim, certified by reducibility, witness).
fn edim_table() -> Vec<(&'static str, usize, bool, Vec<Point>)> {
    vec![
        ("ex_a.gen", 6, true, vec![
            pt(6, 3),
            pt(12, 17),
            pt(18, 25),
            col_ray(39),
            col_ray(41),
            col_ray(46),
        ]),
        ("ex_b.gen", 3, true, vec![pt(3, 4), col_ray(6), pt(10, 15)]),
        ("ex_c.gen", 5, true, vec![pt(4, 3), pt(6, 7), pt(8, 8), col_ray(11), col_ray(13)]),
        ("ex_d.gen", 4, false, vec![pt(7, 7), pt(14, 20), col_ray(24), row_ray(32)]),
        ("ex_e.gen", 5, true, vec![pt(4, 3), pt(7, 13), pt(11, 17), col_ray(15), col_ray(24)]),
        ("ex_f.gen", 3, true, vec![pt(4, 4), pt(6, 6), pt(15, 13)]),
    ]
}

#[test]
fn edim_of_every_fixture() {
    for (name, expect, by_reducibility, witness) in edim_table() {
        let s = load_from_ia(name);
        let r = edim(&s, SearchBudget::default()).unwrap();
        assert_eq!(r.edim, expect, "{name}");
        let method = if by_reducibility {
            EdimMethod::ReducibilityCertified
        } else {
            EdimMethod::ExhaustiveBetweenSearch
        };
        assert_eq!(r.method, method, "{name}");
        assert_eq!(r.witness.points(), &witness[..], "{name}");
        assert!(bedim(&s) <= r.edim && r.edim <= big_bedim(&s).0, "{name}");
    }
}

#[test]
fn edim_interleaves_strictly_on_the_widest_examples() {
    // bedim < edim on one fixture and edim < Bedim on another, so neither
    // bound can stand in for the embedding dimension itself.
    let a = load_from_ia("ex_a.gen");
    assert_eq!(bedim(&a), 5);
    assert_eq!(edim(&a, SearchBudget::default()).unwrap().edim, 6);
    let d = load_from_ia("ex_d.gen");
    assert_eq!(edim(&d, SearchBudget::default()).unwrap().edim, 4);
    assert_eq!(big_bedim(&d).0, 5);
}

#[test]
fn hitting_set_m_of_ex_a_is_not_a_sor() {
    let s = load_from_ia("ex_a.gen");
    let m = gs(&[pt(6, 3), pt(12, 17), col_ray(39), col_ray(41), col_ray(46)]);
    let fam = minimal_hitting_sets(&s);
    assert!(fam.transversals.contains(&m.points().to_vec()));
    assert!(!is_sor(&s, &m, SearchBudget::default()).unwrap());
    let w = exists_good_between(&m, &s, SearchBudget::default()).unwrap().unwrap();
    for &g in m.points() {
        assert!(w.contains(g), "witness lost {g}");
    }
    assert_ne!(w, s);
}

#[test]
fn first_enumerated_semigroup_between_m_and_ex_a_is_the_recorded_one() {
    let s = load_from_ia("ex_a.gen");
    let sub = load_from_ia("ex_a_sub.gen");
    let m = gs(&[pt(6, 3), pt(12, 17), col_ray(39), col_ray(41), col_ray(46)]);
    let first = enumerate_good_between(&m, SearchUpper::Semigroup(&s), true, SearchBudget::default())
        .next()
        .unwrap()
        .unwrap();
    assert_eq!(first, sub);
    assert_eq!(
        irreducible_absolutes(&first),
        load_generators("ex_a_sub.gen").points()
    );
}

#[test]
fn ex_b_hitting_set_and_m_are_sors() {
    let s = load_from_ia("ex_b.gen");
    let eta = gs(&[
        pt(3, 4),
        pt(7, 8),
        pt(10, 15),
        pt(14, 18),
        row_ray(12),
        row_ray(22),
    ]);
    assert!(is_sor(&s, &eta, SearchBudget::default()).unwrap());
    let m = gs(&[pt(3, 4), pt(7, 8), pt(10, 15)]);
    assert!(is_msor(&s, &m, SearchBudget::default()).unwrap());
    // Every two-element subset misses a track, so none is a sor.
    for drop in m.points() {
        let sub = gs(&m
            .points()
            .iter()
            .copied()
            .filter(|g| g != drop)
            .collect::<Vec<_>>());
        assert!(!is_sor(&s, &sub, SearchBudget::default()).unwrap());
    }
}

#[test]
fn every_minimal_hitting_set_of_ex_e_is_a_reducibility_certified_msor() {
    let s = load_from_ia("ex_e.gen");
    let fam = minimal_hitting_sets(&s);
    assert_eq!(fam.transversals.len(), 10);
    for t in &fam.transversals {
        let eta = gs(t);
        assert!(satisfies_reducibility_condition(&s, &eta).unwrap(), "{t:?}");
        assert!(is_msor(&s, &eta, SearchBudget::default()).unwrap(), "{t:?}");
    }
}

#[test]
fn conductor_bounds_dominate_the_fixture_conductors() {
    let expect = [
        ("ex_a.gen", pt(186, 131)),
        ("ex_b.gen", pt(73, 94)),
        ("ex_c.gen", pt(60, 54)),
        ("ex_d.gen", pt(279, 327)),
        ("ex_e.gen", pt(78, 90)),
        ("ex_f.gen", pt(146, 137)),
    ];
    for (name, c_eta) in expect {
        let s = load_from_ia(name);
        let cert = conductor_bound(&gs(&irreducible_absolutes(&s))).unwrap();
        assert_eq!(cert.c_eta, c_eta, "{name}");
        assert!(s.conductor().le_all(c_eta), "{name}: bound below the conductor");
    }
}

#[test]
fn minimal_good_containing_fixture_absolutes_returns_the_fixture() {
    for name in ["ex_a.gen", "ex_e.gen", "ex_f.gen"] {
        let s = load_from_ia(name);
        let got = minimal_good_containing(&gs(&irreducible_absolutes(&s)), SearchBudget::default())
            .unwrap();
        assert_eq!(got, vec![s], "{name}");
    }
}

#[test]
fn equal_coordinate_generators_fail_the_separation_hypothesis() {
    assert_eq!(
        minimal_good_containing(&gs(&[pt(2, 2), pt(3, 3)]), SearchBudget::default()).unwrap_err(),
        SearchError::NoSeparatingGenerator
    );
}

#[test]
fn small_conductor_census_is_stable() {
    let empty = GeneratorSet::new(std::iter::empty()).unwrap();
    let count = enumerate_good_between(
        &empty,
        SearchUpper::Bound(pt(5, 5)),
        false,
        SearchBudget::default(),
    )
    .map(|r| r.unwrap())
    .count();
    assert_eq!(count, 133);
}
