//! Shared fixture loading for the integration tests.

// Each test binary compiles this module independently and uses its own
// subset of the helpers.
#![allow(dead_code)]

use std::path::PathBuf;

use goodsemi::closure::{reconstruct, GeneratorSet};
use goodsemi::io;
use goodsemi::point::{pt, Point};
use goodsemi::GoodSemigroup;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

pub fn load_generators(name: &str) -> GeneratorSet {
    let gens = io::parse_generators(&read_data(name)).unwrap();
    GeneratorSet::new(gens).unwrap()
}

/// Builds the semigroup whose irreducible absolutes are stored in the
/// named generator fixture.
pub fn load_from_ia(name: &str) -> GoodSemigroup {
    reconstruct(&load_generators(name)).unwrap()
}

pub fn load_semigroup(name: &str) -> GoodSemigroup {
    let (small, c) = io::parse_semigroup(&read_data(name)).unwrap();
    GoodSemigroup::from_small(small, c).unwrap()
}

/// A membership chart: box bound on the first line, then one finite
/// point per line; everything inside the box and absent from the list is
/// a non-member.
pub fn load_points(name: &str) -> ((u64, u64), Vec<Point>) {
    let text = read_data(name);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().unwrap();
    let mut it = head.split_whitespace();
    assert_eq!(it.next(), Some("box"));
    let bx: u64 = it.next().unwrap().parse().unwrap();
    let by: u64 = it.next().unwrap().parse().unwrap();
    let pts = lines
        .map(|l| {
            let mut it = l.split_whitespace();
            let x: u64 = it.next().unwrap().parse().unwrap();
            let y: u64 = it.next().unwrap().parse().unwrap();
            pt(x, y)
        })
        .collect();
    ((bx, by), pts)
}
