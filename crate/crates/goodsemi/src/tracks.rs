//! Tracks and hitting sets.
//!
//! A *track* of a good semigroup S is the shape a removable layer takes:
//! a chain α₁, …, αₙ of irreducible absolutes with strictly increasing
//! first coordinates, glued together by the Δ-sets of the meets
//! γᵢ = αᵢ ⊕ αᵢ₊₁, such that no reducible element of S sits in any of
//! those Δ-sets nor beyond the two ends of the chain. The point set of
//! the track is
//!
//!   T(α₁,…,αₙ) = {α₁} ∪ ₂Δ^S(α₁) ∪ ⋃ᵢ Δ^S(γᵢ) ∪ ₁Δ^S(αₙ) ∪ {αₙ},
//!
//! and removing it from S leaves a strictly smaller good semigroup.
//! Tracks are therefore the obstructions to shrinking a generating set:
//! any set of irreducible absolutes that generates S must meet every
//! track. The minimal sets of vertices meeting all tracks (the minimal
//! transversals of the track hypergraph) give the lower bound `bedim`
//! for the embedding dimension of S.
//!
//! Everything here is exact: column and row scans are pointwise up to
//! 2c + 2, where membership and irreducibility become eventually
//! periodic, and closed forms take over beyond.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::closure::{irreducible_absolutes, is_irreducible};
use crate::point::{col_ray, pt, row_ray, ExtNat, Point};
use crate::semigroup::{DeltaKind, GoodSemigroup, SetDescription, Tail};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TrackError {
    #[error("{0} is not an irreducible absolute of the semigroup")]
    NotIrreducibleAbsolute(Point),
}

/// One track: its spine (the chain of irreducible absolutes defining it),
/// the full point set, and the hyperedge it induces, i.e. the irreducible
/// absolutes lying on the track.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Track {
    pub spine: Vec<Point>,
    pub points: SetDescription,
    pub edge: Vec<Point>,
}

impl fmt::Display for Track {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(")?;
        for (i, a) in self.spine.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The track hypergraph of a semigroup: the inclusion-minimal edges and
/// all minimal transversals, both in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingFamily {
    pub edges: Vec<Vec<Point>>,
    pub transversals: Vec<Vec<Point>>,
}

/// Shared scan state. Boundary checks test the same finite points over
/// and over (columns of neighbouring meets overlap), so irreducibility
/// answers are memoized.
struct Cx<'a> {
    s: &'a GoodSemigroup,
    ia: Vec<Point>,
    memo: RefCell<HashMap<Point, bool>>,
}

impl<'a> Cx<'a> {
    fn new(s: &'a GoodSemigroup) -> Self {
        Cx { s, ia: irreducible_absolutes(s), memo: RefCell::new(HashMap::new()) }
    }

    fn irreducible(&self, p: Point) -> bool {
        if let Some(&v) = self.memo.borrow().get(&p) {
            return v;
        }
        let v = is_irreducible(self.s, p);
        self.memo.borrow_mut().insert(p, v);
        v
    }

    fn reducible_member(&self, p: Point) -> bool {
        self.s.contains(p) && !self.irreducible(p)
    }

    /// Closed form for reducibility high up a rayed column: for every
    /// y ≥ 2c₂ + 2, (x, y) is reducible iff some proper element (a,b) of
    /// S with a ≤ x leaves a rayed column behind. Witnesses can be
    /// normalized to b ≤ c₂ + 1, which keeps the scan box finite.
    fn eventually_reducible_column(&self, x: u64) -> bool {
        let (_, c2) = self.s.c_pair();
        (0..=x).any(|k| {
            self.s.col_rayed(x - k)
                && (0..=c2 + 1)
                    .any(|b| !(k == 0 && b == 0) && self.s.contains(pt(k, b)))
        })
    }

    fn eventually_reducible_row(&self, y: u64) -> bool {
        let (c1, _) = self.s.c_pair();
        (0..=y).any(|k| {
            self.s.row_rayed(y - k)
                && (0..=c1 + 1)
                    .any(|a| !(k == 0 && a == 0) && self.s.contains(pt(a, k)))
        })
    }

    /// No reducible element of S in the column x strictly above lo (in
    /// the whole column for `None`). Pointwise up to 2c₂ + 2; beyond, a
    /// rayed column is eventually constant and the closed form decides.
    fn column_clear_above(&self, x: u64, lo: Option<u64>) -> bool {
        let (_, c2) = self.s.c_pair();
        let top = 2 * c2 + 2;
        let start = match lo {
            Some(v) => v + 1,
            None => 0,
        };
        for y in start..=top {
            if self.reducible_member(pt(x, y)) {
                return false;
            }
        }
        if self.s.col_rayed(x) {
            let ev = self.eventually_reducible_column(x);
            // top itself lies in the eventual regime, so a scan that
            // covered it can only survive when the closed form is clear.
            debug_assert!(start > top || !ev, "column {x}: closed form disagrees with scan");
            if ev {
                return false;
            }
        }
        true
    }

    fn row_clear_right(&self, y: u64, lo: Option<u64>) -> bool {
        let (c1, _) = self.s.c_pair();
        let top = 2 * c1 + 2;
        let start = match lo {
            Some(v) => v + 1,
            None => 0,
        };
        for x in start..=top {
            if self.reducible_member(pt(x, y)) {
                return false;
            }
        }
        if self.s.row_rayed(y) {
            let ev = self.eventually_reducible_row(y);
            debug_assert!(start > top || !ev, "row {y}: closed form disagrees with scan");
            if ev {
                return false;
            }
        }
        true
    }

    /// No reducible element of S in the column x strictly below y.
    fn column_segment_clear(&self, x: u64, below: u64) -> bool {
        (0..below).all(|y| !self.reducible_member(pt(x, y)))
    }

    fn row_segment_clear(&self, y: u64, left_of: u64) -> bool {
        (0..left_of).all(|x| !self.reducible_member(pt(x, y)))
    }

    /// ₂Δ^S(α) avoids reducible elements; α is a valid spine start.
    fn left_boundary_ok(&self, a: Point) -> bool {
        match (a.x, a.y) {
            (ExtNat::Fin(x), ExtNat::Fin(y)) => self.row_segment_clear(y, x),
            // ₂Δ((x,∞)) = ∅.
            (ExtNat::Fin(_), ExtNat::Inf) => true,
            // ₂Δ((∞,y)) is the whole finite row y.
            (ExtNat::Inf, ExtNat::Fin(y)) => self.row_clear_right(y, None),
            (ExtNat::Inf, ExtNat::Inf) => false,
        }
    }

    /// ₁Δ^S(α) avoids reducible elements; α is a valid spine end.
    fn right_boundary_ok(&self, a: Point) -> bool {
        match (a.x, a.y) {
            (ExtNat::Fin(x), ExtNat::Fin(y)) => self.column_segment_clear(x, y),
            // ₁Δ((x,∞)) is the whole finite column x.
            (ExtNat::Fin(x), ExtNat::Inf) => self.column_clear_above(x, None),
            // ₁Δ((∞,y)) = ∅.
            (ExtNat::Inf, ExtNat::Fin(_)) => true,
            (ExtNat::Inf, ExtNat::Inf) => false,
        }
    }

    /// The piece-of-track relation: α, β incomparable and Δ^S(α ⊕ β)
    /// free of reducible elements.
    fn piece(&self, a: Point, b: Point) -> bool {
        if !a.incomparable(b) {
            return false;
        }
        let g = a.oplus(b);
        let (gx, gy) = g.fin().expect("meet of incomparable points is finite");
        self.column_clear_above(gx, Some(gy)) && self.row_clear_right(gy, Some(gx))
    }
}

/// Whether two irreducible absolutes of S form a piece of track. Errors
/// when either argument is not an irreducible absolute.
pub fn is_piece_of_track(
    s: &GoodSemigroup,
    alpha: Point,
    beta: Point,
) -> Result<bool, TrackError> {
    let cx = Cx::new(s);
    for p in [alpha, beta] {
        if cx.ia.binary_search(&p).is_err() {
            return Err(TrackError::NotIrreducibleAbsolute(p));
        }
    }
    Ok(cx.piece(alpha, beta))
}

/// All tracks of S, in depth-first order: spines are explored with their
/// elements in increasing point order, and every spine is reported before
/// its extensions. The list is deterministic.
pub fn enumerate_tracks(s: &GoodSemigroup) -> Vec<Track> {
    let cx = Cx::new(s);
    let mut out = Vec::new();
    let mut spine = Vec::new();
    for i in 0..cx.ia.len() {
        let a = cx.ia[i];
        if !cx.left_boundary_ok(a) {
            continue;
        }
        spine.push(a);
        extend(&cx, &mut spine, &mut out);
        spine.pop();
    }
    out
}

fn extend(cx: &Cx, spine: &mut Vec<Point>, out: &mut Vec<Track>) {
    let last = *spine.last().unwrap();
    if cx.right_boundary_ok(last) {
        out.push(materialize(cx, spine));
    }
    // First coordinates increase strictly along a spine, so candidate
    // extensions always sit strictly to the right of the current end.
    for i in 0..cx.ia.len() {
        let b = cx.ia[i];
        if b.x > last.x && cx.piece(last, b) {
            spine.push(b);
            extend(cx, spine, out);
            spine.pop();
        }
    }
}

fn tail_sort_key(t: &Tail) -> (u8, u64, u64) {
    match *t {
        Tail::Column { x, from_y } => (0, x, from_y),
        Tail::Row { y, from_x } => (1, y, from_x),
    }
}

/// Assembles the point set of a track from its spine and intersects it
/// with the irreducible absolutes to obtain the hyperedge.
fn materialize(cx: &Cx, spine: &[Point]) -> Track {
    let s = cx.s;
    let mut pts: BTreeSet<Point> = BTreeSet::new();
    let mut tails: Vec<Tail> = Vec::new();
    let first = spine[0];
    let last = *spine.last().unwrap();
    let mut parts = vec![s.delta(first, DeltaKind::Lower2)];
    for w in spine.windows(2) {
        parts.push(s.delta(w[0].oplus(w[1]), DeltaKind::Upper));
    }
    parts.push(s.delta(last, DeltaKind::Lower1));
    for d in parts {
        pts.extend(d.points);
        tails.extend(d.tails);
    }
    for &a in spine {
        if a.is_finite() {
            pts.insert(a);
        }
    }

    // The contributing Δ-sets live on pairwise distinct lines, so the
    // collected tails cannot collide; points already covered by a tail
    // are dropped to keep the description canonical.
    tails.sort_by_key(tail_sort_key);
    debug_assert!(tails.windows(2).all(|w| w[0] != w[1]), "duplicate tail lines in a track");
    let covered = |p: &Point| {
        tails.iter().any(|t| match *t {
            Tail::Column { x, from_y } => p.x == ExtNat::Fin(x) && p.y >= ExtNat::Fin(from_y),
            Tail::Row { y, from_x } => p.y == ExtNat::Fin(y) && p.x >= ExtNat::Fin(from_x),
        })
    };
    let points: Vec<Point> = pts.into_iter().filter(|p| !covered(p)).collect();
    let td = SetDescription { points, tails };

    if cfg!(debug_assertions) {
        let (b1, b2) = {
            let (c1, c2) = s.c_pair();
            let (e1, e2) = s.e_pair();
            (c1 + e1, c2 + e2)
        };
        // A track never reaches the cone c + e + N².
        for p in &td.points {
            let (x, y) = p.fin().unwrap();
            debug_assert!(x < b1 || y < b2, "track point {p} beyond c+e");
            debug_assert!(s.contains(*p), "track point {p} outside S");
        }
        for t in &td.tails {
            match *t {
                Tail::Column { x, .. } => debug_assert!(x < b1, "track column ray at {x}"),
                Tail::Row { y, .. } => debug_assert!(y < b2, "track row ray at {y}"),
            }
        }
        for a in spine {
            debug_assert!(td.contains(*a), "spine element {a} not on its own track");
        }
    }

    let edge: Vec<Point> = cx.ia.iter().copied().filter(|&v| td.contains(v)).collect();
    debug_assert!(!edge.is_empty());
    Track { spine: spine.to_vec(), points: td, edge }
}

/// S ∖ T for a track T of S: a strictly smaller good semigroup. The
/// conductor of the difference is recomputed from scratch and the result
/// is revalidated; a failure here means the input was not a track of S
/// and is reported as a panic, since it cannot be produced by
/// [`enumerate_tracks`].
pub fn remove_track(s: &GoodSemigroup, t: &Track) -> GoodSemigroup {
    debug_assert!(t.points.points.iter().all(|&p| s.contains(p)));
    let (c1, c2) = s.c_pair();
    let (e1, e2) = s.e_pair();
    let (b1, b2) = (c1 + e1, c2 + e2);
    let keep = |x: u64, y: u64| s.contains(pt(x, y)) && !t.points.contains(pt(x, y));

    // Least height from which a column of S ∖ T is full, for each column
    // in the candidate box; columns beyond b1 behave like column b1. A
    // line keeps its ray exactly when the track does not own its tail.
    let col_from: Vec<Option<u64>> = (0..=b1)
        .map(|x| {
            if !s.col_rayed(x) || t.points.contains(col_ray(x)) {
                return None;
            }
            let mut y0 = b2 + 1;
            while y0 > 0 && keep(x, y0 - 1) {
                y0 -= 1;
            }
            Some(y0)
        })
        .collect();
    let row_from: Vec<Option<u64>> = (0..=b2)
        .map(|y| {
            if !s.row_rayed(y) || t.points.contains(row_ray(y)) {
                return None;
            }
            let mut x0 = b1 + 1;
            while x0 > 0 && keep(x0 - 1, y) {
                x0 -= 1;
            }
            Some(x0)
        })
        .collect();

    // Suffix maxima turn "every column right of d₁ is full from d₂" into
    // a table lookup; None (a lost ray) is absorbing.
    let suffix_max = |v: &[Option<u64>]| -> Vec<Option<u64>> {
        let mut out = vec![None; v.len()];
        let mut acc = Some(0);
        for (i, &x) in v.iter().enumerate().rev() {
            acc = match (acc, x) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
            out[i] = acc;
        }
        out
    };
    let col_suffix = suffix_max(&col_from);
    let row_suffix = suffix_max(&row_from);
    let ok = |d1: u64, d2: u64| {
        matches!(col_suffix[d1 as usize], Some(m) if m <= d2)
            && matches!(row_suffix[d2 as usize], Some(m) if m <= d1)
    };

    assert!(ok(b1, b2), "difference has no conductor inside the c+e box: not a track");
    let d1 = (0..=b1).find(|&d| ok(d, b2)).unwrap();
    let d2 = (0..=b2).find(|&d| ok(b1, d)).unwrap();
    // The set of admissible corners of a good semigroup is a principal
    // upper set, so the two independent minima must combine.
    assert!(ok(d1, d2), "conductor candidates do not combine: not a track");

    let mut small = Vec::new();
    for x in 0..=d1 {
        for y in 0..=d2 {
            if keep(x, y) {
                small.push(pt(x, y));
            }
        }
    }
    let s2 = match GoodSemigroup::from_small(small, pt(d1, d2)) {
        Ok(s2) => s2,
        Err(report) => panic!("difference is not a good semigroup: {report}"),
    };
    assert!(s2 != *s, "removing a track must change the semigroup");
    if cfg!(debug_assertions) {
        for x in 0..=b1 + 1 {
            for y in 0..=b2 + 1 {
                debug_assert_eq!(
                    s2.contains(pt(x, y)),
                    keep(x, y),
                    "membership mismatch at ({x},{y}) after removal",
                );
            }
        }
    }
    s2
}

/// The track hypergraph of S with all its minimal transversals. Edges
/// are deduplicated and reduced to the inclusion-minimal ones (this
/// never changes the transversals); the transversals are returned sorted
/// by size and then pointwise.
pub fn minimal_hitting_sets(s: &GoodSemigroup) -> HittingFamily {
    let edges_full: Vec<Vec<Point>> = enumerate_tracks(s).into_iter().map(|t| t.edge).collect();
    let edges = minimal_edges(edges_full);
    let transversals = minimal_transversals(&edges);
    HittingFamily { edges, transversals }
}

/// bedim(S): the least size of a minimal hitting set; 0 when S has no
/// tracks at all.
pub fn bedim(s: &GoodSemigroup) -> usize {
    let fam = minimal_hitting_sets(s);
    match fam.transversals.first() {
        Some(t) => t.len(),
        None => 0,
    }
}

/// Drops duplicate and non-minimal edges. A transversal hits a superset
/// edge through the contained edge anyway, so this is sound.
fn minimal_edges(mut edges: Vec<Vec<Point>>) -> Vec<Vec<Point>> {
    for e in &mut edges {
        e.sort();
        e.dedup();
    }
    edges.sort();
    edges.dedup();
    // After dedup a distinct contained edge is a proper subset.
    let is_sub = |a: &[Point], b: &[Point]| a.iter().all(|x| b.binary_search(x).is_ok());
    let keep: Vec<bool> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| !edges.iter().enumerate().any(|(j, f)| j != i && is_sub(f, e)))
        .collect();
    edges
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

/// All inclusion-minimal transversals of a hypergraph, by branching on
/// the vertices of the first edge not yet hit. Intended for the small
/// vertex sets of track hypergraphs (|I_A| rarely exceeds ~25).
fn minimal_transversals(edges: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let mut found: Vec<Vec<Point>> = Vec::new();
    let mut chosen: Vec<Point> = Vec::new();
    branch(edges, &mut chosen, &mut found);
    for t in &mut found {
        t.sort();
    }
    found.sort();
    found.dedup();
    // Branching can emit supersets of transversals found along other
    // orders; only the inclusion-minimal ones are hitting sets.
    let is_sub = |a: &[Point], b: &[Point]| a.iter().all(|x| b.binary_search(x).is_ok());
    let keep: Vec<bool> = found
        .iter()
        .enumerate()
        .map(|(i, t)| !found.iter().enumerate().any(|(j, u)| j != i && u.len() < t.len() && is_sub(u, t)))
        .collect();
    let mut out: Vec<Vec<Point>> = found
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn branch(edges: &[Vec<Point>], chosen: &mut Vec<Point>, found: &mut Vec<Vec<Point>>) {
    match edges.iter().find(|e| !e.iter().any(|v| chosen.contains(v))) {
        None => found.push(chosen.clone()),
        Some(e) => {
            for &v in e {
                chosen.push(v);
                branch(edges, chosen, found);
                chosen.pop();
            }
        }
    }
}
