//! The canonical representation of a good subsemigroup S ⊆ N².
//!
//! S is stored as its finite set of *small elements* small(S) = S ∩ [0,c]
//! together with the conductor c; this determines S completely. A point p
//! with a coordinate beyond the conductor belongs to S exactly when its
//! clamp min(p,c) is a small element, and the infinite elements of Γ_S are
//! derived the same way: the ray (a,∞) lies in Γ_S exactly when the column
//! a is full from c₂ on, i.e. when (a,c₂) ∈ S.
//!
//! Construction validates the axioms: closure under componentwise min (G1),
//! existence and minimality of the conductor (G2), the completion axiom
//! (G3), locality, and additive closure inside the box.

use std::fmt;

use crate::point::{pt, Axis, ExtNat, Point};

/// Why a candidate (small, conductor) pair is not a good semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A listed small element has an infinite coordinate.
    NonFinitePoint(Point),
    /// (0,0) is missing.
    MissingZero,
    /// A nonzero element has a zero coordinate (S must be local or N²).
    NotLocal(Point),
    /// A small element does not lie in the box [0,c].
    OutOfBox(Point),
    /// The conductor itself is missing, so c + N² ⊄ S.
    ConductorAbsent(Point),
    /// min(α,β) escapes the set (G1).
    MinClosure(Point, Point),
    /// min(α+β, c) escapes the set (additive closure in the box).
    SumEscapes(Point, Point),
    /// The pair shares a coordinate but no completion witness ε exists (G3).
    Completion(Point, Point),
    /// A strictly smaller vector already has its whole quadrant inside S.
    ConductorNotMinimal(Point),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinitePoint(p) => write!(f, "small element {p} is not finite"),
            Violation::MissingZero => write!(f, "(0,0) is missing"),
            Violation::NotLocal(p) => write!(f, "nonzero element {p} has a zero coordinate"),
            Violation::OutOfBox(p) => write!(f, "element {p} lies beyond the conductor box"),
            Violation::ConductorAbsent(c) => write!(f, "conductor {c} is not an element"),
            Violation::MinClosure(a, b) => write!(f, "min of {a} and {b} is missing (G1)"),
            Violation::SumEscapes(a, b) => write!(f, "clamped sum of {a} and {b} is missing"),
            Violation::Completion(a, b) => write!(f, "no completion witness for {a}, {b} (G3)"),
            Violation::ConductorNotMinimal(d) => {
                write!(f, "conductor is not minimal: {d} already works")
            }
        }
    }
}

/// Outcome of checking the good-semigroup axioms on a candidate set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "all axioms hold")
        } else {
            write!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                write!(f, " [{v}]")?;
            }
            Ok(())
        }
    }
}

impl std::error::Error for ValidationReport {}

/// A line segment description: finite points plus full tails along lines.
///
/// A tail stands for the infinite set of lattice points on one line from
/// some coordinate on; sets such as Δ₁^S(α) on a rayed column are infinite
/// and are reported this way instead of being truncated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDescription {
    /// Finite members below any tail, sorted.
    pub points: Vec<Point>,
    /// Full line tails contained in the set.
    pub tails: Vec<Tail>,
}

/// All lattice points of one line from a coordinate on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// {(x, y) : y ≥ from_y}.
    Column { x: u64, from_y: u64 },
    /// {(x, y) : x ≥ from_x}.
    Row { y: u64, from_x: u64 },
}

impl SetDescription {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.tails.is_empty()
    }

    /// Membership in the described set. A ray (a,∞) or (∞,b) counts as a
    /// member exactly when the set carries a tail of the matching line, so
    /// ray membership means "contains the whole upper end of that line".
    /// The top point (∞,∞) is never a member.
    pub fn contains(&self, p: Point) -> bool {
        if self.points.binary_search(&p).is_ok() {
            return true;
        }
        match (p.x, p.y) {
            (ExtNat::Fin(px), ExtNat::Fin(py)) => self.tails.iter().any(|t| match *t {
                Tail::Column { x, from_y } => px == x && py >= from_y,
                Tail::Row { y, from_x } => py == y && px >= from_x,
            }),
            (ExtNat::Fin(px), ExtNat::Inf) => self
                .tails
                .iter()
                .any(|t| matches!(*t, Tail::Column { x, .. } if x == px)),
            (ExtNat::Inf, ExtNat::Fin(py)) => self
                .tails
                .iter()
                .any(|t| matches!(*t, Tail::Row { y, .. } if y == py)),
            (ExtNat::Inf, ExtNat::Inf) => false,
        }
    }
}

/// Which Δ-set of a point to compute; see the module docs of the crate.
///
/// `Upper1` is Δ₁ (same first coordinate, larger second), `Upper2` is Δ₂,
/// `Upper` their union, `Lower1` is ₁Δ (same first coordinate, smaller
/// second) and `Lower2` is ₂Δ. For infinite points the extended
/// conventions apply: ₁Δ((a,∞)) is the whole column a, ₂Δ((a,∞)) = ∅,
/// and symmetrically for (∞,b); upper Δ-sets of infinite points are empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Upper1,
    Upper2,
    Upper,
    Lower1,
    Lower2,
}

/// A good subsemigroup of N², represented by small elements and conductor.
#[derive(Clone)]
pub struct GoodSemigroup {
    small: Vec<Point>,
    c: (u64, u64),
    e: (u64, u64),
    grid: Vec<bool>,
}

impl PartialEq for GoodSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.small == other.small
    }
}

impl Eq for GoodSemigroup {}

impl fmt::Debug for GoodSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GoodSemigroup {{ c: ({},{}), e: ({},{}), |small|: {} }}",
            self.c.0,
            self.c.1,
            self.e.0,
            self.e.1,
            self.small.len()
        )
    }
}

/// Checks every axiom on a candidate small set; pure, never panics.
pub fn validate(small: &[Point], conductor: Point) -> ValidationReport {
    let mut violations = Vec::new();
    let Some((c1, c2)) = conductor.fin() else {
        return ValidationReport { violations: vec![Violation::NonFinitePoint(conductor)] };
    };
    let mut pts: Vec<Point> = Vec::with_capacity(small.len());
    for &p in small {
        if p.fin().is_none() {
            violations.push(Violation::NonFinitePoint(p));
        } else {
            pts.push(p);
        }
    }
    pts.sort();
    pts.dedup();
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    if pts.binary_search(&Point::ZERO).is_err() {
        violations.push(Violation::MissingZero);
    }
    for &p in &pts {
        let (x, y) = p.fin().unwrap();
        if !p.is_zero() && (x == 0 || y == 0) {
            violations.push(Violation::NotLocal(p));
        }
        if x > c1 || y > c2 {
            violations.push(Violation::OutOfBox(p));
        }
    }
    if pts.binary_search(&conductor).is_err() {
        violations.push(Violation::ConductorAbsent(conductor));
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    let has = |x: u64, y: u64| pts.binary_search(&pt(x, y)).is_ok();
    let clamp_has = |x: u64, y: u64| has(x.min(c1), y.min(c2));

    for (i, &a) in pts.iter().enumerate() {
        let (ax, ay) = a.fin().unwrap();
        for &b in &pts[i + 1..] {
            let (bx, by) = b.fin().unwrap();
            if !has(ax.min(bx), ay.min(by)) {
                violations.push(Violation::MinClosure(a, b));
            }
            if !clamp_has(ax + bx, ay + by) {
                violations.push(Violation::SumEscapes(a, b));
            }
            // G3: for a pair sharing one coordinate the other coordinates
            // differ, so the completion witness is pinned to their minimum.
            if ax == bx {
                let m = ay.min(by);
                let found =
                    (ax + 1..=c1).any(|x| has(x, m)) || (ax >= c1 && has(c1, m));
                if !found {
                    violations.push(Violation::Completion(a, b));
                }
            }
            if ay == by {
                let m = ax.min(bx);
                let found =
                    (ay + 1..=c2).any(|y| has(m, y)) || (ay >= c2 && has(m, c2));
                if !found {
                    violations.push(Violation::Completion(a, b));
                }
            }
        }
        // Diagonal of the sum table: α + α must stay closed as well.
        if !clamp_has(ax + ax, ay + ay) {
            violations.push(Violation::SumEscapes(a, a));
        }
    }

    // Minimality of c reduces to its two immediate predecessors: if any
    // d < c had d + N² ⊆ S then one of these two would as well.
    if c1 > 0 && has(c1 - 1, c2) {
        violations.push(Violation::ConductorNotMinimal(pt(c1 - 1, c2)));
    }
    if c2 > 0 && has(c1, c2 - 1) {
        violations.push(Violation::ConductorNotMinimal(pt(c1, c2 - 1)));
    }

    ValidationReport { violations }
}

impl GoodSemigroup {
    /// Builds and validates a semigroup from its small elements and
    /// conductor. On failure the full list of violated axioms is returned.
    pub fn from_small(
        small: impl IntoIterator<Item = Point>,
        conductor: Point,
    ) -> Result<GoodSemigroup, ValidationReport> {
        let mut pts: Vec<Point> = small.into_iter().collect();
        pts.sort();
        pts.dedup();
        let report = validate(&pts, conductor);
        if !report.ok() {
            return Err(report);
        }
        let (c1, c2) = conductor.fin().unwrap();
        let mut grid = vec![false; ((c1 + 1) * (c2 + 1)) as usize];
        for &p in &pts {
            let (x, y) = p.fin().unwrap();
            grid[(x * (c2 + 1) + y) as usize] = true;
        }
        let e = if pts.len() == 1 {
            (1, 1) // S = N²: the nonzero elements start at (1,1).
        } else {
            let nz = pts.iter().filter(|p| !p.is_zero());
            let e1 = nz.clone().map(|p| p.x.fin().unwrap()).min().unwrap();
            let e2 = nz.clone().map(|p| p.y.fin().unwrap()).min().unwrap();
            (e1, e2)
        };
        Ok(GoodSemigroup { small: pts, c: (c1, c2), e, grid })
    }

    pub fn small_elements(&self) -> &[Point] {
        &self.small
    }

    pub fn conductor(&self) -> Point {
        pt(self.c.0, self.c.1)
    }

    pub fn multiplicity(&self) -> Point {
        pt(self.e.0, self.e.1)
    }

    pub fn c_pair(&self) -> (u64, u64) {
        self.c
    }

    pub fn e_pair(&self) -> (u64, u64) {
        self.e
    }

    /// c + e, the corner beyond which membership is uniform in every sense
    /// used by the algorithms of this crate.
    pub fn corner(&self) -> Point {
        pt(self.c.0 + self.e.0, self.c.1 + self.e.1)
    }

    /// Whether this is the degenerate semigroup N² (conductor (0,0)).
    pub fn is_n2(&self) -> bool {
        self.c == (0, 0)
    }

    fn grid_has(&self, x: u64, y: u64) -> bool {
        self.grid[(x * (self.c.1 + 1) + y) as usize]
    }

    /// Membership in Γ_S, rays included.
    pub fn contains(&self, p: Point) -> bool {
        match (p.x, p.y) {
            (ExtNat::Fin(x), ExtNat::Fin(y)) => {
                self.grid_has(x.min(self.c.0), y.min(self.c.1))
            }
            (ExtNat::Fin(a), ExtNat::Inf) => self.col_rayed(a),
            (ExtNat::Inf, ExtNat::Fin(b)) => self.row_rayed(b),
            (ExtNat::Inf, ExtNat::Inf) => true,
        }
    }

    /// (a,∞) ∈ Γ_S: the column a is full from c₂ on.
    pub fn col_rayed(&self, a: u64) -> bool {
        self.grid_has(a.min(self.c.0), self.c.1)
    }

    /// (∞,b) ∈ Γ_S: the row b is full from c₁ on.
    pub fn row_rayed(&self, b: u64) -> bool {
        self.grid_has(self.c.0, b.min(self.c.1))
    }

    /// Least y₀ with (a,y) ∈ S for all y ≥ y₀ (written ỹ), if the column
    /// is rayed at all.
    pub fn col_full_from(&self, a: u64) -> Option<u64> {
        if !self.col_rayed(a) {
            return None;
        }
        let mut y0 = self.c.1;
        while y0 > 0 && self.contains(pt(a, y0 - 1)) {
            y0 -= 1;
        }
        Some(y0)
    }

    /// Least x₀ with (x,b) ∈ S for all x ≥ x₀ (written x̃), if the row is
    /// rayed at all.
    pub fn row_full_from(&self, b: u64) -> Option<u64> {
        if !self.row_rayed(b) {
            return None;
        }
        let mut x0 = self.c.0;
        while x0 > 0 && self.contains(pt(x0 - 1, b)) {
            x0 -= 1;
        }
        Some(x0)
    }

    /// Finite members of S in the column x = a with y in [lo, hi].
    fn column_points(&self, a: u64, lo: u64, hi: u64) -> Vec<Point> {
        (lo..=hi).filter(|&y| self.contains(pt(a, y))).map(|y| pt(a, y)).collect()
    }

    fn row_points(&self, b: u64, lo: u64, hi: u64) -> Vec<Point> {
        (lo..=hi).filter(|&x| self.contains(pt(x, b))).map(|x| pt(x, b)).collect()
    }

    /// The part of the column x = a strictly above y = above, as points
    /// plus a tail when the column is rayed.
    fn column_above(&self, a: u64, above: u64) -> SetDescription {
        match self.col_full_from(a) {
            Some(y0) => {
                let start = y0.max(above + 1);
                SetDescription {
                    points: self.column_points(a, above + 1, start.saturating_sub(1)),
                    tails: vec![Tail::Column { x: a, from_y: start }],
                }
            }
            None => SetDescription {
                points: self.column_points(a, above + 1, self.c.1),
                tails: Vec::new(),
            },
        }
    }

    fn row_right(&self, b: u64, right_of: u64) -> SetDescription {
        match self.row_full_from(b) {
            Some(x0) => {
                let start = x0.max(right_of + 1);
                SetDescription {
                    points: self.row_points(b, right_of + 1, start.saturating_sub(1)),
                    tails: vec![Tail::Row { y: b, from_x: start }],
                }
            }
            None => SetDescription {
                points: self.row_points(b, right_of + 1, self.c.0),
                tails: Vec::new(),
            },
        }
    }

    /// The part of the column strictly below (always finite); for an
    /// infinite bound the whole column is returned, with its tail.
    fn column_below(&self, a: u64, below: ExtNat) -> SetDescription {
        match below {
            ExtNat::Fin(b) => {
                if b == 0 {
                    return SetDescription::default();
                }
                SetDescription {
                    points: self.column_points(a, 0, b - 1),
                    tails: Vec::new(),
                }
            }
            ExtNat::Inf => match self.col_full_from(a) {
                Some(y0) => SetDescription {
                    points: self.column_points(a, 0, y0.saturating_sub(1)),
                    tails: vec![Tail::Column { x: a, from_y: y0 }],
                },
                None => SetDescription {
                    points: self.column_points(a, 0, self.c.1),
                    tails: Vec::new(),
                },
            },
        }
    }

    fn row_left(&self, b: u64, left_of: ExtNat) -> SetDescription {
        match left_of {
            ExtNat::Fin(a) => {
                if a == 0 {
                    return SetDescription::default();
                }
                SetDescription { points: self.row_points(b, 0, a - 1), tails: Vec::new() }
            }
            ExtNat::Inf => match self.row_full_from(b) {
                Some(x0) => SetDescription {
                    points: self.row_points(b, 0, x0.saturating_sub(1)),
                    tails: vec![Tail::Row { y: b, from_x: x0 }],
                },
                None => SetDescription {
                    points: self.row_points(b, 0, self.c.0),
                    tails: Vec::new(),
                },
            },
        }
    }

    /// Δ-set queries against S. See [`DeltaKind`] for the conventions on
    /// infinite points.
    pub fn delta(&self, p: Point, kind: DeltaKind) -> SetDescription {
        match kind {
            DeltaKind::Upper => {
                let mut d = self.delta(p, DeltaKind::Upper1);
                let d2 = self.delta(p, DeltaKind::Upper2);
                d.points.extend(d2.points);
                d.points.sort();
                d.tails.extend(d2.tails);
                d
            }
            DeltaKind::Upper1 => match (p.x, p.y) {
                (ExtNat::Fin(a), ExtNat::Fin(b)) => self.column_above(a, b),
                _ => SetDescription::default(),
            },
            DeltaKind::Upper2 => match (p.x, p.y) {
                (ExtNat::Fin(a), ExtNat::Fin(b)) => self.row_right(b, a),
                _ => SetDescription::default(),
            },
            DeltaKind::Lower1 => match (p.x, p.y) {
                (ExtNat::Fin(a), below) => self.column_below(a, below),
                _ => SetDescription::default(),
            },
            DeltaKind::Lower2 => match (p.x, p.y) {
                (left_of, ExtNat::Fin(b)) => self.row_left(b, left_of),
                _ => SetDescription::default(),
            },
        }
    }

    /// Largest second (for axis X) or first (for axis Y) coordinate among
    /// the S-elements strictly below / left of p on its line: the values
    /// ₁δ^S(p) and ₂δ^S(p). `None` when that Δ-set is empty.
    pub fn delta_sup(&self, p: Point, axis: Axis) -> Option<u64> {
        let d = match axis {
            Axis::X => self.delta(p, DeltaKind::Lower1),
            Axis::Y => self.delta(p, DeltaKind::Lower2),
        };
        if let Some(t) = d.tails.first() {
            // A full tail has no maximum; the callers that use δ-values
            // never query a line whose lower part is infinite.
            let _ = t;
            unreachable!("delta_sup on an infinite lower set");
        }
        let pick = |q: &Point| match axis {
            Axis::X => q.y.fin().unwrap(),
            Axis::Y => q.x.fin().unwrap(),
        };
        d.points.iter().map(pick).max()
    }
}
