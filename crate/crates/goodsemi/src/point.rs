//! Points of the extended lattice N̄² = (N ∪ {∞})² and the tropical
//! operations ⊕ = componentwise min and ⊙ = componentwise sum, with ∞
//! absorbing under addition.
//!
//! The derived `Ord` on [`Point`] is the lexicographic storage order used
//! to keep sets sorted and output deterministic; the order-theoretic
//! comparisons of the semigroup (componentwise ≤, strict ≪, and ≤≤) are
//! the explicit methods [`Point::le_all`], [`Point::ll`], [`Point::lele`].

use std::fmt;

/// A coordinate in N ∪ {∞}. `Fin(n) < Inf` for every finite n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn is_inf(self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    /// The finite value, if any.
    pub fn fin(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    /// Extended addition: n + ∞ = ∞.
    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }

    /// Extended subtraction of a finite value: ∞ − k = ∞, and `None` when
    /// the result would be negative.
    pub fn sub(self, k: u64) -> Option<ExtNat> {
        match self {
            ExtNat::Fin(n) => n.checked_sub(k).map(ExtNat::Fin),
            ExtNat::Inf => Some(ExtNat::Inf),
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One of the two coordinate axes of N̄².
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// An element α = (α₁, α₂) of N̄².
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: ExtNat,
    pub y: ExtNat,
}

/// Shorthand for a finite point.
pub fn pt(x: u64, y: u64) -> Point {
    Point { x: ExtNat::Fin(x), y: ExtNat::Fin(y) }
}

/// The vertical ray (a, ∞).
pub fn col_ray(a: u64) -> Point {
    Point { x: ExtNat::Fin(a), y: ExtNat::Inf }
}

/// The horizontal ray (∞, b).
pub fn row_ray(b: u64) -> Point {
    Point { x: ExtNat::Inf, y: ExtNat::Fin(b) }
}

impl Point {
    pub const ZERO: Point = Point { x: ExtNat::Fin(0), y: ExtNat::Fin(0) };
    pub const TOP: Point = Point { x: ExtNat::Inf, y: ExtNat::Inf };

    pub fn new(x: ExtNat, y: ExtNat) -> Point {
        Point { x, y }
    }

    pub fn coord(self, axis: Axis) -> ExtNat {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    pub fn with_coord(self, axis: Axis, v: ExtNat) -> Point {
        match axis {
            Axis::X => Point { x: v, ..self },
            Axis::Y => Point { y: v, ..self },
        }
    }

    pub fn is_finite(self) -> bool {
        !self.x.is_inf() && !self.y.is_inf()
    }

    pub fn is_zero(self) -> bool {
        self == Point::ZERO
    }

    /// Both coordinates, when finite.
    pub fn fin(self) -> Option<(u64, u64)> {
        Some((self.x.fin()?, self.y.fin()?))
    }

    /// Tropical sum α ⊕ β = min{α, β} componentwise.
    pub fn oplus(self, other: Point) -> Point {
        Point { x: self.x.min(other.x), y: self.y.min(other.y) }
    }

    /// Tropical product α ⊙ β = α + β with ∞ absorbing.
    pub fn odot(self, other: Point) -> Point {
        Point { x: self.x.add(other.x), y: self.y.add(other.y) }
    }

    /// k-fold tropical power k·α = α ⊙ ... ⊙ α; k must be positive, so
    /// 0·∞ never arises.
    pub fn scale(self, k: u64) -> Point {
        debug_assert!(k >= 1);
        let mul = |v: ExtNat| match v {
            ExtNat::Fin(n) => ExtNat::Fin(n * k),
            ExtNat::Inf => ExtNat::Inf,
        };
        Point { x: mul(self.x), y: mul(self.y) }
    }

    /// Componentwise difference, `None` when some coordinate would go
    /// negative; ∞ − n = ∞. Only finite subtrahends are meaningful here.
    pub fn checked_sub(self, other: Point) -> Option<Point> {
        let (bx, by) = other.fin()?;
        Some(Point { x: self.x.sub(bx)?, y: self.y.sub(by)? })
    }

    /// Componentwise partial order α ≤ β.
    pub fn le_all(self, other: Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Strict order α ≪ β: both coordinates strictly smaller.
    pub fn ll(self, other: Point) -> bool {
        self.x < other.x && self.y < other.y
    }

    /// α ≤≤ β: equal or ≪.
    pub fn lele(self, other: Point) -> bool {
        self == other || self.ll(other)
    }

    /// Incomparability in the componentwise order.
    pub fn incomparable(self, other: Point) -> bool {
        !self.le_all(other) && !other.le_all(self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
