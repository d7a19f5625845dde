//! Slow reference implementations used to cross-check the fast routines.
//!
//! Everything here computes straight from the definitions: the closure
//! under ⊕ = min and ⊙ = + is a literal fixed point over a truncated
//! domain, the axiom scan tests every pair of points in a box, and the
//! irreducibility and absoluteness predicates enumerate all candidate
//! decompositions. None of it is fast; all of it is simple enough to
//! trust, which is the point.

use crate::point::{col_ray, pt, row_ray, ExtNat, Point};
use crate::semigroup::GoodSemigroup;

/// Closure of a generator set under ⊕ and ⊙ over a truncated domain.
///
/// Finite coordinate values live in 0..=cap; any larger finite value is
/// collapsed into a single saturation bucket, and ∞ is kept separate.
/// Both operations are exact on this quotient (min and + never move a
/// value from one side of cap to the other inconsistently), so membership
/// answers for points with all finite coordinates ≤ cap are exact.
pub struct NaiveClosure {
    cap: u64,
    side: usize,
    grid: Vec<bool>,
}

const fn enc_inf(cap: u64) -> u64 {
    cap + 2
}

impl NaiveClosure {
    pub fn compute(gens: &[Point], cap: u64) -> NaiveClosure {
        let big = cap + 1;
        let inf = enc_inf(cap);
        let side = (cap + 3) as usize;
        let enc = |v: ExtNat| match v {
            ExtNat::Fin(n) => n.min(big),
            ExtNat::Inf => inf,
        };
        let add = |a: u64, b: u64| {
            if a == inf || b == inf {
                inf
            } else {
                (a + b).min(big)
            }
        };
        let idx = |x: u64, y: u64| x as usize * side + y as usize;

        let mut grid = vec![false; side * side];
        let mut elems: Vec<(u64, u64)> = Vec::new();
        let push = |grid: &mut Vec<bool>, elems: &mut Vec<(u64, u64)>, x: u64, y: u64| {
            if !grid[idx(x, y)] {
                grid[idx(x, y)] = true;
                elems.push((x, y));
            }
        };
        push(&mut grid, &mut elems, 0, 0);
        for g in gens {
            push(&mut grid, &mut elems, enc(g.x), enc(g.y));
        }
        // Worklist: every unordered pair is handled when its later member
        // is reached, so the loop terminates at the full closure.
        let mut i = 0;
        while i < elems.len() {
            let (ax, ay) = elems[i];
            for j in 0..=i {
                let (bx, by) = elems[j];
                push(&mut grid, &mut elems, ax.min(bx), ay.min(by));
                push(&mut grid, &mut elems, add(ax, bx), add(ay, by));
            }
            i += 1;
        }
        NaiveClosure { cap, side, grid }
    }

    /// Membership; finite coordinates must be ≤ cap.
    pub fn contains(&self, p: Point) -> bool {
        let enc = |v: ExtNat| match v {
            ExtNat::Fin(n) => {
                assert!(n <= self.cap, "query beyond the truncation cap");
                n
            }
            ExtNat::Inf => enc_inf(self.cap),
        };
        self.grid[enc(p.x) as usize * self.side + enc(p.y) as usize]
    }
}

/// Checks the good-semigroup axioms directly against a membership
/// predicate, scanning the box [0, c + margin]. Witness searches for the
/// completion axiom probe the same margin past the conductor. Returns a
/// description of every failure found.
pub fn scan_axiom_failures(
    member: &dyn Fn(u64, u64) -> bool,
    c: (u64, u64),
    margin: (u64, u64),
) -> Vec<String> {
    let mut failures = Vec::new();
    let (c1, c2) = c;
    let (hx, hy) = (c1 + margin.0, c2 + margin.1);

    if !member(0, 0) {
        failures.push("zero is missing".to_string());
    }
    if c != (0, 0) {
        for x in 1..=hx {
            if member(x, 0) {
                failures.push(format!("not local: ({x},0) present"));
            }
        }
        for y in 1..=hy {
            if member(0, y) {
                failures.push(format!("not local: (0,{y}) present"));
            }
        }
    }

    let pts: Vec<(u64, u64)> = (0..=hx)
        .flat_map(|x| (0..=hy).map(move |y| (x, y)))
        .filter(|&(x, y)| member(x, y))
        .collect();

    for (i, &(ax, ay)) in pts.iter().enumerate() {
        for &(bx, by) in &pts[i + 1..] {
            if !member(ax.min(bx), ay.min(by)) {
                failures.push(format!("min closure fails at ({ax},{ay}), ({bx},{by})"));
            }
            if ax == bx {
                let m = ay.min(by);
                if !(ax + 1..=hx + margin.0).any(|x| member(x, m)) {
                    failures.push(format!(
                        "completion fails for ({ax},{ay}), ({bx},{by})"
                    ));
                }
            }
            if ay == by {
                let m = ax.min(bx);
                if !(ay + 1..=hy + margin.1).any(|y| member(m, y)) {
                    failures.push(format!(
                        "completion fails for ({ax},{ay}), ({bx},{by})"
                    ));
                }
            }
        }
    }
    for (i, &(ax, ay)) in pts.iter().enumerate() {
        for &(bx, by) in &pts[..=i] {
            if !member(ax + bx, ay + by) {
                failures.push(format!("sum escapes at ({ax},{ay}) + ({bx},{by})"));
            }
        }
    }

    for x in c1..=hx {
        for y in c2..=hy {
            if !member(x, y) {
                failures.push(format!("conductor quadrant misses ({x},{y})"));
            }
        }
    }
    if c1 > 0 && (c2..=hy).all(|y| member(c1 - 1, y)) {
        failures.push(format!("conductor not minimal in x: column {}", c1 - 1));
    }
    if c2 > 0 && (c1..=hx).all(|x| member(x, c2 - 1)) {
        failures.push(format!("conductor not minimal in y: row {}", c2 - 1));
    }

    failures
}

/// Absoluteness of α ∈ Γ_S by enumerating ⊕-decompositions.
///
/// Any decomposition α = β₁ ⊕ β₂ forces both βᵢ ≥ α componentwise, and a
/// finite witness beyond the box can be clamped to c+1 without changing
/// membership or which coordinates achieve the minimum. Infinite points
/// are always absolute.
pub fn naive_is_absolute(s: &GoodSemigroup, p: Point) -> bool {
    debug_assert!(s.contains(p));
    let Some((px, py)) = p.fin() else { return true };
    let (c1, c2) = s.c_pair();
    let mut witnesses: Vec<Point> = Vec::new();
    for x in px..=c1 + 1 {
        for y in py..=c2 + 1 {
            if s.contains(pt(x, y)) {
                witnesses.push(pt(x, y));
            }
        }
    }
    if s.col_rayed(px) {
        witnesses.push(col_ray(px));
    }
    if s.row_rayed(py) {
        witnesses.push(row_ray(py));
    }
    witnesses.push(Point::TOP);
    for &b1 in &witnesses {
        for &b2 in &witnesses {
            if b1.oplus(b2) == p && b1 != p && b2 != p {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of α ∈ Γ_S by enumerating ⊙-decompositions into two
/// factors, neither equal to α itself.
pub fn naive_is_irreducible(s: &GoodSemigroup, p: Point) -> bool {
    debug_assert!(s.contains(p));
    let (c1, c2) = s.c_pair();
    match (p.x, p.y) {
        (ExtNat::Fin(px), ExtNat::Fin(py)) => {
            // Factors of a finite point are finite and bounded by it.
            for x in 0..=px {
                for y in 0..=py {
                    let b = pt(x, y);
                    if !b.is_zero() && b != p && s.contains(b) && s.contains(pt(px - x, py - y)) {
                        return false;
                    }
                }
            }
            true
        }
        (ExtNat::Fin(a), ExtNat::Inf) => {
            for b in 0..=a {
                if !s.col_rayed(b) {
                    continue;
                }
                let rest = a - b;
                if b != a && (0..=c2).any(|y| s.contains(pt(rest, y))) {
                    return false;
                }
                if b != a && b != 0 && s.col_rayed(rest) {
                    return false;
                }
            }
            true
        }
        (ExtNat::Inf, ExtNat::Fin(b)) => {
            for y in 0..=b {
                if !s.row_rayed(y) {
                    continue;
                }
                let rest = b - y;
                if y != b && (0..=c1).any(|x| s.contains(pt(x, rest))) {
                    return false;
                }
                if y != b && y != 0 && s.row_rayed(rest) {
                    return false;
                }
            }
            true
        }
        (ExtNat::Inf, ExtNat::Inf) => {
            // (∞,∞) splits into any column ray ⊙ any row ray.
            !((0..=c1).any(|a| s.col_rayed(a)) && (0..=c2).any(|b| s.row_rayed(b)))
        }
    }
}

/// The set I_A(S) of irreducible absolute elements, assembled from the
/// two naive predicates. Finite members necessarily lie among the small
/// elements; ray candidates live below c + e on their axis.
pub fn naive_irreducible_absolutes(s: &GoodSemigroup) -> Vec<Point> {
    let (c1, c2) = s.c_pair();
    let (e1, e2) = s.e_pair();
    let mut out: Vec<Point> = Vec::new();
    for &p in s.small_elements() {
        if !p.is_zero() && naive_is_absolute(s, p) && naive_is_irreducible(s, p) {
            out.push(p);
        }
    }
    for a in 0..c1 + e1 {
        if s.col_rayed(a) && naive_is_irreducible(s, col_ray(a)) {
            out.push(col_ray(a));
        }
    }
    for b in 0..c2 + e2 {
        if s.row_rayed(b) && naive_is_irreducible(s, row_ray(b)) {
            out.push(row_ray(b));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> GoodSemigroup {
        GoodSemigroup::from_small(
            vec![pt(0, 0), pt(2, 2), pt(3, 3), pt(4, 4)],
            pt(4, 4),
        )
        .unwrap()
    }

    #[test]
    fn closure_mixes_rays_and_finite_points() {
        let cl = NaiveClosure::compute(&[col_ray(1), row_ray(1)], 10);
        // (1,∞) ⊙ (1,∞) = (2,∞), then ⊕ with (∞,1) gives (2,1).
        assert!(cl.contains(pt(2, 1)));
        assert!(cl.contains(pt(1, 1)));
        assert!(cl.contains(col_ray(2)));
        assert!(cl.contains(Point::TOP));
        assert!(!cl.contains(pt(0, 1)));
        assert!(cl.contains(pt(0, 0)));
    }

    #[test]
    fn closure_of_diagonal_generators_stays_diagonal() {
        let cl = NaiveClosure::compute(&[pt(2, 2), pt(3, 3)], 12);
        for x in 0..=12u64 {
            for y in 0..=12u64 {
                if cl.contains(pt(x, y)) {
                    assert_eq!(x, y);
                }
            }
        }
        assert!(cl.contains(pt(5, 5)));
        assert!(!cl.contains(pt(1, 1)));
    }

    #[test]
    fn axiom_scan_accepts_the_chain() {
        let s = chain();
        let member = |x: u64, y: u64| s.contains(pt(x, y));
        assert!(scan_axiom_failures(&member, s.c_pair(), (2, 2)).is_empty());
    }

    #[test]
    fn axiom_scan_accepts_n2() {
        let member = |_: u64, _: u64| true;
        assert!(scan_axiom_failures(&member, (0, 0), (3, 3)).is_empty());
    }

    #[test]
    fn axiom_scan_flags_a_min_closure_gap() {
        // {0, (1,2), (2,1), c=(2,2)} misses min = (1,1).
        let member = |x: u64, y: u64| {
            (x == 0 && y == 0) || (x >= 2 && y >= 2) || (x == 1 && y >= 2) || (x >= 2 && y == 1)
        };
        let failures = scan_axiom_failures(&member, (2, 2), (2, 2));
        assert!(failures.iter().any(|f| f.contains("min closure")));
    }

    #[test]
    fn chain_irreducible_absolutes() {
        let s = chain();
        assert_eq!(
            naive_irreducible_absolutes(&s),
            vec![
                pt(2, 2),
                pt(3, 3),
                col_ray(4),
                col_ray(5),
                row_ray(4),
                row_ray(5),
            ]
        );
    }

    #[test]
    fn n2_irreducible_absolutes() {
        let s = GoodSemigroup::from_small(vec![pt(0, 0)], pt(0, 0)).unwrap();
        assert_eq!(
            naive_irreducible_absolutes(&s),
            vec![col_ray(0), row_ray(0)]
        );
    }

    #[test]
    fn absoluteness_matches_column_and_row_gaps() {
        let s = chain();
        assert!(naive_is_absolute(&s, pt(2, 2)));
        assert!(naive_is_absolute(&s, pt(3, 3)));
        // (4,4) has both the column above and the row to the right full.
        assert!(!naive_is_absolute(&s, pt(4, 4)));
    }
}
