//! Reducibility of irreducible absolutes and the sors it produces.
//!
//! Fix a good semigroup S and a subset η ⊆ I_A(S). An element
//! α ∈ I_A(S)∖η is *reducible by η* when the products-and-meets closure
//! ⟨⟨η⟩⟩ ⊆ Γ_S pins α down from one side:
//!
//! * column side: ₁Δ^{⟨⟨η⟩⟩}(α) ≠ ∅ and for every y ∈ Y^η(α) some closure
//!   element (x,y) has x > α₁;
//! * row side: the transposed condition over X^η(α).
//!
//! Here ᵢΔ are the lower line parts (₁Δ(α) restricts the column of α
//! below α, ₂Δ(α) the row to its left), ᵢδ their suprema, and
//! Y^η(α) = {y ∈ [₁δ^{⟨⟨η⟩⟩}(α), ₁δ^S(α)] : (α₁,y) ∈ S}, with the upper
//! end max{ỹ, ₁δ}+e₂−1 instead when α = (α₁,∞) is a ray (ỹ being the
//! level from which the column of S is full). Elements of η count as
//! reducible by convention. Iterating "add everything currently
//! reducible" yields the closure red(η); sets with red(η) = I_A(S)
//! satisfy the *reducibility condition*, are always sors, and the least
//! size of such a set is Bedim(S).
//!
//! ρ-reducibility is the product-only, row-sided variant: condition (1)
//! asks for a nonempty product of η landing on the row of α strictly to
//! its left at some (β₁,α₂), condition (2) dominates every S-member of
//! the row between β₁ and the scan top from strictly above by a product.
//! Column rays (α₁,∞) are never ρ-reducible. Filtering I_A(S) by
//! ρ-reducibility against all the other irreducible absolutes yields the
//! sor produced by [`rho_sor`]; filtering by "the finite row predecessors
//! lie in the shifted Apéry set" yields the sor η_S of [`apery_sor`],
//! whose size is at most e₁+e₂.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::closure::{irreducible_absolutes, GeneratorSet, Product, ProductMonoid};
use crate::point::{pt, Axis, ExtNat, Point};
use crate::semigroup::GoodSemigroup;
use crate::tracks::minimal_hitting_sets;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("{0} is not an irreducible absolute of the semigroup")]
    NotIrreducibleAbsolute(Point),
}

/// One-sided certificate: how ⟨⟨η⟩⟩ fares against α along its column
/// (side 1) or row (side 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideScan {
    /// ᵢδ^{⟨⟨η⟩⟩}(α), the supremum of the closure on the lower line part.
    pub delta_eta: u64,
    /// A product of η attaining that supremum.
    pub delta_product: Product,
    /// Top of the scanned range: ᵢδ^S(α) for finite α, max{line-full
    /// level, δ} + e − 1 for a ray.
    pub hi: u64,
    /// The members of Y^η(α) resp. X^η(α): values in [δ, hi] whose line
    /// point lies in S.
    pub members: Vec<u64>,
    /// Per member, a closure product strictly beyond α on the crossing
    /// line, up to the first member without one.
    pub witnesses: Vec<(u64, Product)>,
    /// First member that no closure element dominates, if any.
    pub fails_at: Option<u64>,
}

impl SideScan {
    /// The side condition holds iff every member was dominated.
    pub fn holds(&self) -> bool {
        self.fails_at.is_none()
    }
}

/// Why α is or is not reducible by η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// α ∈ η: reducible by convention.
    Member,
    /// Side certificates; a missing side has empty ᵢΔ^{⟨⟨η⟩⟩}(α). Rays
    /// only ever have the side of their finite coordinate.
    Scans {
        column: Option<SideScan>,
        row: Option<SideScan>,
    },
}

/// Verdict of [`is_reducible_by`] together with its full certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reducibility {
    pub reducible: bool,
    pub evidence: Evidence,
}

/// The round-by-round computation of red(η): η = chain[0] ⊂ chain[1] ⊂ …
/// with certificates[r] listing every element that became reducible in
/// round r, alongside its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub chain: Vec<GeneratorSet>,
    pub certificates: Vec<Vec<(Point, Reducibility)>>,
}

impl ReductionTrace {
    /// red(η), the stable end of the chain.
    pub fn result(&self) -> &GeneratorSet {
        self.chain.last().expect("the chain starts at η")
    }

    pub fn rounds(&self) -> usize {
        self.certificates.len()
    }
}

/// Why α is or is not ρ-reducible by η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho {
    /// α = (α₁,∞): no product lands on an infinite column, so column
    /// rays are never ρ-reducible.
    ColumnRay,
    /// No nonempty product of η hits the row of α strictly to its left.
    NoRowProduct,
    /// Condition (1) holds at (β₁,α₂); the scan settles condition (2).
    Scan {
        beta1: u64,
        beta1_product: Product,
        /// ₂δ^S(α) for finite α, max{β₁, row-full level} + e₁ − 1 for a
        /// row ray.
        hi: u64,
        /// Values x ∈ [β₁, hi] with (x,α₂) ∈ S.
        members: Vec<u64>,
        /// Per member, a product (x,β₂) with β₂ > α₂, up to the first
        /// member without one.
        witnesses: Vec<(u64, Product)>,
        fails_at: Option<u64>,
    },
}

/// Verdict of [`is_rho_reducible`] together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoVerdict {
    pub reducible: bool,
    pub how: Rho,
}

/// Shared scan state: the irreducible absolutes and table caps of S.
struct Rx<'a> {
    s: &'a GoodSemigroup,
    ia: Vec<Point>,
    e: (u64, u64),
    cap_x: u64,
    cap_y: u64,
}

impl<'a> Rx<'a> {
    fn new(s: &'a GoodSemigroup) -> Rx<'a> {
        let (c1, c2) = s.c_pair();
        let (e1, e2) = s.e_pair();
        let (b1, b2) = (c1 + e1, c2 + e2);
        // Scans fix one coordinate below b and range the other up to
        // max{full level, δ} + e; a product confined to such a slice has
        // at most b_j/e_j factors, so its free coordinate stays under
        // (b_j/e_j + 1)·b_i. These caps keep every consulted table entry
        // exact.
        let cap_x = (b2 / e2 + 1) * b1 + e1 + 1;
        let cap_y = (b1 / e1 + 1) * b2 + e2 + 1;
        Rx {
            s,
            ia: irreducible_absolutes(s),
            e: (e1, e2),
            cap_x,
            cap_y,
        }
    }

    fn monoid(&self, eta: &GeneratorSet) -> ProductMonoid {
        ProductMonoid::new(eta, self.cap_x, self.cap_y)
    }

    fn check_subset(&self, eta: &GeneratorSet) -> Result<(), ReduceError> {
        for &g in eta.points() {
            self.check_member(g)?;
        }
        Ok(())
    }

    fn check_member(&self, alpha: Point) -> Result<(), ReduceError> {
        if self.ia.binary_search(&alpha).is_err() {
            return Err(ReduceError::NotIrreducibleAbsolute(alpha));
        }
        Ok(())
    }

    /// The side scan of α ∈ I_A(S) along the line that fixes its `axis`
    /// coordinate (X: column below α; Y: row to its left). None when the
    /// closure misses the lower line part entirely.
    fn side_scan(&self, m: &ProductMonoid, alpha: Point, axis: Axis) -> Option<SideScan> {
        let v = alpha
            .coord(axis)
            .fin()
            .expect("side scans fix a finite coordinate");
        let along = alpha.coord(axis.other());
        let delta_eta = match m.slice_sup(axis, v)? {
            ExtNat::Fin(d) => d,
            // A closure ray through this line would put elements of Γ_S
            // strictly beyond the absolute α.
            ExtNat::Inf => unreachable!("closure ray crossing an irreducible absolute"),
        };
        let hi = match along {
            ExtNat::Fin(_) => {
                debug_assert!(ExtNat::Fin(delta_eta) < along);
                self.s
                    .delta_sup(alpha, axis)
                    .expect("the δ-attaining product lies in S on this line")
            }
            ExtNat::Inf => {
                let full_from = match axis {
                    Axis::X => self.s.col_full_from(v),
                    Axis::Y => self.s.row_full_from(v),
                }
                .expect("rays of Γ_S sit on full lines of S");
                let step = match axis {
                    Axis::X => self.e.1,
                    Axis::Y => self.e.0,
                };
                delta_eta.max(full_from) + step - 1
            }
        };
        assert!(
            delta_eta <= hi,
            "closure δ exceeds the semigroup δ on a side scan"
        );
        let members: Vec<u64> = (delta_eta..=hi)
            .filter(|&w| {
                self.s.contains(match axis {
                    Axis::X => pt(v, w),
                    Axis::Y => pt(w, v),
                })
            })
            .collect();
        let mut witnesses = Vec::new();
        let mut fails_at = None;
        for &w in &members {
            let dominated = m
                .slice_sup(axis.other(), w)
                .is_some_and(|o| o > ExtNat::Fin(v));
            if !dominated {
                fails_at = Some(w);
                break;
            }
            let wit = m
                .witness_at_least(axis.other(), w, ExtNat::Fin(v + 1))
                .expect("the slice supremum promised a dominating product");
            witnesses.push((w, wit));
        }
        let delta_product = m
            .witness_at_least(axis, v, ExtNat::Fin(delta_eta))
            .expect("δ is attained by a product");
        debug_assert_eq!(
            delta_product.eval(),
            match axis {
                Axis::X => pt(v, delta_eta),
                Axis::Y => pt(delta_eta, v),
            }
        );
        Some(SideScan {
            delta_eta,
            delta_product,
            hi,
            members,
            witnesses,
            fails_at,
        })
    }

    fn reducibility(&self, m: &ProductMonoid, eta: &GeneratorSet, alpha: Point) -> Reducibility {
        if eta.contains(alpha) {
            return Reducibility {
                reducible: true,
                evidence: Evidence::Member,
            };
        }
        // ⟨⟨η⟩⟩ ⊆ Γ_S, so membership of α would decompose it as a
        // nontrivial sum or meet inside Γ_S, contradicting irreducibility.
        debug_assert!(!m.contains(alpha));
        let (column, row) = match (alpha.x, alpha.y) {
            (ExtNat::Fin(_), ExtNat::Fin(_)) => (
                self.side_scan(m, alpha, Axis::X),
                self.side_scan(m, alpha, Axis::Y),
            ),
            (ExtNat::Fin(_), ExtNat::Inf) => (self.side_scan(m, alpha, Axis::X), None),
            (ExtNat::Inf, ExtNat::Fin(_)) => (None, self.side_scan(m, alpha, Axis::Y)),
            (ExtNat::Inf, ExtNat::Inf) => unreachable!("(∞,∞) is never an irreducible absolute"),
        };
        let holds = |scan: &Option<SideScan>| scan.as_ref().is_some_and(SideScan::holds);
        Reducibility {
            reducible: holds(&column) || holds(&row),
            evidence: Evidence::Scans { column, row },
        }
    }

    fn closure_trace(&self, eta: &GeneratorSet) -> ReductionTrace {
        let mut chain = vec![eta.clone()];
        let mut certificates = Vec::new();
        loop {
            let cur = chain.last().expect("the chain starts at η");
            let m = self.monoid(cur);
            let mut added = Vec::new();
            for &alpha in &self.ia {
                if cur.contains(alpha) {
                    continue;
                }
                let r = self.reducibility(&m, cur, alpha);
                if r.reducible {
                    added.push((alpha, r));
                }
            }
            if added.is_empty() {
                return ReductionTrace {
                    chain,
                    certificates,
                };
            }
            let next = GeneratorSet::new(
                cur.points()
                    .iter()
                    .copied()
                    .chain(added.iter().map(|&(p, _)| p)),
            )
            .expect("irreducible absolutes exclude (∞,∞)");
            chain.push(next);
            certificates.push(added);
        }
    }

    fn satisfies(&self, eta: &GeneratorSet) -> bool {
        self.closure_trace(eta).result().len() == self.ia.len()
    }

    fn rho(&self, eta: &GeneratorSet, alpha: Point) -> RhoVerdict {
        // A factor with first coordinate ≥ α₁ (= ∞ for a row ray) can
        // never occur in a defining product, so α itself is discarded.
        let eta = GeneratorSet::new(eta.points().iter().copied().filter(|&p| p != alpha))
            .expect("a subset of a generator set");
        let not = |how| RhoVerdict {
            reducible: false,
            how,
        };
        let b = match (alpha.x, alpha.y) {
            (_, ExtNat::Inf) => return not(Rho::ColumnRay),
            (_, ExtNat::Fin(b)) => b,
        };
        let m = self.monoid(&eta);
        let Some(beta1) = m.slice_fin_sup(Axis::Y, b) else {
            return not(Rho::NoRowProduct);
        };
        let beta1_product = m
            .witness_at_least(Axis::Y, b, ExtNat::Fin(beta1))
            .expect("β₁ is attained by a finite product");
        if beta1_product.0.is_empty() {
            // The empty product does not qualify as h₁⊙⋯⊙h_k with k ≥ 1;
            // it is the only nonsaturated route to a row sum of 0.
            return not(Rho::NoRowProduct);
        }
        debug_assert_eq!(beta1_product.eval(), pt(beta1, b));
        let hi = match alpha.x {
            ExtNat::Fin(a) => {
                debug_assert!(beta1 < a);
                self.s
                    .delta_sup(alpha, Axis::Y)
                    .expect("the β₁-attaining product lies in S on this row")
            }
            ExtNat::Inf => {
                let full_from = self
                    .s
                    .row_full_from(b)
                    .expect("rays of Γ_S sit on full rows of S");
                beta1.max(full_from) + self.e.0 - 1
            }
        };
        let members: Vec<u64> = (beta1..=hi)
            .filter(|&x| self.s.contains(pt(x, b)))
            .collect();
        let mut witnesses = Vec::new();
        let mut fails_at = None;
        for &x in &members {
            let dominated = m
                .slice_sup(Axis::X, x)
                .is_some_and(|o| o > ExtNat::Fin(b));
            if !dominated {
                fails_at = Some(x);
                break;
            }
            let wit = m
                .witness_at_least(Axis::X, x, ExtNat::Fin(b + 1))
                .expect("the slice supremum promised a dominating product");
            witnesses.push((x, wit));
        }
        RhoVerdict {
            reducible: fails_at.is_none(),
            how: Rho::Scan {
                beta1,
                beta1_product,
                hi,
                members,
                witnesses,
                fails_at,
            },
        }
    }
}

/// ᵢδ^{⟨⟨η⟩⟩}(α): the supremum of the closure of η on the lower line
/// part of α fixed by `axis` (X: the column below α; Y: the row to its
/// left; for a ray the whole finite line). α may be any point whose
/// fixed coordinate stays within the conductor box plus multiplicity.
pub fn delta_eta(
    s: &GoodSemigroup,
    eta: &GeneratorSet,
    alpha: Point,
    axis: Axis,
) -> Result<Option<u64>, ReduceError> {
    let rx = Rx::new(s);
    rx.check_subset(eta)?;
    let m = rx.monoid(eta);
    let v = match alpha.coord(axis) {
        ExtNat::Fin(v) => v,
        // ᵢΔ of a point whose i-th coordinate is ∞ is empty by convention.
        ExtNat::Inf => return Ok(None),
    };
    assert!(v <= m.cap(axis), "query point outside the supported box");
    let scan_top = match alpha.coord(axis.other()) {
        // The whole finite line: no product escapes the table caps.
        ExtNat::Inf => m.cap(axis.other()),
        ExtNat::Fin(0) => return Ok(None),
        ExtNat::Fin(t) => t - 1,
    };
    for w in (0..=scan_top).rev() {
        let q = match axis {
            Axis::X => pt(v, w),
            Axis::Y => pt(w, v),
        };
        if m.contains(q) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether α ∈ I_A(S) is reducible by η ⊆ I_A(S), with the full
/// certificate. Elements of η are reducible by convention.
pub fn is_reducible_by(
    s: &GoodSemigroup,
    eta: &GeneratorSet,
    alpha: Point,
) -> Result<Reducibility, ReduceError> {
    let rx = Rx::new(s);
    rx.check_subset(eta)?;
    rx.check_member(alpha)?;
    let m = rx.monoid(eta);
    Ok(rx.reducibility(&m, eta, alpha))
}

/// red(η): rounds of "adjoin every currently reducible irreducible
/// absolute" until stable, with certificates per round.
pub fn reduction_closure(
    s: &GoodSemigroup,
    eta: &GeneratorSet,
) -> Result<ReductionTrace, ReduceError> {
    let rx = Rx::new(s);
    rx.check_subset(eta)?;
    Ok(rx.closure_trace(eta))
}

/// Whether red(η) = I_A(S).
pub fn satisfies_reducibility_condition(
    s: &GoodSemigroup,
    eta: &GeneratorSet,
) -> Result<bool, ReduceError> {
    let rx = Rx::new(s);
    rx.check_subset(eta)?;
    Ok(rx.satisfies(eta))
}

/// Bedim(S) = min{|η| : red(η) = I_A(S)}, with the first witness in
/// size-ascending, lexicographic order. Every η with red(η) = I_A(S)
/// must hit every track, so candidates are exactly the supersets of the
/// minimal hitting sets; η = I_A(S) always qualifies, so the search
/// terminates.
pub fn big_bedim(s: &GoodSemigroup) -> (usize, GeneratorSet) {
    let rx = Rx::new(s);
    let family = minimal_hitting_sets(s);
    let smallest = family
        .transversals
        .first()
        .map_or(0, |t| t.len());
    for k in smallest..=rx.ia.len() {
        let mut pool: BTreeSet<Vec<Point>> = BTreeSet::new();
        for t in &family.transversals {
            if t.len() > k {
                continue;
            }
            let extra: Vec<Point> = rx.ia.iter().copied().filter(|p| !t.contains(p)).collect();
            for combo in combinations(&extra, k - t.len()) {
                let mut cand: Vec<Point> = t.iter().copied().chain(combo).collect();
                cand.sort();
                pool.insert(cand);
            }
        }
        for cand in pool {
            let eta =
                GeneratorSet::new(cand).expect("irreducible absolutes exclude (∞,∞)");
            if rx.satisfies(&eta) {
                return (k, eta);
            }
        }
    }
    unreachable!("red(I_A(S)) = I_A(S), so some candidate always satisfies")
}

/// All k-element subsets of `items`, in lexicographic index order.
fn combinations(items: &[Point], k: usize) -> Vec<Vec<Point>> {
    if k > items.len() {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // Advance the rightmost index that still has room.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether α ∈ I_A(S) is ρ-reducible by η ⊆ I_A(S): a nonempty product
/// of η lands at (β₁,α₂) with β₁ < α₁, and every x ∈ [β₁, top] with
/// (x,α₂) ∈ S carries a product (x,β₂), β₂ > α₂. The top is ₂δ^S(α) for
/// finite α and max{β₁,x̃}+e₁−1 for a row ray, x̃ being the level from
/// which the row of S is full. Column rays are never ρ-reducible.
pub fn is_rho_reducible(
    s: &GoodSemigroup,
    eta: &GeneratorSet,
    alpha: Point,
) -> Result<RhoVerdict, ReduceError> {
    let rx = Rx::new(s);
    rx.check_subset(eta)?;
    rx.check_member(alpha)?;
    Ok(rx.rho(eta, alpha))
}

/// The sor obtained by dropping from I_A(S) every element that is
/// ρ-reducible by all the others. The defining test never consults
/// earlier drops, so the outcome is order-independent.
pub fn rho_sor(s: &GoodSemigroup) -> GeneratorSet {
    let rx = Rx::new(s);
    let all = GeneratorSet::new(rx.ia.iter().copied())
        .expect("irreducible absolutes exclude (∞,∞)");
    let kept = rx
        .ia
        .iter()
        .copied()
        .filter(|&alpha| !rx.rho(&all, alpha).reducible);
    GeneratorSet::new(kept).expect("a subset of the irreducible absolutes")
}

/// β ∈ Ap̄(S) = (Ap(S)∖{0}) ∪ {e} for β ∈ S, where Ap(S) = {β ∈ S :
/// β − e ∉ S} is the Apéry set of the multiplicity e.
pub(crate) fn in_shifted_apery(s: &GoodSemigroup, beta: Point) -> bool {
    debug_assert!(s.contains(beta));
    if beta == s.multiplicity() {
        return true;
    }
    if beta == pt(0, 0) {
        return false;
    }
    let (e1, e2) = s.e_pair();
    let (bx, by) = (
        beta.x.fin().expect("elements of S are finite"),
        beta.y.fin().expect("elements of S are finite"),
    );
    if bx < e1 || by < e2 {
        // β − e leaves N² entirely; only Γ_{N²} has such members.
        return true;
    }
    !s.contains(pt(bx - e1, by - e2))
}

/// The sor η_S = {α ∈ I_A(S) : ₂Δ^S(α) ⊆ Ap̄(S)}: every finite row
/// predecessor of α in S lies in the shifted Apéry set. Its size is at
/// most e₁ + e₂.
pub fn apery_sor(s: &GoodSemigroup) -> GeneratorSet {
    let rx = Rx::new(s);
    let (c1, _) = s.c_pair();
    let (e1, _) = s.e_pair();
    let ok_at = |x: u64, b: u64| !s.contains(pt(x, b)) || in_shifted_apery(s, pt(x, b));
    let keep = |&alpha: &Point| match (alpha.x, alpha.y) {
        (ExtNat::Fin(a), ExtNat::Fin(b)) => (0..a).all(|x| ok_at(x, b)),
        // ₂Δ of a column ray is empty: nothing to check.
        (ExtNat::Fin(_), ExtNat::Inf) => true,
        // The whole finite row: membership and the Apéry test are both
        // constant once x − e₁ clears the conductor, so the scan may stop
        // at c₁ + e₁.
        (ExtNat::Inf, ExtNat::Fin(b)) => (0..=c1 + e1).all(|x| ok_at(x, b)),
        (ExtNat::Inf, ExtNat::Inf) => unreachable!("(∞,∞) is never an irreducible absolute"),
    };
    GeneratorSet::new(rx.ia.iter().filter(|p| keep(p)).copied())
        .expect("a subset of the irreducible absolutes")
}
