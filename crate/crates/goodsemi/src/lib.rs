//! Exact invariants of good subsemigroups of N².
//!
//! A *good semigroup* S ⊆ N² is a submonoid that is closed under
//! componentwise minimum, has a conductor c with c + N² ⊆ S, and satisfies
//! the completion axiom G3. Adjoining the infinite elements (a,∞), (∞,b)
//! and (∞,∞) turns S into the semiring Γ_S under the tropical operations
//! ⊕ = min and ⊙ = +. This crate computes, exactly and deterministically:
//!
//! * the irreducible absolute elements I_A(S), which generate Γ_S;
//! * tracks, the track hypergraph, its minimal hitting sets, and bedim(S);
//! * the reducibility closure red(η), the reducibility condition, Bedim(S),
//!   ρ-reducibility, and the sors η_S and rho_sor(S);
//! * conductor bounds for generator sets, exhaustive searches for good
//!   semigroups between a generator set and an ambient semigroup, sor and
//!   msor certification, and the embedding dimension edim(S);
//! * the Apéry set of S relative to its multiplicity e, its partition into
//!   e₁+e₂ levels, the Arf property, and the M+M = e+M test.
//!
//! Semigroups are represented by their finitely many *small elements*
//! S ∩ [0,c] together with c; everything else, including ray membership, is
//! derived from that data. All operations are pure functions over immutable
//! values, safe to share across threads.

pub mod closure;
pub mod io;
pub mod oracle;
pub mod point;
pub mod reduce;
pub mod search;
pub mod semigroup;
pub mod tracks;

pub use point::{Axis, ExtNat, Point};
pub use semigroup::{GoodSemigroup, SetDescription, ValidationReport};
