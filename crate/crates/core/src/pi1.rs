//! Fundamental groups of `X_n / G`.
//!
//! `X_n / G = ℂ³ / G̃` with `G̃` the extension of `G` by the lattice translations, and
//! `π₁ = G̃ / N(F)` where `F` is the set of elements of `G̃` with a fixed point.
//!
//! A lift of `(m; a)` has a fixed point iff every untwisted coordinate carries zero
//! translation: on a twisted coordinate `ζ^m − 1` is invertible over `ℂ`, so there
//! is always a solution. Its image in `G` is `F̄ = {g : a_j = 0 whenever m_j = 0}`.
//! If `G` contains an element `h` twisted on all three factors then every lattice
//! translation `ℓ` factors as `h⁻¹ · (h ℓ)` with both factors in `F`, so `Λ³ ⊆ N(F)`
//! and `π₁ ≅ G / ⟨F̄⟩`. Since `G` is abelian the normal closure is just the span.

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::vw_group::{closure, GroupElement, Subgroup};

/// Elements of `G` whose lifts can have a fixed point in `ℂ³`.
pub fn fixed_point_subset(group: &Subgroup) -> Result<Vec<GroupElement>> {
    group.require_admissible()?;
    Ok(group
        .iter()
        .copied()
        .filter(|g| (0..3).all(|j| g.twist()[j] != 0 || g.shift()[j] == 0))
        .collect())
}

/// `G / ⟨F̄⟩` in invariant-factor form.
pub fn fundamental_group(group: &Subgroup) -> Result<FiniteAbelianGroup> {
    let f = fixed_point_subset(group)?;
    if !group.iter().any(GroupElement::is_fully_twisted) {
        return Err(Error::Consistency(format!(
            "{group} has no element twisted on every factor"
        )));
    }
    let span = closure(group.curve_order(), &f)?;
    group.quotient(&span)
}
