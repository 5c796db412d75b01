//! Structural predicates: perfection, semisimplicity, quasisimplicity,
//! almost-simplicity, central products, and the two canonical radicals.

use crate::error::{Error, Result};
use crate::group::{
    center, conjugacy_classes, derived_subgroup, is_abelian, is_simple, is_solvable,
    mask_elements, mask_order, mask_subset, normal_subgroups, quotient_group, subgroup, Group,
};

/// G is perfect iff it equals its derived subgroup.
pub fn is_perfect(g: &Group) -> bool {
    let classes = conjugacy_classes(g);
    mask_order(&derived_subgroup(g, &classes)) == g.size()
}

/// Minimal elements among the nontrivial proper-or-full normal subgroups.
pub fn minimal_normal_subgroups(subs: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let nontrivial: Vec<&Vec<bool>> = subs.iter().filter(|m| mask_order(m) > 1).collect();
    let mut out = Vec::new();
    for (i, m) in nontrivial.iter().enumerate() {
        if nontrivial.iter().enumerate().all(|(j, other)| j == i || !proper_subset(other, m)) {
            out.push((*m).clone());
        }
    }
    out
}

fn proper_subset(a: &[bool], b: &[bool]) -> bool {
    mask_subset(a, b) && mask_order(a) < mask_order(b)
}

/// Semisimplicity from a precomputed normal-subgroup list: G is the internal
/// direct product of its minimal normal subgroups and each of those is
/// non-abelian simple. The trivial group counts as the empty product.
pub fn is_semisimple_with(g: &Group, subs: &[Vec<bool>]) -> bool {
    if g.size() == 1 {
        return true;
    }
    let minimals = minimal_normal_subgroups(subs);
    if minimals.is_empty() {
        return false;
    }
    let mut order_product: u128 = 1;
    for m in &minimals {
        let h = subgroup(g, m);
        if is_abelian(&h) || !is_simple(&h) {
            return false;
        }
        order_product *= mask_order(m) as u128;
    }
    if order_product != g.size() as u128 {
        return false;
    }
    for (i, a) in minimals.iter().enumerate() {
        for b in minimals.iter().skip(i + 1) {
            let both = a.iter().zip(b.iter()).filter(|(x, y)| **x && **y).count();
            if both != 1 {
                return false;
            }
            let a_elems = mask_elements(a);
            let b_elems = mask_elements(b);
            for &x in &a_elems {
                for &y in &b_elems {
                    if g.mul(x, y) != g.mul(y, x) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Semisimplicity, enumerating normal subgroups under `cap`.
pub fn is_semisimple(g: &Group, cap: u64) -> Result<bool> {
    let subs = normal_subgroups(g, cap)?;
    Ok(is_semisimple_with(g, &subs))
}

/// Quasisimplicity: perfect with non-abelian simple central quotient.
pub fn is_quasisimple(g: &Group) -> Result<bool> {
    if !is_perfect(g) {
        return Ok(false);
    }
    let q = quotient_group(g, &center(g))?;
    Ok(!is_abelian(&q) && is_simple(&q))
}

/// Perfect with semisimple central quotient; equivalent to being an internal
/// central product of quasisimple subgroups.
pub fn is_central_product_of_quasisimples(g: &Group, cap: u64) -> Result<bool> {
    if !is_perfect(g) {
        return Ok(false);
    }
    let q = quotient_group(g, &center(g))?;
    is_semisimple(&q, cap)
}

/// The central quotient is semisimple (no perfection requirement).
pub fn is_central_ext_of_semisimple(g: &Group, cap: u64) -> Result<bool> {
    let q = quotient_group(g, &center(g))?;
    is_semisimple(&q, cap)
}

/// Unique maximal member of `subs` passing `pred`; errors if some passing
/// member is not contained in the maximal one (which would contradict the
/// radical being well defined).
fn unique_maximal(
    g: &Group,
    subs: &[Vec<bool>],
    what: &str,
    mut pred: impl FnMut(&Group, &[bool]) -> Result<bool>,
) -> Result<Vec<bool>> {
    let mut passing: Vec<&Vec<bool>> = Vec::new();
    for m in subs {
        if pred(g, m)? {
            passing.push(m);
        }
    }
    let best = passing
        .iter()
        .max_by_key(|m| mask_order(m))
        .ok_or_else(|| Error::Inconsistency(format!("{what}: no candidate (not even trivial)")))?;
    for m in &passing {
        if !mask_subset(m, best) {
            return Err(Error::Inconsistency(format!(
                "{what}: candidates of orders {} and {} are incomparable",
                mask_order(m),
                mask_order(best)
            )));
        }
    }
    Ok((*best).clone())
}

/// Largest solvable normal subgroup (uniqueness asserted).
pub fn solvable_radical(g: &Group, subs: &[Vec<bool>]) -> Result<Vec<bool>> {
    unique_maximal(g, subs, "solvable radical", |g, m| Ok(is_solvable(&subgroup(g, m))))
}

/// Largest semisimple normal subgroup (uniqueness asserted). The trivial
/// subgroup always qualifies, so this is total.
pub fn cr_radical(g: &Group, subs: &[Vec<bool>], cap: u64) -> Result<Vec<bool>> {
    unique_maximal(g, subs, "CR-radical", |g, m| {
        if mask_order(m) == 1 {
            return Ok(true);
        }
        is_semisimple(&subgroup(g, m), cap)
    })
}

/// Almost simple: trivial solvable radical and non-abelian simple CR-radical.
pub fn is_almost_simple(g: &Group, cap: u64) -> Result<bool> {
    let subs = normal_subgroups(g, cap)?;
    if mask_order(&solvable_radical(g, &subs)?) != 1 {
        return Ok(false);
    }
    let cr = cr_radical(g, &subs, cap)?;
    if mask_order(&cr) == 1 {
        return Ok(false);
    }
    let h = subgroup(g, &cr);
    Ok(!is_abelian(&h) && is_simple(&h))
}
