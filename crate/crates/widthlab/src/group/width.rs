//! Commutator width via breadth-first search over the Cayley graph generated
//! by the set of single commutators.

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, mask_elements, Group};

/// Result of the width computation on a group small enough to enumerate.
#[derive(Debug, Clone)]
pub struct WidthAnalysis {
    /// Sorted element indices of C = { [a, b] : a, b ∈ G }.
    pub commutators: Vec<u32>,
    /// `lengths[i]` = least k with element i a product of k commutators
    /// (identity ↦ 0); `None` if i is outside the subgroup generated by C.
    pub lengths: Vec<Option<u32>>,
    /// Maximum finite length if every element is reachable (then the group is
    /// perfect and this is its commutator width); `None` otherwise.
    pub width: Option<u32>,
}

/// The set of single commutators, computed classwise: [a, b] = a⁻¹·aᵇ, and as
/// b runs over G the conjugate aᵇ runs over the class of a, so
/// C = ⋃_K { x⁻¹y : x, y ∈ K } at cost Σ|K|² instead of |G|².
pub fn commutator_set(g: &Group) -> Vec<u32> {
    let classes = conjugacy_classes(g);
    let mut mask = vec![false; g.size() as usize];
    for class in &classes.classes {
        for &x in class {
            let xi = g.inv(x);
            for &y in class {
                mask[g.mul(xi, y) as usize] = true;
            }
        }
    }
    mask_elements(&mask)
}

/// Breadth-first search for the commutator length of every element.
/// Errors with a cap violation if |G| > cap.
pub fn commutator_width_analysis(g: &Group, cap: u64) -> Result<WidthAnalysis> {
    if g.size() as u64 > cap {
        return Err(Error::cap("commutator width search", g.size() as u64, cap));
    }
    let commutators = commutator_set(g);
    let mut lengths: Vec<Option<u32>> = vec![None; g.size() as usize];
    lengths[g.identity() as usize] = Some(0);
    let mut frontier = vec![g.identity()];
    let mut reached = 1usize;
    let mut level = 0u32;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &c in &commutators {
                let y = g.mul(x, c);
                if lengths[y as usize].is_none() {
                    lengths[y as usize] = Some(level);
                    next.push(y);
                }
            }
        }
        reached += next.len();
        frontier = next;
    }
    let width = if reached == g.size() as usize {
        lengths.iter().map(|l| l.expect("all reached")).max()
    } else {
        None
    };
    Ok(WidthAnalysis { commutators, lengths, width })
}

impl WidthAnalysis {
    /// Commutator length of a single element (`None` if unreachable).
    pub fn length(&self, x: u32) -> Option<u32> {
        self.lengths[x as usize]
    }
}

/// Diameter of the Cayley graph of the subgroup given by `mask` under
/// right-multiplication by `gens` (which the caller should make
/// inverse-closed for the metric interpretation). Returns `None` when the
/// generators do not reach the whole subgroup.
pub fn cayley_diameter(g: &Group, mask: &[bool], gens: &[u32]) -> Option<u32> {
    let members = mask_elements(mask);
    let mut dist: Vec<Option<u32>> = vec![None; g.size() as usize];
    dist[g.identity() as usize] = Some(0);
    let mut frontier = vec![g.identity()];
    let mut reached = 1usize;
    let mut level = 0u32;
    let mut diameter = 0u32;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &s in gens {
                let y = g.mul(x, s);
                debug_assert!(mask[y as usize], "generators must stay inside the subgroup");
                if dist[y as usize].is_none() {
                    dist[y as usize] = Some(level);
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            diameter = level;
        }
        reached += next.len();
        frontier = next;
    }
    if reached == members.len() {
        Some(diameter)
    } else {
        None
    }
}
