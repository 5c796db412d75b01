//! Subgroup machinery on erased groups: conjugacy classes, closures, normal
//! subgroups, derived series, centers, quotients, and abelian invariants.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{mask_elements, mask_order, mask_subset, Group};

/// Conjugacy class partition: `classes[k]` lists the members of class k in
/// ascending index order; classes are ordered by their least element (so the
/// identity's class is first). `class_of[i]` is the class index of element i.
#[derive(Debug, Clone)]
pub struct Classes {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

/// Conjugacy classes as orbits under conjugation by the generators (which
/// generate conjugation by everything).
pub fn conjugacy_classes(g: &Group) -> Classes {
    let n = g.size() as usize;
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let k = classes.len() as u32;
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        class_of[start as usize] = k;
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &t in g.gens() {
                let y = g.conj(x, t);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = k;
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Classes { classes, class_of }
}

/// Subgroup generated by `seeds`, as a mask. Incremental closure: each seed
/// not already absorbed becomes a generator, and the known elements are
/// re-closed under it, so redundant seeds (the common case when seeding with
/// whole conjugacy classes) cost one lookup each.
pub fn subgroup_closure(g: &Group, seeds: impl IntoIterator<Item = u32>) -> Vec<bool> {
    let mut mask = vec![false; g.size() as usize];
    mask[g.identity() as usize] = true;
    let mut elements = vec![g.identity()];
    let mut gens: Vec<u32> = Vec::new();
    for s in seeds {
        if mask[s as usize] {
            continue;
        }
        gens.push(s);
        let mut queue: VecDeque<u32> = elements.iter().map(|&u| g.mul(u, s)).collect();
        while let Some(x) = queue.pop_front() {
            if mask[x as usize] {
                continue;
            }
            mask[x as usize] = true;
            elements.push(x);
            for &t in &gens {
                queue.push_back(g.mul(x, t));
            }
        }
    }
    mask
}

/// A small generating set for the subgroup given by `mask` (greedy: scan
/// ascending, keep an element iff it is not generated by those kept so far).
pub fn subgroup_generators(g: &Group, mask: &[bool]) -> Vec<u32> {
    let mut picked: Vec<u32> = Vec::new();
    let mut closed = subgroup_closure(g, picked.iter().copied());
    for x in mask_elements(mask) {
        if !closed[x as usize] {
            picked.push(x);
            closed = subgroup_closure(g, picked.iter().copied());
        }
    }
    debug_assert_eq!(&closed, mask, "mask must be multiplicatively closed");
    picked
}

/// Normal closure of `seeds` in G: the subgroup generated by the full
/// conjugacy classes of the seeds.
pub fn normal_closure(g: &Group, classes: &Classes, seeds: &[u32]) -> Vec<bool> {
    let mut class_members: Vec<u32> = Vec::new();
    let mut used = vec![false; classes.classes.len()];
    for &s in seeds {
        let k = classes.class_of[s as usize] as usize;
        if !used[k] {
            used[k] = true;
            class_members.extend(&classes.classes[k]);
        }
    }
    class_members.sort_unstable();
    subgroup_closure(g, class_members)
}

/// Derived subgroup [G, G]: normal closure of the generator commutators.
pub fn derived_subgroup(g: &Group, classes: &Classes) -> Vec<bool> {
    let mut seeds = Vec::new();
    for &a in g.gens() {
        for &b in g.gens() {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure(g, classes, &seeds)
}

/// Center Z(G): elements commuting with every generator.
pub fn center(g: &Group) -> Vec<bool> {
    (0..g.size())
        .map(|x| g.gens().iter().all(|&t| g.mul(x, t) == g.mul(t, x)))
        .collect()
}

/// True iff the generators pairwise commute (hence the group is abelian).
pub fn is_abelian(g: &Group) -> bool {
    g.gens().iter().all(|&a| g.gens().iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Derived subgroup of the subgroup H = ⟨h_gens⟩, computed inside G:
/// the closure of the commutators of H's generators under both the subgroup
/// operation and conjugation by H's generators.
fn derived_of_subgroup(g: &Group, h_gens: &[u32]) -> Vec<bool> {
    let mut seeds: Vec<u32> = Vec::new();
    for &a in h_gens {
        for &b in h_gens {
            seeds.push(g.commutator(a, b));
        }
    }
    let mut mask = subgroup_closure(g, seeds);
    loop {
        let mut extra: Vec<u32> = Vec::new();
        for x in mask_elements(&mask) {
            for &t in h_gens {
                let y = g.conj(x, t);
                if !mask[y as usize] {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return mask;
        }
        let mut seeds = mask_elements(&mask);
        seeds.extend(extra);
        mask = subgroup_closure(g, seeds);
    }
}

/// Solvability via the derived series: G ⊇ G′ ⊇ G″ ⊇ … reaches the trivial
/// subgroup iff G is solvable.
pub fn is_solvable(g: &Group) -> bool {
    let mut gens: Vec<u32> = g.gens().to_vec();
    let mut order = g.size();
    loop {
        let derived = derived_of_subgroup(g, &gens);
        let derived_order = mask_order(&derived);
        if derived_order == 1 {
            return true;
        }
        if derived_order == order {
            return false; // series stabilized above the trivial subgroup
        }
        order = derived_order;
        gens = subgroup_generators(g, &derived);
    }
}

/// Simplicity: |G| > 1 and the normal closure of every non-identity element
/// is all of G (checked per conjugacy class).
pub fn is_simple(g: &Group) -> bool {
    if g.size() <= 1 {
        return false;
    }
    let classes = conjugacy_classes(g);
    for class in &classes.classes {
        if class.len() == 1 && class[0] == g.identity() {
            continue;
        }
        let closure = subgroup_closure(g, class.iter().copied());
        if mask_order(&closure) != g.size() {
            return false;
        }
    }
    true
}

/// All normal subgroups of G, as masks sorted by (order, membership pattern).
///
/// Every normal subgroup is the join of the normal closures of the conjugacy
/// classes it contains, so the complete list is obtained by closing the
/// class-closure "atoms" under pairwise joins.
pub fn normal_subgroups(g: &Group, cap: u64) -> Result<Vec<Vec<bool>>> {
    if g.size() as u64 > cap {
        return Err(Error::cap("normal subgroup enumeration", g.size() as u64, cap));
    }
    let classes = conjugacy_classes(g);
    let mut atoms: Vec<Vec<bool>> = Vec::new();
    for class in &classes.classes {
        if class.len() == 1 && class[0] == g.identity() {
            continue;
        }
        let closure = subgroup_closure(g, class.iter().copied());
        if !atoms.contains(&closure) {
            atoms.push(closure);
        }
    }
    let mut subs: Vec<Vec<bool>> = vec![g.trivial_mask()];
    for atom in &atoms {
        if !subs.contains(atom) {
            subs.push(atom.clone());
        }
    }
    // Close under joins with atoms; each join is generated by the union of
    // small generating sets.
    loop {
        let mut added = false;
        let snapshot = subs.clone();
        for n in &snapshot {
            for atom in &atoms {
                if mask_subset(atom, n) {
                    continue;
                }
                let mut seeds = subgroup_generators(g, n);
                seeds.extend(subgroup_generators(g, atom));
                let join = subgroup_closure(g, seeds);
                if !subs.contains(&join) {
                    subs.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    subs.sort_by(|a, b| (mask_order(a), a).cmp(&(mask_order(b), b)));
    Ok(subs)
}

/// Validate that `mask` is a subgroup normal in G (identity present, closed
/// under conjugation by generators; multiplicative closure is trusted from
/// construction and spot-checked).
fn validate_normal(g: &Group, mask: &[bool]) -> Result<()> {
    if mask.len() != g.size() as usize || !mask[g.identity() as usize] {
        return Err(Error::InvalidParameter(
            "normal subgroup mask must contain the identity and match the group size".into(),
        ));
    }
    for x in mask_elements(mask) {
        for &t in g.gens() {
            if !mask[g.conj(x, t) as usize] {
                return Err(Error::InvalidParameter(format!(
                    "subgroup is not normal: conjugate of {} escapes",
                    g.label(x)
                )));
            }
        }
    }
    if g.size() % mask_order(mask) != 0 {
        return Err(Error::InvalidParameter("subgroup order does not divide |G|".into()));
    }
    Ok(())
}

/// Quotient G/N with coset representatives chosen as the least element index
/// of each coset (deterministic). The quotient's multiplication defers to G.
pub fn quotient_group(g: &Group, n_mask: &[bool]) -> Result<Group> {
    validate_normal(g, n_mask)?;
    let n_elements = mask_elements(n_mask);
    let size = g.size() as usize;
    let mut rep_of: Vec<u32> = vec![u32::MAX; size];
    let mut reps: Vec<u32> = Vec::new();
    for x in 0..size as u32 {
        if rep_of[x as usize] != u32::MAX {
            continue;
        }
        for &n in &n_elements {
            let y = g.mul(x, n);
            debug_assert_eq!(rep_of[y as usize], u32::MAX);
            rep_of[y as usize] = x;
        }
        reps.push(x);
    }
    let mut q_index: Vec<u32> = vec![u32::MAX; size];
    for (qi, &r) in reps.iter().enumerate() {
        q_index[r as usize] = qi as u32;
    }
    let q_size = reps.len() as u32;
    let q_index_for_identity = q_index[rep_of[g.identity() as usize] as usize];
    let inv: Vec<u32> =
        (0..q_size).map(|i| q_index[rep_of[g.inv(reps[i as usize]) as usize] as usize]).collect();
    let mut gens: Vec<u32> = Vec::new();
    for &t in g.gens() {
        let qt = q_index[rep_of[t as usize] as usize];
        if !gens.contains(&qt) {
            gens.push(qt);
        }
    }
    let parent = g.clone();
    let reps_mul = reps.clone();
    let rep_of_mul = rep_of;
    let q_index_mul = q_index;
    let mul = move |a: u32, b: u32| {
        let prod = parent.mul(reps_mul[a as usize], reps_mul[b as usize]);
        q_index_mul[rep_of_mul[prod as usize] as usize]
    };
    let parent_label = g.clone();
    let reps_label = reps;
    let label = move |i: u32| format!("[{}]", parent_label.label(reps_label[i as usize]));
    let q_identity = q_index_for_identity;
    Ok(Group::from_closures(
        format!("{}/N{}", g.name(), n_elements.len()),
        q_size,
        q_identity,
        gens,
        mul,
        inv,
        label,
    ))
}

/// The subgroup given by `mask`, reindexed as a group in its own right
/// (elements in ascending parent order; parent identity stays index 0).
pub fn subgroup(g: &Group, mask: &[bool]) -> Group {
    let elements = mask_elements(mask);
    debug_assert!(mask[g.identity() as usize], "identity must be in the subgroup");
    let size = elements.len() as u32;
    let mut back: Vec<u32> = vec![u32::MAX; g.size() as usize];
    for (i, &e) in elements.iter().enumerate() {
        back[e as usize] = i as u32;
    }
    let sub_identity = back[g.identity() as usize];
    let inv: Vec<u32> = elements.iter().map(|&e| back[g.inv(e) as usize]).collect();
    let gens: Vec<u32> =
        subgroup_generators(g, mask).into_iter().map(|t| back[t as usize]).collect();
    let parent = g.clone();
    let elems_mul = elements.clone();
    let back_mul = back;
    let mul = move |a: u32, b: u32| {
        let prod = parent.mul(elems_mul[a as usize], elems_mul[b as usize]);
        let sub = back_mul[prod as usize];
        debug_assert_ne!(sub, u32::MAX, "mask must be multiplicatively closed");
        sub
    };
    let parent_label = g.clone();
    let elems_label = elements;
    let label = move |i: u32| parent_label.label(elems_label[i as usize]);
    Group::from_closures(
        format!("{}⟨sub{size}⟩", g.name()),
        size,
        sub_identity,
        gens,
        mul,
        inv,
        label,
    )
}

/// Order of element `x`.
pub fn element_order(g: &Group, x: u32) -> u64 {
    let mut acc = x;
    let mut order = 1;
    while acc != g.identity() {
        acc = g.mul(acc, x);
        order += 1;
    }
    order
}

/// Invariant factors d₁ | d₂ | … of the abelianization G/[G,G], ascending.
/// Empty for perfect groups.
///
/// Works by repeatedly splitting off a cyclic direct summand generated by an
/// element of maximal order (valid in any finite abelian group), so no
/// integer matrix normal form is needed.
pub fn abelianization_invariants(g: &Group) -> Result<Vec<u64>> {
    let classes = conjugacy_classes(g);
    let derived = derived_subgroup(g, &classes);
    let mut q = quotient_group(g, &derived)?;
    let expected: u64 = (q.size()) as u64;
    let mut factors_desc: Vec<u64> = Vec::new();
    while q.size() > 1 {
        if !is_abelian(&q) {
            return Err(Error::Inconsistency(
                "quotient by the derived subgroup is not abelian".into(),
            ));
        }
        let (best, best_order) = (0..q.size())
            .map(|x| (x, element_order(&q, x)))
            .max_by_key(|&(x, ord)| (ord, std::cmp::Reverse(x)))
            .expect("nontrivial group");
        factors_desc.push(best_order);
        let cyclic: Vec<u32> = {
            let mut acc = q.identity();
            let mut elems = vec![acc];
            loop {
                acc = q.mul(acc, best);
                if acc == q.identity() {
                    break;
                }
                elems.push(acc);
            }
            elems
        };
        let mut mask = vec![false; q.size() as usize];
        for e in cyclic {
            mask[e as usize] = true;
        }
        q = quotient_group(&q, &mask)?;
    }
    factors_desc.reverse();
    let product: u64 = factors_desc.iter().product::<u64>().max(1);
    if product != expected.max(1) {
        return Err(Error::Inconsistency(format!(
            "invariant factor product {product} differs from |G/G'| = {expected}"
        )));
    }
    for pair in factors_desc.windows(2) {
        if pair[1] % pair[0] != 0 {
            return Err(Error::Inconsistency(format!(
                "invariant factors {factors_desc:?} violate the divisibility chain"
            )));
        }
    }
    Ok(factors_desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a5, a5xa5, cyclic, direct_product, mod_add, s5, sl2, subdirect_sl25, symmetric};
    use crate::group::DEFAULT_GROUP_CAP;

    fn orders(subs: &[Vec<bool>]) -> Vec<u32> {
        subs.iter().map(|m| mask_order(m)).collect()
    }

    #[test]
    fn a5_class_sizes() {
        let g = a5();
        let classes = conjugacy_classes(&g);
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes[0], 1, "identity class comes first");
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn s5_class_count_matches_partitions_of_five() {
        let g = s5();
        assert_eq!(conjugacy_classes(&g).classes.len(), 7);
    }

    #[test]
    fn class_partition_is_consistent() {
        let g = symmetric(4, 100).unwrap();
        let classes = conjugacy_classes(&g);
        let total: usize = classes.classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.size() as usize);
        for (k, class) in classes.classes.iter().enumerate() {
            for &x in class {
                assert_eq!(classes.class_of[x as usize] as usize, k);
            }
            assert!(class.windows(2).all(|w| w[0] < w[1]), "members sorted");
            // Class sizes divide the group order.
            assert_eq!(g.size() as usize % class.len(), 0);
        }
    }

    #[test]
    fn s4_normal_subgroup_orders() {
        let g = symmetric(4, 100).unwrap();
        let subs = normal_subgroups(&g, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(orders(&subs), vec![1, 4, 12, 24]);
    }

    #[test]
    fn sl25_normal_subgroup_orders() {
        let g = sl2(5, DEFAULT_GROUP_CAP).unwrap();
        let subs = normal_subgroups(&g, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(orders(&subs), vec![1, 2, 120]);
    }

    #[test]
    fn a5xa5_has_exactly_four_normal_subgroups() {
        let g = a5xa5();
        let subs = normal_subgroups(&g, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(orders(&subs), vec![1, 60, 60, 3600]);
    }

    #[test]
    fn direct_product_normals_include_both_factors() {
        let a = symmetric(3, 10).unwrap();
        let b = cyclic(5);
        let g = direct_product(&a, &b);
        let subs = normal_subgroups(&g, DEFAULT_GROUP_CAP).unwrap();
        // S3×C5: normals are products of normals of the factors.
        assert_eq!(orders(&subs), vec![1, 3, 5, 6, 15, 30]);
    }

    #[test]
    fn centers() {
        assert_eq!(mask_order(&center(&a5())), 1);
        assert_eq!(mask_order(&center(&sl2(5, DEFAULT_GROUP_CAP).unwrap())), 2);
        assert_eq!(mask_order(&center(&subdirect_sl25(DEFAULT_GROUP_CAP).unwrap())), 4);
        let c6 = cyclic(6);
        assert_eq!(mask_order(&center(&c6)), 6);
    }

    #[test]
    fn derived_subgroups() {
        let s5 = s5();
        let classes = conjugacy_classes(&s5);
        assert_eq!(mask_order(&derived_subgroup(&s5, &classes)), 60);
        let a5 = a5();
        let classes = conjugacy_classes(&a5);
        assert_eq!(mask_order(&derived_subgroup(&a5, &classes)), 60);
        let sub = subdirect_sl25(DEFAULT_GROUP_CAP).unwrap();
        let classes = conjugacy_classes(&sub);
        assert_eq!(mask_order(&derived_subgroup(&sub, &classes)), 120);
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&symmetric(4, 100).unwrap()));
        assert!(is_solvable(&cyclic(12)));
        assert!(!is_solvable(&a5()));
        assert!(!is_solvable(&s5()));
        assert!(!is_solvable(&subdirect_sl25(DEFAULT_GROUP_CAP).unwrap()));
        assert!(is_solvable(&cyclic(1)));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&a5()));
        assert!(is_simple(&cyclic(7)), "prime cyclic groups are simple");
        assert!(!is_simple(&cyclic(6)));
        assert!(!is_simple(&s5()));
        assert!(!is_simple(&cyclic(1)));
        assert!(!is_simple(&a5xa5()));
    }

    #[test]
    fn quotient_of_s4_by_klein_four_is_s3_shaped() {
        let g = symmetric(4, 100).unwrap();
        let subs = normal_subgroups(&g, DEFAULT_GROUP_CAP).unwrap();
        let v4 = subs.iter().find(|m| mask_order(m) == 4).unwrap();
        let q = quotient_group(&g, v4).unwrap();
        assert_eq!(q.size(), 6);
        assert!(!is_abelian(&q));
        assert_eq!(abelianization_invariants(&q).unwrap(), vec![2]);
    }

    #[test]
    fn quotient_rejects_non_normal_subgroups() {
        let g = symmetric(3, 10).unwrap();
        // A 2-element subgroup of S3 is not normal.
        let two = (0..g.size()).find(|&x| x != g.identity() && g.mul(x, x) == g.identity()).unwrap();
        let mask = subgroup_closure(&g, [two]);
        assert_eq!(mask_order(&mask), 2);
        assert!(quotient_group(&g, &mask).is_err());
    }

    #[test]
    fn abelianization_oracles() {
        assert_eq!(abelianization_invariants(&cyclic(6)).unwrap(), vec![6]);
        assert_eq!(abelianization_invariants(&mod_add(&[2, 4]).unwrap()).unwrap(), vec![2, 4]);
        assert_eq!(abelianization_invariants(&mod_add(&[2, 2]).unwrap()).unwrap(), vec![2, 2]);
        assert_eq!(abelianization_invariants(&symmetric(3, 10).unwrap()).unwrap(), vec![2]);
        assert_eq!(abelianization_invariants(&a5()).unwrap(), Vec::<u64>::new());
        assert_eq!(
            abelianization_invariants(&subdirect_sl25(DEFAULT_GROUP_CAP).unwrap()).unwrap(),
            vec![2]
        );
        assert_eq!(abelianization_invariants(&mod_add(&[6, 15]).unwrap()).unwrap(), vec![3, 30]);
    }

    #[test]
    fn subgroup_reindexing_preserves_structure() {
        let g = s5();
        let classes = conjugacy_classes(&g);
        let derived = derived_subgroup(&g, &classes);
        let h = subgroup(&g, &derived);
        assert_eq!(h.size(), 60);
        assert!(is_simple(&h));
        assert!(!is_abelian(&h));
    }

    #[test]
    fn element_orders_in_cyclic_groups() {
        let g = cyclic(12);
        let one = (0..12).find(|&x| element_order(&g, x) == 12).unwrap();
        let mut seen: Vec<u64> = (0..12).map(|x| element_order(&g, x)).collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![1, 2, 3, 3, 4, 4, 6, 6, 12, 12, 12, 12]);
        let _ = one;
    }

    #[test]
    fn normal_closure_of_a_transposition_in_s5_is_everything() {
        let g = s5();
        let classes = conjugacy_classes(&g);
        let transposition = (0..g.size())
            .find(|&x| x != g.identity() && g.mul(x, x) == g.identity() && {
                let label = g.label(x);
                label.matches('(').count() == 1
            })
            .unwrap();
        let closure = normal_closure(&g, &classes, &[transposition]);
        assert_eq!(mask_order(&closure), 120);
    }

    #[test]
    fn cap_is_enforced() {
        let g = a5();
        assert!(matches!(
            normal_subgroups(&g, 10),
            Err(crate::error::Error::CapExceeded { .. })
        ));
    }
}
