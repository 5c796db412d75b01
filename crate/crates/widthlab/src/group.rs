//! Black-box finite group engine.
//!
//! A group is enumerated once from generators into an index space
//! `0..|G|` (breadth-first, so indexing is deterministic and the identity is
//! index 0), then erased behind [`Group`]: a size, a multiplication closure
//! on indices, an inverse table, and a labelling function. All analysis —
//! conjugacy classes, normal subgroups, derived series, commutator width,
//! structure predicates — works on [`Group`] and never needs the concrete
//! element type again.
//!
//! Subgroups are `Vec<bool>` masks over the parent's indices.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

pub mod analysis;
pub mod classify;
pub mod spec;
pub mod width;

pub use self::analysis::{
    abelianization_invariants, center, conjugacy_classes, derived_subgroup, element_order,
    is_abelian, is_simple, is_solvable, normal_closure, normal_subgroups, quotient_group,
    subgroup, subgroup_closure, subgroup_generators, Classes,
};
pub use self::classify::{
    cr_radical, is_almost_simple, is_central_ext_of_semisimple,
    is_central_product_of_quasisimples, is_perfect, is_quasisimple, is_semisimple,
    is_semisimple_with, minimal_normal_subgroups, solvable_radical,
};
pub use self::spec::GroupSpec;
pub use self::width::{cayley_diameter, commutator_set, commutator_width_analysis, WidthAnalysis};

/// Default cap on enumerated group sizes.
pub const DEFAULT_GROUP_CAP: u64 = 20_000;

/// Multiplication/inversion/identity contract for a concrete element type.
///
/// The ops value carries any shared context (degree, field modulus, action
/// tables), keeping elements themselves small.
pub trait ElementOps {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Human-readable label; defaults to the `Debug` form.
    fn label(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// A finite group fully enumerated from generators, with elements indexed in
/// breadth-first discovery order (identity first).
pub struct EnumeratedGroup<O: ElementOps> {
    pub ops: O,
    elements: Vec<O::Elem>,
    index: HashMap<O::Elem, u32>,
    gen_indices: Vec<u32>,
}

impl<O: ElementOps> EnumeratedGroup<O> {
    pub fn size(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn element(&self, i: u32) -> &O::Elem {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &O::Elem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn gen_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[O::Elem] {
        &self.elements
    }
}

/// Breadth-first closure of the generators; fails once more than `cap`
/// elements have been discovered. Empty generator list gives the trivial
/// group.
pub fn generate<O: ElementOps>(ops: O, gens: &[O::Elem], cap: u64) -> Result<EnumeratedGroup<O>> {
    let identity = ops.identity();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<O::Elem, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let product = ops.mul(&elements[i as usize], g);
            if !index.contains_key(&product) {
                let id = elements.len() as u32;
                if elements.len() as u64 >= cap {
                    return Err(Error::cap(
                        "group enumeration".to_string(),
                        elements.len() as u64 + 1,
                        cap,
                    ));
                }
                elements.push(product.clone());
                index.insert(product, id);
                queue.push_back(id);
            }
        }
    }
    let gen_indices = gens
        .iter()
        .map(|g| *index.get(g).expect("generators are in their own closure"))
        .collect();
    Ok(EnumeratedGroup { ops, elements, index, gen_indices })
}

struct GroupInner {
    name: String,
    size: u32,
    identity: u32,
    gens: Vec<u32>,
    mul: Box<dyn Fn(u32, u32) -> u32 + Send + Sync>,
    inv: Vec<u32>,
    label: Box<dyn Fn(u32) -> String + Send + Sync>,
}

/// Type-erased finite group on indices `0..size`. Cheap to clone (shared).
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl Group {
    /// Erase an enumerated group. The multiplication closure multiplies the
    /// concrete elements and looks the product up again.
    pub fn from_enumerated<O>(name: impl Into<String>, eg: EnumeratedGroup<O>) -> Group
    where
        O: ElementOps + Send + Sync + 'static,
        O::Elem: Send + Sync,
    {
        let inv: Vec<u32> = (0..eg.size())
            .map(|i| {
                eg.index_of(&eg.ops.inv(eg.element(i))).expect("closed under inversion")
            })
            .collect();
        let gens = eg.gen_indices.clone();
        let size = eg.size();
        let shared = Arc::new(eg);
        let for_mul = Arc::clone(&shared);
        let mul = Box::new(move |a: u32, b: u32| {
            for_mul
                .index_of(&for_mul.ops.mul(for_mul.element(a), for_mul.element(b)))
                .expect("closed under multiplication")
        });
        let for_label = Arc::clone(&shared);
        let label = Box::new(move |i: u32| for_label.ops.label(for_label.element(i)));
        Group {
            inner: Arc::new(GroupInner {
                name: name.into(),
                size,
                identity: 0,
                gens,
                mul,
                inv,
                label,
            }),
        }
    }

    /// Build directly from closures (used by constructions that index their
    /// elements arithmetically instead of via hashing).
    pub fn from_closures(
        name: impl Into<String>,
        size: u32,
        identity: u32,
        gens: Vec<u32>,
        mul: impl Fn(u32, u32) -> u32 + Send + Sync + 'static,
        inv: Vec<u32>,
        label: impl Fn(u32) -> String + Send + Sync + 'static,
    ) -> Group {
        debug_assert_eq!(inv.len(), size as usize);
        Group {
            inner: Arc::new(GroupInner {
                name: name.into(),
                size,
                identity,
                gens,
                mul: Box::new(mul),
                inv,
                label: Box::new(label),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn size(&self) -> u32 {
        self.inner.size
    }

    pub fn identity(&self) -> u32 {
        self.inner.identity
    }

    pub fn gens(&self) -> &[u32] {
        &self.inner.gens
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (self.inner.mul)(a, b)
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inner.inv[a as usize]
    }

    /// `x^g = g⁻¹xg`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn label(&self, i: u32) -> String {
        (self.inner.label)(i)
    }

    /// The whole group as a mask.
    pub fn full_mask(&self) -> Vec<bool> {
        vec![true; self.size() as usize]
    }

    /// Mask containing only the identity.
    pub fn trivial_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.size() as usize];
        mask[self.identity() as usize] = true;
        mask
    }
}

impl Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.name(), self.size())
    }
}

/// Number of elements in a mask.
pub fn mask_order(mask: &[bool]) -> u32 {
    mask.iter().filter(|&&b| b).count() as u32
}

/// Ascending indices of the mask's elements.
pub fn mask_elements(mask: &[bool]) -> Vec<u32> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect()
}

/// True when `inner` ⊆ `outer`.
pub fn mask_subset(inner: &[bool], outer: &[bool]) -> bool {
    inner.iter().zip(outer).all(|(&a, &b)| !a || b)
}
