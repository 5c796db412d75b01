//! widthlab: exact computational algebra for a family of finite perfect
//! groups and their duals.
//!
//! The crate builds, fully enumerates, and analyzes finite groups given by
//! generators (permutations, matrices over prime fields, direct pairs, and
//! semidirect products V_n⋊A_p), measures commutator length and width by
//! breadth-first search, classifies group structure (simple, semisimple,
//! quasisimple, almost simple, radicals), and certifies the perfectness and
//! width bounds of the semidirect constructions together with their
//! ℤ/mℤ-valued invariant functionals.
//!
//! Organization:
//! - [`linalg`]: exact vectors/subspaces over 𝔽_q, bilinear form, sum-zero
//!   space V_n, invariant closures;
//! - [`perm`]: permutations, A_p enumeration, commutator lemmas;
//! - [`zmod`]: row-span membership over ℤ/mℤ (composite m);
//! - [`group`]: black-box finite group engine (enumeration, classes, normal
//!   subgroups, width BFS, structure predicates);
//! - [`constructions`]: the shift module B, the groups G_n = V_n⋊A_p and
//!   P_n = M_n⋊G_n, and their certificates;
//! - [`duality`]: functionals M_n → ℤ/mℤ, support/null machinery, invariant
//!   functionals and their extensions;
//! - [`catalog`]: named example groups and the text grammar for group specs;
//! - [`check`]: the uniform pass/fail report records all of the above emit.

pub mod arith;
pub mod catalog;
pub mod check;
pub mod constructions;
pub mod duality;
pub mod error;
pub mod group;
pub mod linalg;
pub mod perm;
pub mod zmod;

pub use check::{Check, CheckStatus};
pub use error::{Error, Result};
