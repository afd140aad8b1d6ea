//! Permutations, stabilizer chains, element tables, subgroups and coset actions.
//!
//! Composition is left to right throughout: `a.then(b)` applies `a` first.

mod action;
mod chain;
mod group;
mod permutation;
mod subgroup;
mod table;

pub use action::{coset_action, quotient_group, Homomorphism};
pub use chain::{ChainLevel, StabChain};
pub use group::{Group, TABLE_LIMIT};
pub(crate) use permutation::gcd;
pub use permutation::Permutation;
pub use subgroup::{conjugate, derived_subgroup, intersect, is_normal, normal_closure, SubgroupHandle};
pub use table::{ElemSet, ElemSubgroup, ElementTable};
