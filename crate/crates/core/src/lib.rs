pub mod arith;
pub mod classes;
pub mod error;
pub mod functors;
pub mod harness;
pub mod lattice;
pub mod perm;
pub mod structure;

pub use error::{Error, Result};
pub use perm::{Group, Permutation, SubgroupHandle};
