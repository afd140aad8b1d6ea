use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use sha2::{Digest, Sha256};

use super::chain::StabChain;
use super::permutation::Permutation;
use super::table::ElementTable;
use crate::error::{Error, Result};

/// Largest order for which an indexed element table is built.
pub const TABLE_LIMIT: u128 = 200_000;

struct Inner {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    key: String,
    table: OnceLock<Arc<ElementTable>>,
}

/// A permutation group given by generators, with its stabilizer chain.
///
/// Cloning is cheap; clones share the chain and the lazily built element table.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl Group {
    pub fn new(generators: Vec<Permutation>) -> Result<Group> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &generators);
        let key = content_key(degree, &generators);
        Ok(Group {
            inner: Arc::new(Inner {
                name: None,
                degree,
                generators,
                chain,
                key,
                table: OnceLock::new(),
            }),
        })
    }

    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Group> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, Some(degree)))
            .collect::<Result<Vec<_>>>()?;
        Group::new(perms)
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    /// Same group with a display name attached.
    pub fn named(self, name: impl Into<String>) -> Group {
        let inner = Arc::try_unwrap(self.inner).unwrap_or_else(|arc| Inner {
            name: arc.name.clone(),
            degree: arc.degree,
            generators: arc.generators.clone(),
            chain: arc.chain.clone(),
            key: arc.key.clone(),
            table: arc.table.clone(),
        });
        Group {
            inner: Arc::new(Inner {
                name: Some(name.into()),
                ..inner
            }),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn order(&self) -> u128 {
        self.inner.chain.order()
    }

    /// Hex digest of the degree and the sorted generator images.
    pub fn key(&self) -> &str {
        &self.inner.key
    }

    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.key == other.inner.key
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.degree(),
            });
        }
        Ok(self.inner.chain.contains(x))
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.inner.chain.random_element(rng)
    }

    /// The indexed element table, built on first use.
    pub fn table(&self) -> Result<Arc<ElementTable>> {
        if self.order() > TABLE_LIMIT {
            return Err(Error::BoundExceeded {
                order: self.order(),
                bound: TABLE_LIMIT,
            });
        }
        Ok(self
            .inner
            .table
            .get_or_init(|| Arc::new(ElementTable::build(&self.inner.chain, &self.inner.generators)))
            .clone())
    }

    /// All elements, in table order.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let t = self.table()?;
        Ok((0..t.order() as u32).map(|i| t.element(i).clone()).collect())
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.inner.name)
            .field("degree", &self.inner.degree)
            .field("order", &self.order())
            .finish()
    }
}

pub(crate) fn content_key(degree: usize, generators: &[Permutation]) -> String {
    let mut imgs: Vec<Vec<usize>> = generators.iter().map(|g| g.one_based_images()).collect();
    imgs.sort();
    imgs.dedup();
    let mut h = Sha256::new();
    h.update(format!("degree:{degree};"));
    for im in imgs {
        let s: Vec<String> = im.iter().map(|x| x.to_string()).collect();
        h.update(s.join(","));
        h.update(";");
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_small_groups() {
        let s5 = Group::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        assert_eq!(s5.order(), 120);
        let a5 = Group::from_cycle_strings(5, &["(1 2 3)", "(3 4 5)"]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&Permutation::parse("(1 2)", Some(5)).unwrap()).unwrap());
        assert!(a5.contains(&Permutation::parse("(1 2 3)", Some(5)).unwrap()).unwrap());
    }

    #[test]
    fn mathieu_eleven_order() {
        let m11 = Group::from_cycle_strings(11, &["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"]).unwrap();
        assert_eq!(m11.order(), 7920);
    }

    #[test]
    fn empty_generators_rejected() {
        assert_eq!(Group::new(vec![]).unwrap_err(), Error::EmptyGenerators);
    }

    #[test]
    fn membership_degree_mismatch() {
        let g = Group::trivial(3);
        assert!(g.contains(&Permutation::identity(4)).is_err());
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn key_ignores_generator_order() {
        let a = Group::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let b = Group::from_cycle_strings(4, &["(1 2 3 4)", "(1 2)"]).unwrap();
        assert_eq!(a.key(), b.key());
    }
}
