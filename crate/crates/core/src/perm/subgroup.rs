use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use super::group::Group;
use super::permutation::Permutation;
use super::table::{ElemSet, ElemSubgroup, ElementTable};
use crate::error::{Error, Result};

/// A subgroup of a fixed ambient group.
///
/// Equality is element-set equality within the same ambient group.
#[derive(Clone)]
pub struct SubgroupHandle {
    ambient: Group,
    table: Arc<ElementTable>,
    sub: Arc<ElemSubgroup>,
    core: Arc<OnceLock<ElemSubgroup>>,
}

impl SubgroupHandle {
    pub fn new(ambient: &Group, generators: &[Permutation]) -> Result<SubgroupHandle> {
        let table = ambient.table()?;
        let mut idx = Vec::with_capacity(generators.len());
        for g in generators {
            if g.degree() != ambient.degree() {
                return Err(Error::DegreeMismatch {
                    left: ambient.degree(),
                    right: g.degree(),
                });
            }
            idx.push(table.index_of(g).ok_or(Error::NotSubgroup)?);
        }
        let sub = table.closure(&idx);
        Ok(Self::from_parts(ambient.clone(), table, sub))
    }

    pub(crate) fn from_parts(ambient: Group, table: Arc<ElementTable>, sub: ElemSubgroup) -> Self {
        SubgroupHandle {
            ambient,
            table,
            sub: Arc::new(sub),
            core: Arc::new(OnceLock::new()),
        }
    }

    pub fn whole(ambient: &Group) -> Result<SubgroupHandle> {
        let t = ambient.table()?;
        let sub = t.whole();
        Ok(Self::from_parts(ambient.clone(), t, sub))
    }

    pub fn trivial(ambient: &Group) -> Result<SubgroupHandle> {
        let t = ambient.table()?;
        let sub = t.trivial();
        Ok(Self::from_parts(ambient.clone(), t, sub))
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn elem(&self) -> &ElemSubgroup {
        &self.sub
    }

    pub fn set(&self) -> &ElemSet {
        &self.sub.set
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.sub.gens.iter().map(|&i| self.table.element(i).clone()).collect()
    }

    pub fn order(&self) -> u128 {
        self.sub.set.len() as u128
    }

    pub fn index(&self) -> u128 {
        self.ambient.order() / self.order()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.table.index_of(x).is_some_and(|i| self.sub.set.contains(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.sub.set.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.ambient.order()
    }

    fn check_ambient(&self, other: &SubgroupHandle) -> Result<()> {
        if self.ambient.same_as(&other.ambient) {
            Ok(())
        } else {
            Err(Error::MixedAmbient)
        }
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sub.set.is_subset(&other.sub.set))
    }

    /// Largest normal subgroup of the ambient group inside this one.
    pub fn core(&self) -> SubgroupHandle {
        let c = self.core.get_or_init(|| self.table.core(&self.sub)).clone();
        Self::from_parts(self.ambient.clone(), self.table.clone(), c)
    }

    pub fn is_normal(&self) -> bool {
        self.table.is_normal_in_ambient(&self.sub)
    }

    /// Whether this subgroup is normalized by `other` (and contained in it
    /// when `contained` matters to the caller).
    pub fn is_normal_in(&self, other: &SubgroupHandle) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sub.set.is_subset(&other.sub.set) && self.table.normalized_by(&self.sub, &other.sub.gens))
    }

    pub fn is_solvable(&self) -> bool {
        self.table.is_solvable(&self.sub)
    }

    pub fn derived(&self) -> SubgroupHandle {
        let d = self.table.derived(&self.sub);
        Self::from_parts(self.ambient.clone(), self.table.clone(), d)
    }

    pub fn conjugate(&self, x: &Permutation) -> Result<SubgroupHandle> {
        let xi = self.table.index_of(x).ok_or(Error::NotSubgroup)?;
        let c = self.table.conj_subgroup(&self.sub, xi);
        Ok(Self::from_parts(self.ambient.clone(), self.table.clone(), c))
    }

    pub fn intersect(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        self.check_ambient(other)?;
        let set = self.sub.set.intersection(&other.sub.set);
        let s = self.table.generate_set(&set);
        Ok(Self::from_parts(self.ambient.clone(), self.table.clone(), s))
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        self.check_ambient(other)?;
        let mut s = (*self.sub).clone();
        for &g in &other.sub.gens {
            s = self.table.extend(&s, g);
        }
        Ok(Self::from_parts(self.ambient.clone(), self.table.clone(), s))
    }

    /// The subgroup `HN` for `N` normalized by `H`, as a set product.
    pub fn product_order(&self, other: &SubgroupHandle) -> Result<u128> {
        let i = self.intersect(other)?;
        Ok(self.order() * other.order() / i.order())
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_as(&other.ambient) && self.sub.set == other.sub.set
    }
}

impl Eq for SubgroupHandle {}

impl Hash for SubgroupHandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sub.set.hash(state);
    }
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {:?})", self.order(), self.ambient)
    }
}

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &Group, seeds: &[Permutation]) -> Result<SubgroupHandle> {
    let t = g.table()?;
    let mut idx = Vec::new();
    for s in seeds {
        idx.push(t.index_of(s).ok_or(Error::NotSubgroup)?);
    }
    let n = t.ambient_normal_closure(&idx);
    Ok(SubgroupHandle::from_parts(g.clone(), t, n))
}

pub fn derived_subgroup(g: &Group) -> Result<SubgroupHandle> {
    Ok(SubgroupHandle::whole(g)?.derived())
}

pub fn conjugate(h: &SubgroupHandle, x: &Permutation) -> Result<SubgroupHandle> {
    h.conjugate(x)
}

pub fn intersect(h: &SubgroupHandle, k: &SubgroupHandle) -> Result<SubgroupHandle> {
    h.intersect(k)
}

pub fn is_normal(g: &Group, h: &SubgroupHandle) -> Result<bool> {
    if !g.same_as(h.ambient()) {
        return Err(Error::MixedAmbient);
    }
    Ok(h.is_normal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn derived_subgroup_of_s5_is_a5() {
        let s5 = Group::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        let d = derived_subgroup(&s5).unwrap();
        assert_eq!(d.order(), 60);
        assert!(d.contains(&p("(1 2 3)", 5)));
        assert!(d.is_normal());
    }

    #[test]
    fn normal_closure_of_double_transposition_in_s4() {
        let s4 = Group::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let v4 = normal_closure(&s4, &[p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(v4.order(), 4);
    }

    #[test]
    fn intersect_alternating_with_point_stabilizer() {
        let s5 = Group::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        let a5 = SubgroupHandle::new(&s5, &[p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let s4 = SubgroupHandle::new(&s5, &[p("(1 2)", 5), p("(1 2 3 4)", 5)]).unwrap();
        let a4 = a5.intersect(&s4).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.contains(&p("(1 2)(3 4)", 5)));
    }

    #[test]
    fn mixed_ambients_rejected() {
        let s4 = Group::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let a4 = Group::from_cycle_strings(4, &["(1 2 3)", "(2 3 4)"]).unwrap();
        let h = SubgroupHandle::whole(&s4).unwrap();
        let k = SubgroupHandle::whole(&a4).unwrap();
        assert_eq!(h.intersect(&k).unwrap_err(), Error::MixedAmbient);
    }

    #[test]
    fn non_member_generator_is_not_a_subgroup() {
        let a4 = Group::from_cycle_strings(4, &["(1 2 3)", "(2 3 4)"]).unwrap();
        assert_eq!(
            SubgroupHandle::new(&a4, &[p("(1 2)", 4)]).unwrap_err(),
            Error::NotSubgroup
        );
    }
}
