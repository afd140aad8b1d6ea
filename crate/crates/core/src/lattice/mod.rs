//! Subgroup lattices up to conjugacy and the strata Max(G), Max₂(G), Max₂*(G).

mod enumerate;
mod strata;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_subgroups_bounded, DEFAULT_BOUND};
pub(crate) use enumerate::{restore, Restored};
pub use strata::Strata;
pub(crate) use strata::StrataParts;

use crate::arith::prime_power_base;
use crate::error::Result;
use crate::perm::{ElemSet, ElemSubgroup, ElementTable, Group, SubgroupHandle};
use crate::structure::SimpleTypeId;

/// A concrete subgroup: member `member` of conjugacy class `class`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubId {
    pub class: u32,
    pub member: u32,
}

/// One conjugacy class of subgroups, with every member materialized.
pub struct SubgroupClass {
    pub rep: ElemSubgroup,
    pub members: Vec<ElemSet>,
    /// `members[i]` is the representative conjugated by `conjugators[i]`.
    pub conjugators: Vec<u32>,
    pub(crate) tree: Vec<(u32, u32)>,
    pub order: usize,
    pub solvable: bool,
    /// Distinct nonabelian composition factor types of the representative.
    pub nonabelian: Vec<SimpleTypeId>,
    /// Nonabelian composition factors with multiplicity, sorted.
    pub nonabelian_factors: Vec<SimpleTypeId>,
    /// Class of the core (a normal subgroup, hence a one-member class).
    pub core_class: usize,
    pub(crate) max_rep: OnceLock<Vec<SubId>>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_p_solvable(&self, p: u64) -> bool {
        crate::structure::p_solvable_from_types(&self.nonabelian, p)
    }
}

/// All subgroups of a group, grouped into conjugacy classes.
pub struct LatticeSnapshot {
    pub(crate) group: Group,
    pub(crate) table: Arc<ElementTable>,
    pub(crate) classes: Vec<SubgroupClass>,
    pub(crate) lookup: HashMap<ElemSet, SubId>,
    pub(crate) whole: usize,
}

impl LatticeSnapshot {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.classes[c]
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.size()).sum()
    }

    pub fn whole_id(&self) -> SubId {
        SubId {
            class: self.whole as u32,
            member: 0,
        }
    }

    pub fn trivial_id(&self) -> SubId {
        SubId { class: 0, member: 0 }
    }

    pub fn id_of(&self, set: &ElemSet) -> Option<SubId> {
        self.lookup.get(set).copied()
    }

    pub fn set(&self, id: SubId) -> &ElemSet {
        &self.classes[id.class as usize].members[id.member as usize]
    }

    pub fn order(&self, id: SubId) -> usize {
        self.classes[id.class as usize].order
    }

    pub fn index(&self, id: SubId) -> u128 {
        self.group.order() / self.order(id) as u128
    }

    pub fn class_of(&self, id: SubId) -> &SubgroupClass {
        &self.classes[id.class as usize]
    }

    /// Core of a subgroup in the whole group.
    pub fn core(&self, id: SubId) -> SubId {
        SubId {
            class: self.class_of(id).core_class as u32,
            member: 0,
        }
    }

    pub fn contains(&self, big: SubId, small: SubId) -> bool {
        self.set(small).is_subset(self.set(big))
    }

    pub fn subgroup(&self, id: SubId) -> ElemSubgroup {
        let c = self.class_of(id);
        let g = c.conjugators[id.member as usize];
        ElemSubgroup {
            set: c.members[id.member as usize].clone(),
            gens: c.rep.gens.iter().map(|&x| self.table.conj(x, g)).collect(),
        }
    }

    pub fn handle(&self, id: SubId) -> SubgroupHandle {
        SubgroupHandle::from_parts(self.group.clone(), self.table.clone(), self.subgroup(id))
    }

    pub fn id_of_handle(&self, h: &SubgroupHandle) -> Option<SubId> {
        if !h.ambient().same_as(&self.group) {
            return None;
        }
        self.id_of(h.set())
    }

    /// Maximal subgroups of the class representative.
    pub fn max_of_rep(&self, class: usize) -> &[SubId] {
        self.classes[class]
            .max_rep
            .get_or_init(|| self.compute_max_of_rep(class))
    }

    fn compute_max_of_rep(&self, class: usize) -> Vec<SubId> {
        let c = &self.classes[class];
        let n = c.order;
        let mut cands: Vec<(usize, SubId)> = Vec::new();
        for (ci, other) in self.classes.iter().enumerate() {
            if other.order >= n || !n.is_multiple_of(other.order) {
                continue;
            }
            for (mi, m) in other.members.iter().enumerate() {
                if m.is_subset(&c.rep.set) {
                    cands.push((
                        other.order,
                        SubId {
                            class: ci as u32,
                            member: mi as u32,
                        },
                    ));
                }
            }
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut maxes: Vec<SubId> = Vec::new();
        for (_, id) in cands {
            let s = self.set(id);
            if !maxes.iter().any(|&m| s.is_subset(self.set(m))) {
                maxes.push(id);
            }
        }
        maxes.sort();
        maxes
    }

    /// Maximal subgroups of an arbitrary subgroup.
    pub fn max_of(&self, id: SubId) -> Vec<SubId> {
        let reps = self.max_of_rep(id.class as usize);
        if id.member == 0 {
            return reps.to_vec();
        }
        let g = self.class_of(id).conjugators[id.member as usize];
        let mut out: Vec<SubId> = reps
            .iter()
            .map(|&m| {
                let s = self.table.conj_set(self.set(m), g);
                self.lookup[&s]
            })
            .collect();
        out.sort();
        out
    }

    /// Max(G), all members.
    pub fn maximal_ids(&self) -> Vec<SubId> {
        self.max_of(self.whole_id())
    }

    /// Classes of maximal subgroups of the whole group.
    pub fn maximal_classes(&self) -> Vec<usize> {
        let mut cs: Vec<usize> = self.max_of_rep(self.whole).iter().map(|m| m.class as usize).collect();
        cs.sort();
        cs.dedup();
        cs
    }

    /// Frattini subgroup: intersection of all maximal subgroups.
    pub fn frattini(&self) -> SubgroupHandle {
        let maxes = self.maximal_ids();
        let mut set = self.table.full_set();
        for m in &maxes {
            set.intersect_with(self.set(*m));
        }
        let id = self.lookup[&set];
        self.handle(id)
    }

    /// Class-level containment: `result[a]` lists the classes `b ≠ a` such that
    /// some member of `b` contains the representative of `a`.
    pub fn containment(&self) -> Vec<Vec<usize>> {
        let n = self.classes.len();
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, ca) in self.classes.iter().enumerate() {
            for (b, cb) in self.classes.iter().enumerate() {
                if b == a || cb.order <= ca.order || cb.order % ca.order != 0 {
                    continue;
                }
                if cb.members.iter().any(|m| ca.rep.set.is_subset(m)) {
                    above[a].push(b);
                }
            }
        }
        above
    }

    pub fn normal_ids(&self) -> Vec<SubId> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_normal())
            .map(|(i, _)| SubId {
                class: i as u32,
                member: 0,
            })
            .collect()
    }

    /// Whether the whole group is minimal non-solvable.
    pub fn is_minimal_non_solvable(&self, id: SubId) -> bool {
        let c = self.class_of(id);
        !c.solvable
            && self
                .max_of_rep(id.class as usize)
                .iter()
                .all(|m| self.class_of(*m).solvable)
    }

    pub fn is_minimal_non_p_solvable(&self, id: SubId, p: u64) -> bool {
        let c = self.class_of(id);
        !c.is_p_solvable(p)
            && self
                .max_of_rep(id.class as usize)
                .iter()
                .all(|m| self.class_of(*m).is_p_solvable(p))
    }

    /// Distinct nonabelian composition factor types of `k/n`, for `n` normal
    /// in `k`: the multiset difference of the factors of `k` and `n`.
    pub fn quotient_types(&self, k: SubId, n: SubId) -> Vec<SimpleTypeId> {
        let mut rest = self.class_of(k).nonabelian_factors.clone();
        for t in &self.class_of(n).nonabelian_factors {
            if let Some(i) = rest.iter().position(|x| x == t) {
                rest.remove(i);
            }
        }
        rest.dedup();
        rest
    }

    pub fn strata(&self) -> Strata {
        Strata::new(self)
    }
}

/// Subgroup lattice with the default order bound.
pub fn enumerate_subgroups(g: &Group) -> Result<LatticeSnapshot> {
    enumerate_subgroups_bounded(g, DEFAULT_BOUND)
}

pub fn maximal_subgroups(g: &Group) -> Result<Vec<SubgroupHandle>> {
    let snap = enumerate_subgroups(g)?;
    Ok(snap.maximal_ids().into_iter().map(|id| snap.handle(id)).collect())
}

pub fn second_maximal_subgroups(g: &Group) -> Result<Vec<SubgroupHandle>> {
    let snap = enumerate_subgroups(g)?;
    let st = snap.strata();
    Ok(st.max2.iter().map(|&id| snap.handle(id)).collect())
}

pub fn strictly_second_maximal(g: &Group) -> Result<Vec<SubgroupHandle>> {
    let snap = enumerate_subgroups(g)?;
    let st = snap.strata();
    Ok(st
        .max2
        .iter()
        .zip(st.strict.iter())
        .filter(|(_, &s)| s)
        .map(|(&id, _)| snap.handle(id))
        .collect())
}

/// Maximal subgroups of `g` containing `h`.
pub fn max_over(g: &Group, h: &SubgroupHandle) -> Result<Vec<SubgroupHandle>> {
    if !h.ambient().same_as(g) {
        return Err(crate::Error::NotSubgroup);
    }
    let snap = enumerate_subgroups(g)?;
    Ok(snap
        .maximal_ids()
        .into_iter()
        .filter(|&m| h.set().is_subset(snap.set(m)))
        .map(|m| snap.handle(m))
        .collect())
}

pub fn core(g: &Group, h: &SubgroupHandle) -> Result<SubgroupHandle> {
    if !h.ambient().same_as(g) {
        return Err(crate::Error::NotSubgroup);
    }
    Ok(h.core())
}

pub fn index(g: &Group, h: &SubgroupHandle) -> Result<u128> {
    if !h.ambient().same_as(g) {
        return Err(crate::Error::NotSubgroup);
    }
    Ok(h.index())
}

/// The prime `q` when `n` is a power of `q`; one is not a prime power.
pub fn is_prime_power(n: u128) -> Option<u64> {
    prime_power_base(n)
}
