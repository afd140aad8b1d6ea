use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{LatticeSnapshot, SubId};
use crate::error::{Error, Result};

/// Serializable form of [`Strata`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct StrataParts {
    max: Vec<SubId>,
    max2: Vec<SubId>,
    over: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    strict: Vec<bool>,
}

/// Max(G) and Max₂(G) with the overgroup relation between them.
#[derive(Clone, Debug)]
pub struct Strata {
    pub max: Vec<SubId>,
    /// Max₂(G), sorted and deduplicated.
    pub max2: Vec<SubId>,
    /// For each member of `max2`, positions in `max` of Max(G, H).
    pub over: Vec<Vec<usize>>,
    /// For each member of `max2`, positions in `max` of the M with H maximal in M.
    pub parents: Vec<Vec<usize>>,
    /// Whether each member of `max2` lies in Max₂*(G).
    pub strict: Vec<bool>,
    max_pos: HashMap<SubId, usize>,
    max2_pos: HashMap<SubId, usize>,
}

impl Strata {
    pub fn new(snap: &LatticeSnapshot) -> Strata {
        let max = snap.maximal_ids();
        let mut parents_map: BTreeMap<SubId, Vec<usize>> = BTreeMap::new();
        for (mi, &m) in max.iter().enumerate() {
            for h in snap.max_of(m) {
                parents_map.entry(h).or_default().push(mi);
            }
        }
        let max2: Vec<SubId> = parents_map.keys().copied().collect();
        let parents: Vec<Vec<usize>> = parents_map.into_values().collect();
        let over: Vec<Vec<usize>> = max2
            .iter()
            .map(|&h| {
                let hs = snap.set(h);
                max.iter()
                    .enumerate()
                    .filter(|(_, &m)| snap.order(m).is_multiple_of(snap.order(h)) && hs.is_subset(snap.set(m)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let strict = over.iter().zip(parents.iter()).map(|(o, p)| o == p).collect();
        Strata::assemble(max, max2, over, parents, strict)
    }

    fn assemble(
        max: Vec<SubId>,
        max2: Vec<SubId>,
        over: Vec<Vec<usize>>,
        parents: Vec<Vec<usize>>,
        strict: Vec<bool>,
    ) -> Strata {
        let max_pos = max.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let max2_pos = max2.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        Strata {
            max,
            max2,
            over,
            parents,
            strict,
            max_pos,
            max2_pos,
        }
    }

    pub(crate) fn parts(&self) -> StrataParts {
        StrataParts {
            max: self.max.clone(),
            max2: self.max2.clone(),
            over: self.over.clone(),
            parents: self.parents.clone(),
            strict: self.strict.clone(),
        }
    }

    /// Rebuilds strata from cached parts after checking every index.
    pub(crate) fn from_parts(snap: &LatticeSnapshot, p: StrataParts) -> Result<Strata> {
        let valid = |id: &SubId| {
            snap.classes
                .get(id.class as usize)
                .is_some_and(|c| (id.member as usize) < c.members.len())
        };
        let n = p.max2.len();
        let ok = p.max.iter().all(valid)
            && p.max2.iter().all(valid)
            && p.over.len() == n
            && p.parents.len() == n
            && p.strict.len() == n
            && p.over
                .iter()
                .chain(p.parents.iter())
                .flatten()
                .all(|&i| i < p.max.len());
        if !ok {
            return Err(Error::Corpus("inconsistent cached strata".into()));
        }
        Ok(Strata::assemble(p.max, p.max2, p.over, p.parents, p.strict))
    }

    pub fn max_position(&self, m: SubId) -> Option<usize> {
        self.max_pos.get(&m).copied()
    }

    pub fn max2_position(&self, h: SubId) -> Option<usize> {
        self.max2_pos.get(&h).copied()
    }

    /// Max(G, H) for a member of Max₂(G).
    pub fn over_ids(&self, pos: usize) -> impl Iterator<Item = SubId> + '_ {
        self.over[pos].iter().map(|&i| self.max[i])
    }

    pub fn strict_ids(&self) -> Vec<SubId> {
        self.max2
            .iter()
            .zip(self.strict.iter())
            .filter(|(_, &s)| s)
            .map(|(&h, _)| h)
            .collect()
    }
}
