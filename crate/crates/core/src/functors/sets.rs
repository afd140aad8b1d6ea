use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_power_of, is_prime, prime_power_base};
use crate::error::{Error, Result};
use crate::lattice::{LatticeSnapshot, Strata, SubId};
use crate::perm::{Group, SubgroupHandle};

/// Stratum a subgroup set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Max,
    Max2,
}

impl Level {
    fn name(self) -> &'static str {
        match self {
            Level::Max => "Max",
            Level::Max2 => "Max2",
        }
    }
}

/// A set of subgroups drawn from Max(G) or Max₂(G).
#[derive(Clone)]
pub struct SubgroupSet {
    ambient: Group,
    level: Level,
    members: BTreeSet<SubId>,
}

impl SubgroupSet {
    pub fn new(ambient: &Group, level: Level, members: impl IntoIterator<Item = SubId>) -> SubgroupSet {
        SubgroupSet {
            ambient: ambient.clone(),
            level,
            members: members.into_iter().collect(),
        }
    }

    pub fn empty(ambient: &Group, level: Level) -> SubgroupSet {
        SubgroupSet::new(ambient, level, [])
    }

    /// The whole stratum.
    pub fn full(snap: &LatticeSnapshot, strata: &Strata, level: Level) -> SubgroupSet {
        let ids = match level {
            Level::Max => strata.max.clone(),
            Level::Max2 => strata.max2.clone(),
        };
        SubgroupSet::new(snap.group(), level, ids)
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn members(&self) -> &BTreeSet<SubId> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: SubId) -> bool {
        self.members.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = SubId> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn handles(&self, snap: &LatticeSnapshot) -> Result<Vec<SubgroupHandle>> {
        if !snap.group().same_as(&self.ambient) {
            return Err(Error::MixedAmbient);
        }
        Ok(self.iter().map(|id| snap.handle(id)).collect())
    }

    /// Member count per conjugacy class.
    pub fn class_counts(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for id in &self.members {
            match out.last_mut() {
                Some((c, k)) if *c == id.class => *k += 1,
                _ => out.push((id.class, 1)),
            }
        }
        out
    }

    fn compatible(&self, other: &SubgroupSet) -> Result<()> {
        if !self.ambient.same_as(&other.ambient) {
            return Err(Error::MixedAmbient);
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level.name(),
                found: other.level.name(),
            });
        }
        Ok(())
    }

    /// Contraction: intersection with `z`.
    pub fn contract(&self, z: &SubgroupSet) -> Result<SubgroupSet> {
        self.compatible(z)?;
        Ok(SubgroupSet {
            ambient: self.ambient.clone(),
            level: self.level,
            members: self.members.intersection(&z.members).copied().collect(),
        })
    }

    /// Extension: union with `z`.
    pub fn extend(&self, z: &SubgroupSet) -> Result<SubgroupSet> {
        self.compatible(z)?;
        Ok(SubgroupSet {
            ambient: self.ambient.clone(),
            level: self.level,
            members: self.members.union(&z.members).copied().collect(),
        })
    }
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_as(&other.ambient) && self.level == other.level && self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupSet")
            .field("level", &self.level)
            .field("members", &self.members)
            .finish()
    }
}

/// Base sets of the functor calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// Non-solvable maximal subgroups.
    X,
    L1,
    L2,
    /// Strictly second maximal subgroups.
    S,
    Pc,
    Pci,
    E1,
    T1,
}

impl Atom {
    pub const ALL: [Atom; 8] = [
        Atom::X,
        Atom::L1,
        Atom::L2,
        Atom::S,
        Atom::Pc,
        Atom::Pci,
        Atom::E1,
        Atom::T1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::X => "X",
            Atom::L1 => "L1",
            Atom::L2 => "L2",
            Atom::S => "S",
            Atom::Pc => "Pc",
            Atom::Pci => "Pci",
            Atom::E1 => "E1",
            Atom::T1 => "T1",
        }
    }

    pub fn from_name(name: &str) -> Option<Atom> {
        Some(match name {
            "X" => Atom::X,
            "L1" => Atom::L1,
            "L2" => Atom::L2,
            "S" | "Max2star" => Atom::S,
            "Pc" => Atom::Pc,
            "Pci" => Atom::Pci,
            "E1" => Atom::E1,
            "T1" => Atom::T1,
            _ => return None,
        })
    }

    pub fn level(self) -> Level {
        match self {
            Atom::X => Level::Max,
            _ => Level::Max2,
        }
    }

    /// Whether the set depends on the prime.
    pub fn uses_prime(self) -> bool {
        matches!(self, Atom::L1 | Atom::L2 | Atom::E1)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How "|G:M| ≠ p^α" in E₁ is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum E1Reading {
    /// Not a power of the fixed prime p.
    #[default]
    PowerOfP,
    /// Not a power of any prime.
    AnyPrimePower,
}

/// Evaluation context: one group, its strata and a prime.
#[derive(Clone, Copy)]
pub struct FunctorContext<'a> {
    pub snap: &'a LatticeSnapshot,
    pub strata: &'a Strata,
    pub p: u64,
    pub e1: E1Reading,
}

impl<'a> FunctorContext<'a> {
    pub fn new(snap: &'a LatticeSnapshot, strata: &'a Strata, p: u64) -> Result<FunctorContext<'a>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FunctorContext {
            snap,
            strata,
            p,
            e1: E1Reading::PowerOfP,
        })
    }

    pub fn with_e1(mut self, e1: E1Reading) -> Self {
        self.e1 = e1;
        self
    }

    /// The prime does not divide the group order.
    pub fn degenerate(&self) -> bool {
        !self.snap.group().order().is_multiple_of(self.p as u128)
    }

    fn divides(&self, id: SubId) -> bool {
        self.snap.order(id).is_multiple_of(self.p as usize)
    }

    fn core_equal(&self, h: SubId, m: SubId) -> bool {
        self.snap.class_of(h).core_class == self.snap.class_of(m).core_class
    }

    fn max2_filter<F>(&self, mut keep: F) -> SubgroupSet
    where
        F: FnMut(usize, SubId) -> bool,
    {
        let ids = self
            .strata
            .max2
            .iter()
            .enumerate()
            .filter(|&(i, &h)| keep(i, h))
            .map(|(_, &h)| h);
        SubgroupSet::new(self.snap.group(), Level::Max2, ids)
    }

    /// The named base set.
    pub fn base_set(&self, atom: Atom) -> SubgroupSet {
        let snap = self.snap;
        let st = self.strata;
        match atom {
            Atom::X => SubgroupSet::new(
                snap.group(),
                Level::Max,
                st.max.iter().copied().filter(|&m| !snap.class_of(m).solvable),
            ),
            Atom::L1 => self.max2_filter(|_, h| self.divides(h)),
            Atom::L2 => self.max2_filter(|i, _| st.over_ids(i).any(|m| self.divides(m))),
            Atom::S => self.max2_filter(|i, _| st.strict[i]),
            Atom::Pc => self.max2_filter(|i, h| st.over_ids(i).all(|m| self.core_equal(h, m))),
            Atom::Pci => self.max2_filter(|i, h| {
                st.over_ids(i).all(|m| {
                    let rel = (snap.order(m) / snap.order(h)) as u128;
                    self.core_equal(h, m) || prime_power_base(rel).is_none()
                })
            }),
            Atom::E1 => self.max2_filter(|i, _| {
                st.over_ids(i).any(|m| {
                    let idx = snap.index(m);
                    match self.e1 {
                        E1Reading::PowerOfP => !is_power_of(idx, self.p),
                        E1Reading::AnyPrimePower => prime_power_base(idx).is_none(),
                    }
                })
            }),
            Atom::T1 => self.max2_filter(|i, h| st.over_ids(i).any(|m| self.core_equal(h, m))),
        }
    }

    /// Φ(y): second maximal subgroups maximal in some member of `y`.
    pub fn phi(&self, y: &SubgroupSet) -> Result<SubgroupSet> {
        if y.level() != Level::Max {
            return Err(Error::LevelMismatch {
                expected: "Max",
                found: y.level().name(),
            });
        }
        if !y.ambient().same_as(self.snap.group()) {
            return Err(Error::MixedAmbient);
        }
        let st = self.strata;
        let marks: Vec<bool> = st.max.iter().map(|&m| y.contains(m)).collect();
        Ok(self.max2_filter(|i, _| st.parents[i].iter().any(|&k| marks[k])))
    }
}
