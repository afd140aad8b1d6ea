//! Conjugacy classes of subgroups by cyclic extension from perfect seeds.
//!
//! Every subgroup `K` has a chain `K^∞ = K_0 ◁ K_1 ◁ … ◁ K_r = K` with prime
//! indices, and each step is `K_{i+1} = K_i⟨z⟩` for a prime-power element
//! `z` with `z^p ∈ K_i`. So starting from the trivial group and the perfect
//! subgroups, extending class representatives by such elements reaches every
//! class.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::prime_power_base;
use crate::error::{Error, Result};
use crate::perm::{ElemSet, ElemSubgroup, ElementTable, Group, Permutation, StabChain};
use crate::structure::{nonabelian_factors_elem, simple_orders, SimpleTypeId};

use super::{LatticeSnapshot, SubId, SubgroupClass};

struct Zuppo {
    z: u32,
    zp: u32,
    p: u64,
}

fn zuppos(t: &ElementTable) -> Vec<Zuppo> {
    let mut seen = t.empty_set();
    let mut out = Vec::new();
    for x in 1..t.order() as u32 {
        if seen.contains(x) {
            continue;
        }
        let n = t.element_order(x) as u64;
        let mut y = x;
        for k in 1..n {
            if crate::perm::gcd(k, n) == 1 {
                seen.insert(y);
            }
            y = t.mul(y, x);
        }
        if let Some(p) = prime_power_base(n as u128) {
            out.push(Zuppo {
                z: x,
                zp: t.pow(x, p),
                p,
            });
        }
    }
    out
}

/// Representative, members, conjugators, and for each member after the
/// first the (earlier member, generator position) it was reached from.
type RawClass = (ElemSubgroup, Vec<ElemSet>, Vec<u32>, Vec<(u32, u32)>);

struct Builder<'a> {
    table: &'a ElementTable,
    classes: Vec<RawClass>,
    lookup: HashMap<ElemSet, SubId>,
}

impl Builder<'_> {
    /// Registers `k` and its conjugacy class if new; returns whether it was new.
    fn add(&mut self, k: ElemSubgroup) -> bool {
        if self.lookup.contains_key(&k.set) {
            return false;
        }
        let t = self.table;
        let class = self.classes.len() as u32;
        let gens = t.generators();
        let mut members = vec![k.set.clone()];
        let mut conj = vec![0u32];
        let mut tree = Vec::new();
        self.lookup.insert(k.set.clone(), SubId { class, member: 0 });
        let mut i = 0;
        while i < members.len() {
            for (g_idx, &g) in gens.iter().enumerate() {
                let s = t.conj_set_by_gen(&members[i], g_idx);
                if !self.lookup.contains_key(&s) {
                    self.lookup.insert(
                        s.clone(),
                        SubId {
                            class,
                            member: members.len() as u32,
                        },
                    );
                    members.push(s);
                    conj.push(t.mul(conj[i], g));
                    tree.push((i as u32, g_idx as u32));
                }
            }
            i += 1;
        }
        self.classes.push((k, members, conj, tree));
        true
    }
}

fn solvable_residual(t: &ElementTable) -> ElemSubgroup {
    let mut cur = t.whole();
    loop {
        let d = t.derived(&cur);
        if d.order() == cur.order() {
            return cur;
        }
        cur = d;
    }
}

fn is_perfect(t: &ElementTable, k: &ElemSubgroup) -> bool {
    t.derived(k).order() == k.order()
}

/// Nontrivial proper perfect subgroups, found as two-generator subgroups
/// `⟨x, y⟩` with `x` a class representative of the solvable residual and `y`
/// running over orbit representatives of the centralizer of `x`.
fn perfect_subgroups(t: &ElementTable) -> Vec<ElemSubgroup> {
    let d = solvable_residual(t);
    if d.order() == 1 {
        return Vec::new();
    }
    let g_order = t.order();
    let simple: Vec<u64> = simple_orders().collect();
    let tables = t.conj_tables();
    let mut x_reps = Vec::new();
    let mut seen = t.empty_set();
    for x in d.set.iter() {
        if !seen.insert(x) {
            continue;
        }
        x_reps.push(x);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for tb in tables {
                let z = tb[y as usize];
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
    }
    let degree = t.degree();
    let mut found: Vec<ElemSubgroup> = Vec::new();
    let mut found_sets: HashSet<ElemSet> = HashSet::new();
    for &x in x_reps.iter().skip(1) {
        let cent: Vec<u32> = (0..g_order as u32).filter(|&c| t.mul(x, c) == t.mul(c, x)).collect();
        let cgens = t
            .generate_set(&ElemSet::from_indices(g_order, cent.iter().copied()))
            .gens;
        let xs = t.closure(&[x]);
        let mut done = t.empty_set();
        for y in d.set.iter() {
            if !done.insert(y) {
                continue;
            }
            let mut stack = vec![y];
            while let Some(a) = stack.pop() {
                for &c in &cgens {
                    let b = t.conj(a, c);
                    if done.insert(b) {
                        stack.push(b);
                    }
                }
            }
            if xs.set.contains(y) {
                continue;
            }
            let perms: Vec<Permutation> = vec![t.element(x).clone(), t.element(y).clone()];
            let ord = StabChain::build(degree, &perms).order() as u64;
            if ord as usize >= d.order() || !simple.iter().any(|s| ord.is_multiple_of(*s)) {
                continue;
            }
            let k = t.closure(&[x, y]);
            if found_sets.contains(&k.set) || !is_perfect(t, &k) {
                continue;
            }
            // Record every conjugate so later pairs hit the cheap lookup.
            let mut orbit = vec![k.set.clone()];
            let mut i = 0;
            while i < orbit.len() {
                for gi in 0..tables.len() {
                    let s = t.conj_set_by_gen(&orbit[i], gi);
                    if found_sets.insert(s.clone()) {
                        orbit.push(s);
                    }
                }
                i += 1;
            }
            found_sets.insert(k.set.clone());
            found.push(k);
        }
    }
    if d.order() < g_order {
        found.push(d);
    }
    found.sort_by_key(|k| k.order());
    found
}

/// Default enumeration bound on the group order.
pub const DEFAULT_BOUND: u128 = 10_000;

pub fn enumerate_subgroups_bounded(g: &Group, bound: u128) -> Result<LatticeSnapshot> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let t = g.table()?;
    let mut b = Builder {
        table: &t,
        classes: Vec::new(),
        lookup: HashMap::new(),
    };
    b.add(t.trivial());
    for k in perfect_subgroups(&t) {
        b.add(k);
    }
    b.add(t.whole());
    let zs = zuppos(&t);
    let mut i = 0;
    while i < b.classes.len() {
        let u = b.classes[i].0.clone();
        let mut made: Vec<ElemSet> = Vec::new();
        for zp in &zs {
            if !u.set.contains(zp.zp) || u.set.contains(zp.z) {
                continue;
            }
            if made.iter().any(|m| m.contains(zp.z)) {
                continue;
            }
            if !u.gens.iter().all(|&x| u.set.contains(t.conj(x, zp.z))) {
                continue;
            }
            let mut set = u.set.clone();
            let mut zk = zp.z;
            for _ in 1..zp.p {
                for x in u.set.iter() {
                    set.insert(t.mul(x, zk));
                }
                zk = t.mul(zk, zp.z);
            }
            made.push(set.clone());
            if b.lookup.contains_key(&set) {
                continue;
            }
            let mut gens = u.gens.clone();
            gens.push(zp.z);
            b.add(ElemSubgroup { set, gens });
        }
        i += 1;
    }
    finish(g, t.clone(), b.classes, None)
}

/// Cached class data that lets a snapshot be rebuilt without enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Restored {
    pub rep_gens: Vec<Vec<u32>>,
    pub trees: Vec<Vec<(u32, u32)>>,
    pub solvable: Vec<bool>,
    pub nonabelian_factors: Vec<Vec<SimpleTypeId>>,
    pub max_rep: Vec<Option<Vec<SubId>>>,
}

impl Restored {
    pub fn capture(snap: &LatticeSnapshot) -> Restored {
        Restored {
            rep_gens: snap.classes.iter().map(|c| c.rep.gens.clone()).collect(),
            trees: snap.classes.iter().map(|c| c.tree.clone()).collect(),
            solvable: snap.classes.iter().map(|c| c.solvable).collect(),
            nonabelian_factors: snap.classes.iter().map(|c| c.nonabelian_factors.clone()).collect(),
            max_rep: snap.classes.iter().map(|c| c.max_rep.get().cloned()).collect(),
        }
    }
}

pub(crate) fn restore(g: &Group, r: Restored) -> Result<LatticeSnapshot> {
    let n = r.rep_gens.len();
    if r.trees.len() != n || r.solvable.len() != n || r.nonabelian_factors.len() != n || r.max_rep.len() != n || n == 0
    {
        return Err(Error::Corpus("inconsistent cached lattice".into()));
    }
    let t = g.table()?;
    let ngens = t.generators().len() as u32;
    let mut classes = Vec::with_capacity(n);
    for (gens, tree) in r.rep_gens.iter().zip(r.trees.iter()) {
        if gens.iter().any(|&x| x as usize >= t.order()) {
            return Err(Error::Corpus("cached generator out of range".into()));
        }
        let rep = ElemSubgroup {
            set: t.closure(gens).set,
            gens: gens.clone(),
        };
        let mut members = vec![rep.set.clone()];
        let mut conj = vec![0u32];
        for (j, &(parent, gi)) in tree.iter().enumerate() {
            if parent as usize > j || gi >= ngens {
                return Err(Error::Corpus("cached conjugation tree is malformed".into()));
            }
            members.push(t.conj_set_by_gen(&members[parent as usize], gi as usize));
            conj.push(t.mul(conj[parent as usize], t.generators()[gi as usize]));
        }
        classes.push((rep, members, conj, tree.clone()));
    }
    let in_range = |id: &SubId| {
        classes
            .get(id.class as usize)
            .is_some_and(|c| (id.member as usize) < c.1.len())
    };
    if !r.max_rep.iter().flatten().flatten().all(in_range) {
        return Err(Error::Corpus("cached maximal subgroup out of range".into()));
    }
    finish(g, t, classes, Some((r.solvable, r.nonabelian_factors, r.max_rep)))
}

type Props = (Vec<bool>, Vec<Vec<SimpleTypeId>>, Vec<Option<Vec<SubId>>>);

fn finish(g: &Group, t: Arc<ElementTable>, raw: Vec<RawClass>, props: Option<Props>) -> Result<LatticeSnapshot> {
    let restored = props.is_some();
    let mut raw = raw;
    if !restored {
        // Stable order: by subgroup order, then discovery.
        raw.sort_by_key(|(rep, ..)| rep.order());
    }
    let mut lookup = HashMap::new();
    for (ci, (_, members, ..)) in raw.iter().enumerate() {
        for (mi, m) in members.iter().enumerate() {
            lookup.insert(
                m.clone(),
                SubId {
                    class: ci as u32,
                    member: mi as u32,
                },
            );
        }
    }
    let (solv, nonab, maxr) = match props {
        Some(p) => p,
        None => {
            let solv: Vec<bool> = raw.iter().map(|(rep, ..)| t.is_solvable(rep)).collect();
            let mut nonab = Vec::with_capacity(raw.len());
            for ((rep, ..), &s) in raw.iter().zip(solv.iter()) {
                nonab.push(if s {
                    Vec::new()
                } else {
                    nonabelian_factors_elem(&t, rep)?
                });
            }
            (solv, nonab, vec![None; raw.len()])
        }
    };
    let mut classes = Vec::with_capacity(raw.len());
    for (ci, (rep, members, conj, tree)) in raw.into_iter().enumerate() {
        let mut core = members[0].clone();
        for m in &members[1..] {
            core.intersect_with(m);
        }
        let core_class = lookup
            .get(&core)
            .ok_or_else(|| Error::Corpus("core missing from the lattice".into()))?
            .class as usize;
        let max_rep = OnceLock::new();
        if let Some(v) = maxr[ci].clone() {
            let _ = max_rep.set(v);
        }
        classes.push(SubgroupClass {
            order: rep.order(),
            rep,
            members,
            conjugators: conj,
            tree,
            solvable: solv[ci],
            nonabelian: {
                let mut d = nonab[ci].clone();
                d.dedup();
                d
            },
            nonabelian_factors: nonab[ci].clone(),
            core_class,
            max_rep,
        });
    }
    let whole = classes.len() - 1;
    Ok(LatticeSnapshot {
        group: g.clone(),
        table: t,
        classes,
        lookup,
        whole,
    })
}
