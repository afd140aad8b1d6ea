//! Indexed element tables for groups small enough to enumerate.
//!
//! Every element gets an index from its sift coordinates through the
//! stabilizer chain (identity has index 0), so multiplication is a
//! composition followed by an in-place sift. Subgroups become bitsets over
//! these indices, which is what the lattice and structure code runs on.

use std::sync::OnceLock;

use smallvec::SmallVec;

use super::chain::StabChain;
use super::permutation::Permutation;

const NONE: u32 = u32::MAX;

type Buf = SmallVec<[u16; 64]>;

/// A set of element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElemSet {
    words: Box<[u64]>,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            words: vec![0u64; universe.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = u32>) -> Self {
        let mut s = ElemSet::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Returns true when `i` was not present.
    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i >> 6) as usize, i & 63);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        let (w, b) = ((i >> 6) as usize, i & 63);
        self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            words: self.words.iter().zip(other.words.iter()).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((wi as u32) * 64 + b)
            })
        })
    }
}

/// A subgroup of a tabled group: its element set and a generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemSubgroup {
    pub set: ElemSet,
    pub gens: Vec<u32>,
}

impl ElemSubgroup {
    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }
}

struct Level {
    base: usize,
    stride: u32,
    pos: Vec<u32>,
    inv_reps: Vec<Box<[u16]>>,
}

pub struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    inverse: Vec<u32>,
    levels: Vec<Level>,
    gens: Vec<u32>,
    orders: OnceLock<Vec<u32>>,
    conj: OnceLock<Vec<Vec<u32>>>,
}

impl ElementTable {
    pub(crate) fn build(chain: &StabChain, generators: &[Permutation]) -> ElementTable {
        let degree = chain.degree();
        let mut stride = 1u32;
        let mut levels = Vec::new();
        for lv in chain.levels() {
            levels.push(Level {
                base: lv.base,
                stride,
                pos: lv.orbit_pos.clone(),
                inv_reps: lv
                    .inv_reps
                    .iter()
                    .map(|r| r.images().to_vec().into_boxed_slice())
                    .collect(),
            });
            stride *= lv.orbit.len() as u32;
        }
        let order = stride as usize;

        let mut listed: Vec<(u32, Permutation)> = vec![(0, Permutation::identity(degree))];
        for (l, lv) in chain.levels().iter().enumerate().rev() {
            let s = levels[l].stride;
            let mut next = Vec::with_capacity(listed.len() * lv.reps.len());
            for (c, rep) in lv.reps.iter().enumerate() {
                for (idx, y) in &listed {
                    next.push((c as u32 * s + idx, y.then(rep)));
                }
            }
            listed = next;
        }
        let mut elements = vec![Permutation::identity(degree); order];
        for (idx, p) in listed {
            elements[idx as usize] = p;
        }

        let mut table = ElementTable {
            degree,
            elements,
            inverse: Vec::new(),
            levels,
            gens: Vec::new(),
            orders: OnceLock::new(),
            conj: OnceLock::new(),
        };
        table.inverse = (0..order)
            .map(|i| {
                table
                    .index_of(&table.elements[i].inverse())
                    .expect("group is closed under inverses")
            })
            .collect();
        table.gens = generators
            .iter()
            .filter_map(|g| table.index_of(g))
            .filter(|&g| g != 0)
            .collect();
        table.gens.dedup();
        table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Indices of the ambient group's non-identity generators.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::from_indices(self.order(), 0..self.order() as u32)
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::new(self.order())
    }

    pub fn whole(&self) -> ElemSubgroup {
        ElemSubgroup {
            set: self.full_set(),
            gens: self.gens.clone(),
        }
    }

    pub fn trivial(&self) -> ElemSubgroup {
        ElemSubgroup {
            set: ElemSet::from_indices(self.order(), [0]),
            gens: Vec::new(),
        }
    }

    fn sift_index(&self, buf: &mut Buf) -> Option<u32> {
        let mut idx = 0u32;
        for lv in &self.levels {
            let p = lv.pos[buf[lv.base] as usize];
            if p == NONE {
                return None;
            }
            idx += p * lv.stride;
            let inv = &lv.inv_reps[p as usize];
            for v in buf.iter_mut() {
                *v = inv[*v as usize];
            }
        }
        if buf.iter().enumerate().all(|(i, &v)| v as usize == i) {
            Some(idx)
        } else {
            None
        }
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        if x.degree() != self.degree {
            return None;
        }
        let mut buf: Buf = x.images().iter().copied().collect();
        self.sift_index(&mut buf)
    }

    /// Index of `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let ea = self.elements[a as usize].images();
        let eb = self.elements[b as usize].images();
        let mut buf: Buf = ea.iter().map(|&i| eb[i as usize]).collect();
        self.sift_index(&mut buf).expect("product stays in the group")
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders
            .get_or_init(|| self.elements.iter().map(|p| p.order() as u32).collect())[a as usize]
    }

    /// Conjugation tables for the ambient generators: `t[k][x] = g_k⁻¹ x g_k`.
    pub fn conj_tables(&self) -> &[Vec<u32>] {
        self.conj.get_or_init(|| {
            self.gens
                .iter()
                .map(|&g| (0..self.order() as u32).map(|x| self.conj(x, g)).collect())
                .collect()
        })
    }

    /// Image of a set under conjugation by the ambient element `g`.
    pub fn conj_set(&self, set: &ElemSet, g: u32) -> ElemSet {
        let gi = self.inv(g);
        ElemSet::from_indices(self.order(), set.iter().map(|x| self.mul(self.mul(gi, x), g)))
    }

    pub fn conj_set_by_gen(&self, set: &ElemSet, k: usize) -> ElemSet {
        let t = &self.conj_tables()[k];
        ElemSet::from_indices(self.order(), set.iter().map(|x| t[x as usize]))
    }

    pub fn conj_subgroup(&self, h: &ElemSubgroup, g: u32) -> ElemSubgroup {
        ElemSubgroup {
            set: self.conj_set(&h.set, g),
            gens: h.gens.iter().map(|&x| self.conj(x, g)).collect(),
        }
    }

    /// Adds generator `x` to a subgroup and closes.
    pub fn extend(&self, h: &ElemSubgroup, x: u32) -> ElemSubgroup {
        if h.set.contains(x) {
            return h.clone();
        }
        let mut set = h.set.clone();
        let mut list: Vec<u32> = h.set.iter().collect();
        let mut gens = h.gens.clone();
        gens.push(x);
        let old = list.len();
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            let from = if i < old { gens.len() - 1 } else { 0 };
            for &s in &gens[from..] {
                let y = self.mul(a, s);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        ElemSubgroup { set, gens }
    }

    pub fn closure(&self, gens: &[u32]) -> ElemSubgroup {
        let mut h = self.trivial();
        for &g in gens {
            h = self.extend(&h, g);
        }
        h
    }

    /// Some generating list for a set already known to be a subgroup.
    pub fn generate_set(&self, set: &ElemSet) -> ElemSubgroup {
        let mut h = self.trivial();
        for x in set.iter() {
            if !h.set.contains(x) {
                h = self.extend(&h, x);
                if h.set.len() == set.len() {
                    break;
                }
            }
        }
        h
    }

    /// Smallest subgroup containing `seeds` and normalized by every element of `by`.
    pub fn normal_closure(&self, by: &[u32], seeds: &[u32]) -> ElemSubgroup {
        let mut n = self.closure(seeds);
        loop {
            let mut grown = false;
            let mut k = 0;
            while k < n.gens.len() {
                let x = n.gens[k];
                for &g in by {
                    let y = self.conj(x, g);
                    if !n.set.contains(y) {
                        n = self.extend(&n, y);
                        grown = true;
                    }
                }
                k += 1;
            }
            if !grown {
                return n;
            }
        }
    }

    /// Normal closure under the ambient group using the precomputed tables.
    pub fn ambient_normal_closure(&self, seeds: &[u32]) -> ElemSubgroup {
        let tables = self.conj_tables();
        let mut n = self.closure(seeds);
        let mut k = 0;
        while k < n.gens.len() {
            let x = n.gens[k];
            for t in tables {
                let y = t[x as usize];
                if !n.set.contains(y) {
                    n = self.extend(&n, y);
                }
            }
            k += 1;
        }
        n
    }

    pub fn derived(&self, h: &ElemSubgroup) -> ElemSubgroup {
        let mut seeds = Vec::new();
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                let c = self.commutator(a, b);
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&h.gens, &seeds)
    }

    pub fn is_solvable(&self, h: &ElemSubgroup) -> bool {
        let mut cur = h.clone();
        loop {
            if cur.set.len() == 1 {
                return true;
            }
            let d = self.derived(&cur);
            if d.set.len() == cur.set.len() {
                return false;
            }
            cur = d;
        }
    }

    pub fn is_abelian(&self, h: &ElemSubgroup) -> bool {
        h.gens
            .iter()
            .enumerate()
            .all(|(i, &a)| h.gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether every element of `by` normalizes `h`.
    pub fn normalized_by(&self, h: &ElemSubgroup, by: &[u32]) -> bool {
        by.iter()
            .all(|&g| h.gens.iter().all(|&x| h.set.contains(self.conj(x, g))))
    }

    pub fn is_normal_in_ambient(&self, h: &ElemSubgroup) -> bool {
        let tables = self.conj_tables();
        tables
            .iter()
            .all(|t| h.gens.iter().all(|&x| h.set.contains(t[x as usize])))
    }

    /// Conjugacy class representatives of the elements of `within` under
    /// conjugation by `by`, with class sizes. Representatives are the least
    /// index in each class.
    pub fn class_reps(&self, within: &ElemSet, by: &[u32]) -> Vec<(u32, usize)> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for x in within.iter() {
            if seen.contains(x) {
                continue;
            }
            seen.insert(x);
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                for &g in by {
                    let y = self.conj(orbit[i], g);
                    if seen.insert(y) {
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            out.push((x, orbit.len()));
        }
        out
    }

    /// Right cosets `Hx` of `h` as a map element → coset number, plus one
    /// representative per coset.
    pub fn right_cosets(&self, h: &ElemSubgroup) -> (Vec<u32>, Vec<u32>) {
        let mut which = vec![NONE; self.order()];
        let mut reps = Vec::new();
        let members: Vec<u32> = h.set.iter().collect();
        for x in 0..self.order() as u32 {
            if which[x as usize] != NONE {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in &members {
                which[self.mul(m, x) as usize] = c;
            }
        }
        (which, reps)
    }

    /// Intersection of all conjugates of `h` by the ambient group.
    pub fn core(&self, h: &ElemSubgroup) -> ElemSubgroup {
        let tables = self.conj_tables();
        let mut seen = vec![h.set.clone()];
        let mut core = h.set.clone();
        let mut i = 0;
        while i < seen.len() {
            for k in 0..tables.len() {
                let c = self.conj_set_by_gen(&seen[i], k);
                if !seen.contains(&c) {
                    core.intersect_with(&c);
                    seen.push(c);
                }
            }
            i += 1;
        }
        self.generate_set(&core)
    }
}
