//! Brute-force subgroup oracle built from plain permutation arithmetic.
//!
//! Elements come from a breadth-first closure of the generators, subgroups
//! from repeated `<S, x>` closures starting at the trivial group, and
//! conjugacy by conjugating with every element. Nothing here touches the
//! stabilizer chain, the element table or the lattice code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use maxsub::Permutation;

pub type Bits = Vec<u64>;

pub struct Brute {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    words: usize,
    /// Every subgroup, as a bitset over `elements`.
    pub subgroups: Vec<Bits>,
    sub_index: HashMap<Bits, usize>,
    orders: Vec<usize>,
}

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

impl Brute {
    pub fn new(generators: &[Permutation]) -> Brute {
        let id = Permutation::identity(generators[0].degree());
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let y = elements[i].then(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
            .collect();
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let mut b = Brute {
            elements,
            index,
            mul,
            inv,
            words: n.div_ceil(64),
            subgroups: Vec::new(),
            sub_index: HashMap::new(),
            orders: Vec::new(),
        };
        b.enumerate();
        b
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = vec![0u64; self.words];
        set(&mut bits, 0);
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let y = self.mul[e][g];
                if !has(&bits, y) {
                    set(&mut bits, y);
                    queue.push_back(y);
                }
            }
        }
        bits
    }

    fn enumerate(&mut self) {
        let n = self.order();
        let trivial = self.closure(&[]);
        let mut seen: HashSet<Bits> = HashSet::from([trivial.clone()]);
        let mut found = vec![(trivial, Vec::new())];
        let mut next = 0;
        while next < found.len() {
            let (s, gens) = found[next].clone();
            next += 1;
            for x in 0..n {
                if has(&s, x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let t = self.closure(&g2);
                if seen.insert(t.clone()) {
                    found.push((t, g2));
                }
            }
        }
        let mut subs: Vec<Bits> = found.into_iter().map(|(s, _)| s).collect();
        subs.sort_by_key(|s| (count(s), s.clone()));
        self.orders = subs.iter().map(count).collect();
        self.sub_index = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        self.subgroups = subs;
    }

    pub fn sub_order(&self, h: usize) -> usize {
        self.orders[h]
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.orders[big].is_multiple_of(self.orders[small]) && subset(&self.subgroups[small], &self.subgroups[big])
    }

    /// Maximal subgroups of subgroup `k`.
    pub fn maximal_in(&self, k: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.subgroups.len())
            .filter(|&h| h != k && self.contains(k, h))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&h| !below.iter().any(|&m| m != h && self.contains(m, h)))
            .collect()
    }

    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        let gi = self.inv[g];
        let mut bits = vec![0u64; self.words];
        for x in 0..self.order() {
            if has(&self.subgroups[h], x) {
                set(&mut bits, self.mul[self.mul[gi][x]][g]);
            }
        }
        self.sub_index[&bits]
    }

    /// Conjugacy classes of subgroups, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.subgroups.len()];
        let mut out = Vec::new();
        for h in 0..self.subgroups.len() {
            if done[h] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..self.order()).map(|g| self.conjugate(h, g)).collect();
            for &c in &cls {
                done[c] = true;
            }
            out.push(cls.into_iter().collect());
        }
        out
    }

    /// Multiset of (subgroup order, class size) over conjugacy classes.
    pub fn class_profile(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for c in self.classes() {
            *m.entry((self.orders[c[0]], c.len())).or_insert(0) += 1;
        }
        m
    }

    pub fn max(&self) -> Vec<usize> {
        self.maximal_in(self.whole())
    }

    /// Max₂(G): subgroups maximal in some maximal subgroup.
    pub fn max2(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.max().into_iter().flat_map(|m| self.maximal_in(m)).collect();
        set.into_iter().collect()
    }

    /// Max₂*(G): members of Max₂(G) maximal in every maximal overgroup.
    pub fn max2_strict(&self) -> Vec<usize> {
        let max = self.max();
        let maxes: Vec<Vec<usize>> = max.iter().map(|&m| self.maximal_in(m)).collect();
        self.max2()
            .into_iter()
            .filter(|&h| {
                max.iter()
                    .zip(&maxes)
                    .filter(|(&m, _)| self.contains(m, h))
                    .all(|(_, mm)| mm.contains(&h))
            })
            .collect()
    }

    /// The elements of subgroup `h`.
    pub fn perms(&self, h: usize) -> BTreeSet<Permutation> {
        (0..self.order())
            .filter(|&x| has(&self.subgroups[h], x))
            .map(|x| self.elements[x].clone())
            .collect()
    }

    pub fn find(&self, elements: &BTreeSet<Permutation>) -> Option<usize> {
        let mut bits = vec![0u64; self.words];
        for e in elements {
            set(&mut bits, *self.index.get(e)?);
        }
        self.sub_index.get(&bits).copied()
    }

    pub fn is_normal(&self, h: usize) -> bool {
        (0..self.order()).all(|g| self.conjugate(h, g) == h)
    }

    /// Solvability through the derived series, with commutators by hand.
    pub fn is_solvable(&self, h: usize) -> bool {
        let mut cur = h;
        loop {
            if self.orders[cur] == 1 {
                return true;
            }
            let members: Vec<usize> = (0..self.order()).filter(|&x| has(&self.subgroups[cur], x)).collect();
            let mut comms = Vec::new();
            for &a in &members {
                for &b in &members {
                    comms.push(self.mul[self.mul[self.inv[a]][self.inv[b]]][self.mul[a][b]]);
                }
            }
            comms.sort_unstable();
            comms.dedup();
            let d = self.sub_index[&self.closure(&comms)];
            if d == cur {
                return false;
            }
            cur = d;
        }
    }
}

/// Orders of a list of subgroups, sorted.
pub fn orders_of(b: &Brute, subs: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = subs.iter().map(|&h| b.sub_order(h)).collect();
    v.sort_unstable();
    v
}
