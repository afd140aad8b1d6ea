//! Stabilizer chains via the deterministic Schreier–Sims algorithm.
//!
//! Base points are chosen as the lowest point moved by the element that
//! forces a new level. After construction a seeded random sifting pass checks
//! the chain; a failure there extends the chain and resumes the main loop.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::permutation::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const VERIFY_ROUNDS: usize = 64;

#[derive(Clone, Debug)]
pub struct ChainLevel {
    pub(crate) base: usize,
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<usize>,
    pub(crate) orbit_pos: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    pub(crate) reps: Vec<Permutation>,
    pub(crate) inv_reps: Vec<Permutation>,
}

impl ChainLevel {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = ChainLevel {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            orbit_pos: Vec::new(),
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.orbit_pos = vec![NOT_IN_ORBIT; degree];
        self.orbit.push(self.base);
        self.orbit_pos[self.base] = 0;
        self.reps.push(Permutation::identity(degree));
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for s in &self.gens {
                let img = s.apply(pt);
                if self.orbit_pos[img] == NOT_IN_ORBIT {
                    self.orbit_pos[img] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    let rep = self.reps[k].then(s);
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
        self.inv_reps = self.reps.iter().map(|r| r.inverse()).collect();
    }

    pub fn base_point(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.reps
    }

    /// Position of a point in the basic orbit.
    pub fn position(&self, point: usize) -> Option<usize> {
        match self.orbit_pos[point] {
            NOT_IN_ORBIT => None,
            p => Some(p as usize),
        }
    }
}

/// A base and strong generating set with basic orbits and transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let gens: Vec<Permutation> = {
            let mut g: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
            g.dedup();
            g
        };
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return chain;
        }
        let first = gens.iter().filter_map(|g| g.first_moved()).min().unwrap();
        let mut base = vec![first];
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let mut level = ChainLevel::new(b, degree);
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&p| g.apply(p) == p))
                .cloned()
                .collect();
            level.recompute(degree);
            chain.levels.push(level);
        }
        chain.complete();
        chain.verify_random(&gens);
        chain
    }

    /// Main Schreier–Sims loop: every Schreier generator of every level must
    /// sift through the levels below it.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.first_failing_schreier_generator(level) {
                Some(h) => {
                    let j = self.insert_residue(level + 1, h);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn first_failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for k in 0..lv.orbit.len() {
            for s in &lv.gens {
                let img = s.apply(lv.orbit[k]);
                let pos = lv.orbit_pos[img] as usize;
                let y = lv.reps[k].then(s).then(&lv.inv_reps[pos]);
                if y.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(&y, level + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Adds a non-identity residue `h` that sifted down to level `j` as a strong
    /// generator of levels `from..=j`, creating a level if needed.
    fn insert_residue(&mut self, from: usize, (h, j): (Permutation, usize)) -> usize {
        if j == self.levels.len() {
            let b = h.first_moved().expect("residue is not the identity");
            self.levels.push(ChainLevel::new(b, self.degree));
        }
        for l in from..=j {
            self.levels[l].gens.push(h.clone());
            self.levels[l].recompute(self.degree);
        }
        j
    }

    fn verify_random(&mut self, gens: &[Permutation]) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c4a1);
        let mut x = Permutation::identity(self.degree);
        for _ in 0..VERIFY_ROUNDS {
            for _ in 0..4 {
                x = x.then(&gens[rng.random_range(0..gens.len())]);
            }
            let (h, j) = self.sift(&x, 0);
            if !h.is_identity() {
                self.insert_residue(j.min(self.levels.len()), (h, j));
                self.complete();
            }
        }
    }

    /// Sifts `x` starting at `from`; returns the residue and the level at which
    /// sifting stopped (`levels().len()` when it passed every level).
    pub fn sift(&self, x: &Permutation, from: usize) -> (Permutation, usize) {
        let mut y = x.clone();
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            let img = y.apply(lv.base);
            match lv.orbit_pos[img] {
                NOT_IN_ORBIT => return (y, l),
                pos => y = y.then(&lv.inv_reps[pos as usize]),
            }
        }
        (y, self.levels.len())
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        if x.degree() != self.degree {
            return false;
        }
        self.sift(x, 0).0.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    /// Zero-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut x = Permutation::identity(self.degree);
        for lv in self.levels.iter().rev() {
            let k = rng.random_range(0..lv.reps.len());
            x = x.then(&lv.reps[k]);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let c = StabChain::build(5, &[p("(1 2)", 5), p("(1 2 3 4 5)", 5)]);
        assert_eq!(c.order(), 120);
        assert_eq!(c.base(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn trivial_chain() {
        let c = StabChain::build(4, &[Permutation::identity(4)]);
        assert_eq!(c.order(), 1);
        assert!(c.contains(&Permutation::identity(4)));
        assert!(!c.contains(&p("(1 2)", 4)));
    }

    #[test]
    fn base_starts_at_lowest_moved_point() {
        let c = StabChain::build(6, &[p("(4 5 6)", 6), p("(3 4)", 6)]);
        assert_eq!(c.base()[0], 2);
        assert_eq!(c.order(), 24);
    }
}
