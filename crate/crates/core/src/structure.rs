//! Solvability, chief series, composition factors, normal subgroups and residuals.

use std::collections::HashSet;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::perm::{ElemSubgroup, ElementTable, Group, SubgroupHandle};

/// Nonabelian simple groups are identified by order strictly below this bound.
pub const IDENTIFICATION_CEILING: u64 = 20160;

const SIMPLE_ORDERS: &[(u64, &str)] = &[
    (60, "A5"),
    (168, "PSL(2,7)"),
    (360, "A6"),
    (504, "PSL(2,8)"),
    (660, "PSL(2,11)"),
    (1092, "PSL(2,13)"),
    (2448, "PSL(2,17)"),
    (2520, "A7"),
    (3420, "PSL(2,19)"),
    (4080, "PSL(2,16)"),
    (5616, "PSL(3,3)"),
    (6048, "PSU(3,3)"),
    (6072, "PSL(2,23)"),
    (7800, "PSL(2,25)"),
    (7920, "M11"),
    (9828, "PSL(2,27)"),
    (12180, "PSL(2,29)"),
    (14880, "PSL(2,31)"),
];

/// Orders of the nonabelian simple groups below the identification ceiling.
pub fn simple_orders() -> impl Iterator<Item = u64> {
    SIMPLE_ORDERS.iter().map(|&(o, _)| o)
}

/// Isomorphism type of a simple group, determined by its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order")]
pub enum SimpleTypeId {
    Cyclic(u64),
    NonAbelian(u64),
}

impl SimpleTypeId {
    pub fn nonabelian(order: u64) -> Result<SimpleTypeId> {
        if order < IDENTIFICATION_CEILING && SIMPLE_ORDERS.iter().any(|&(o, _)| o == order) {
            Ok(SimpleTypeId::NonAbelian(order))
        } else {
            Err(Error::UnidentifiableFactor(order))
        }
    }

    pub fn cyclic(p: u64) -> Result<SimpleTypeId> {
        if is_prime(p) {
            Ok(SimpleTypeId::Cyclic(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            SimpleTypeId::Cyclic(p) | SimpleTypeId::NonAbelian(p) => p,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, SimpleTypeId::Cyclic(_))
    }

    pub fn label(&self) -> String {
        match *self {
            SimpleTypeId::Cyclic(p) => format!("C{p}"),
            SimpleTypeId::NonAbelian(o) => SIMPLE_ORDERS
                .iter()
                .find(|&&(x, _)| x == o)
                .map(|&(_, l)| l.to_string())
                .unwrap_or_else(|| format!("simple({o})")),
        }
    }
}

impl fmt::Display for SimpleTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One chief factor `S^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefFactor {
    pub order: u128,
    pub abelian: bool,
    pub simple: SimpleTypeId,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// Descending from the whole group to the trivial subgroup.
    pub terms: Vec<SubgroupHandle>,
    /// `factors[i]` is `terms[i] / terms[i + 1]`.
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// Chief series of `h` as a group in its own right.
    pub fn of(h: &SubgroupHandle) -> Result<ChiefSeries> {
        Self::build(h, None)
    }

    /// A series built with random choices among the minimal candidates.
    pub fn randomized(h: &SubgroupHandle, seed: u64) -> Result<ChiefSeries> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::build(h, Some(&mut rng))
    }

    fn build(h: &SubgroupHandle, rng: Option<&mut ChaCha8Rng>) -> Result<ChiefSeries> {
        let t = h.table();
        let (ascending, mut factors) = chief_series_elem(t, h.elem(), rng)?;
        let terms = ascending
            .into_iter()
            .rev()
            .map(|e| SubgroupHandle::from_parts(h.ambient().clone(), t.clone(), e))
            .collect();
        factors.reverse();
        Ok(ChiefSeries { terms, factors })
    }

    /// Composition factors with multiplicity, sorted.
    pub fn composition_factors(&self) -> Vec<SimpleTypeId> {
        let mut out: Vec<SimpleTypeId> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.simple, f.multiplicity as usize))
            .collect();
        out.sort();
        out
    }
}

/// Normal closure in `h` (conjugation by `h.gens`) of `base ∪ {x}`.
fn normal_closure_over(t: &ElementTable, by: &[u32], base: &ElemSubgroup, x: u32) -> ElemSubgroup {
    let mut n = t.extend(base, x);
    let mut k = 0;
    while k < n.gens.len() {
        let y = n.gens[k];
        for &g in by {
            let z = t.conj(y, g);
            if !n.set.contains(z) {
                n = t.extend(&n, z);
            }
        }
        k += 1;
    }
    n
}

/// Minimal elements among the normal closures of `base ∪ {x}` for class
/// representatives `x` outside `base`.
fn minimal_over(
    t: &ElementTable,
    by: &[u32],
    reps: &[u32],
    base: &ElemSubgroup,
    within: &ElemSubgroup,
) -> Vec<ElemSubgroup> {
    let mut cands: Vec<ElemSubgroup> = Vec::new();
    let mut seen = HashSet::new();
    for &x in reps {
        if base.set.contains(x) || !within.set.contains(x) {
            continue;
        }
        let n = normal_closure_over(t, by, base, x);
        if seen.insert(n.set.clone()) {
            cands.push(n);
        }
    }
    cands.sort_by_key(|c| c.order());
    let mut minimal: Vec<ElemSubgroup> = Vec::new();
    for c in cands {
        if !minimal.iter().any(|m| m.set.is_subset(&c.set)) {
            minimal.push(c);
        }
    }
    minimal
}

pub(crate) fn chief_series_elem(
    t: &ElementTable,
    h: &ElemSubgroup,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<(Vec<ElemSubgroup>, Vec<ChiefFactor>)> {
    chief_series_from(t, h, &t.trivial(), rng)
}

/// Chief series of `h` through the normal subgroup `start`, from `start` up.
pub(crate) fn chief_series_from(
    t: &ElementTable,
    h: &ElemSubgroup,
    start: &ElemSubgroup,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<(Vec<ElemSubgroup>, Vec<ChiefFactor>)> {
    let reps: Vec<u32> = t.class_reps(&h.set, &h.gens).into_iter().map(|(x, _)| x).collect();
    let mut cur = start.clone();
    let mut terms = vec![cur.clone()];
    let mut factors = Vec::new();
    while cur.order() < h.order() {
        let minimal = minimal_over(t, &h.gens, &reps, &cur, h);
        let next = match rng.as_deref_mut() {
            Some(r) => minimal.choose(r).expect("a proper term has a cover").clone(),
            None => minimal.into_iter().next().expect("a proper term has a cover"),
        };
        factors.push(factor_between(t, &cur, &next)?);
        terms.push(next.clone());
        cur = next;
    }
    Ok((terms, factors))
}

fn factor_between(t: &ElementTable, lower: &ElemSubgroup, upper: &ElemSubgroup) -> Result<ChiefFactor> {
    let order = (upper.order() / lower.order()) as u128;
    let abelian = upper.gens.iter().enumerate().all(|(i, &a)| {
        upper.gens[i + 1..]
            .iter()
            .all(|&b| lower.set.contains(t.commutator(a, b)))
    });
    if abelian {
        let p = crate::arith::prime_power_base(order).expect("abelian chief factor is elementary");
        let mut k = 0;
        let mut m = order;
        while m > 1 {
            m /= p as u128;
            k += 1;
        }
        return Ok(ChiefFactor {
            order,
            abelian,
            simple: SimpleTypeId::Cyclic(p),
            multiplicity: k,
        });
    }
    let reps: Vec<u32> = t
        .class_reps(&upper.set, &upper.gens)
        .into_iter()
        .map(|(x, _)| x)
        .collect();
    let minimal = minimal_over(t, &upper.gens, &reps, lower, upper);
    let s = (minimal[0].order() / lower.order()) as u64;
    let mut k = 0;
    let mut m = order;
    while m > 1 {
        m /= s as u128;
        k += 1;
    }
    Ok(ChiefFactor {
        order,
        abelian,
        simple: SimpleTypeId::nonabelian(s)?,
        multiplicity: k,
    })
}

/// Nonabelian composition factors of `h` with multiplicity, sorted.
pub(crate) fn nonabelian_factors_elem(t: &ElementTable, h: &ElemSubgroup) -> Result<Vec<SimpleTypeId>> {
    if t.is_solvable(h) {
        return Ok(Vec::new());
    }
    let (_, factors) = chief_series_elem(t, h, None)?;
    let mut out: Vec<SimpleTypeId> = factors
        .into_iter()
        .filter(|f| !f.abelian)
        .flat_map(|f| std::iter::repeat_n(f.simple, f.multiplicity as usize))
        .collect();
    out.sort();
    Ok(out)
}

/// Distinct nonabelian composition factor types of `h`, sorted.
pub(crate) fn nonabelian_types_elem(t: &ElementTable, h: &ElemSubgroup) -> Result<Vec<SimpleTypeId>> {
    let mut out = nonabelian_factors_elem(t, h)?;
    out.dedup();
    Ok(out)
}

/// Whether no nonabelian composition factor has order divisible by `p`.
pub fn p_solvable_from_types(types: &[SimpleTypeId], p: u64) -> bool {
    types.iter().all(|s| s.is_abelian() || s.order() % p != 0)
}

pub fn is_solvable(g: &Group) -> Result<bool> {
    Ok(SubgroupHandle::whole(g)?.is_solvable())
}

pub fn is_p_solvable(g: &Group, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let h = SubgroupHandle::whole(g)?;
    let types = nonabelian_types_elem(h.table(), h.elem())?;
    Ok(p_solvable_from_types(&types, p))
}

/// Nonabelian composition factor types of a subgroup, as a group in its own right.
pub fn nonabelian_factor_types(h: &SubgroupHandle) -> Result<Vec<SimpleTypeId>> {
    nonabelian_types_elem(h.table(), h.elem())
}

pub fn chief_series(g: &Group) -> Result<ChiefSeries> {
    ChiefSeries::of(&SubgroupHandle::whole(g)?)
}

pub fn composition_factors(g: &Group) -> Result<Vec<SimpleTypeId>> {
    Ok(chief_series(g)?.composition_factors())
}

fn ambient_class_reps(t: &ElementTable) -> Vec<u32> {
    let tables = t.conj_tables();
    let mut seen = t.empty_set();
    let mut reps = Vec::new();
    for x in 0..t.order() as u32 {
        if !seen.insert(x) {
            continue;
        }
        reps.push(x);
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
    reps
}

fn class_normal_closures(t: &ElementTable) -> Vec<ElemSubgroup> {
    let mut out: Vec<ElemSubgroup> = Vec::new();
    let mut seen = HashSet::new();
    for x in ambient_class_reps(t).into_iter().skip(1) {
        let n = t.ambient_normal_closure(&[x]);
        if seen.insert(n.set.clone()) {
            out.push(n);
        }
    }
    out
}

pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<SubgroupHandle>> {
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    let t = g.table()?;
    let mut ncl = class_normal_closures(&t);
    ncl.sort_by_key(|n| (n.order(), n.set.clone()));
    let mut minimal: Vec<ElemSubgroup> = Vec::new();
    for n in ncl {
        if !minimal.iter().any(|m| m.set.is_subset(&n.set)) {
            minimal.push(n);
        }
    }
    Ok(minimal
        .into_iter()
        .map(|m| SubgroupHandle::from_parts(g.clone(), t.clone(), m))
        .collect())
}

pub(crate) fn normal_subgroups_elem(t: &ElementTable) -> Vec<ElemSubgroup> {
    let mut all = vec![t.trivial()];
    let mut seen: HashSet<_> = all.iter().map(|n| n.set.clone()).collect();
    let atoms = class_normal_closures(t);
    for a in &atoms {
        if seen.insert(a.set.clone()) {
            all.push(a.clone());
        }
    }
    let mut i = 0;
    while i < all.len() {
        for a in &atoms {
            if a.set.is_subset(&all[i].set) {
                continue;
            }
            let mut j = all[i].clone();
            for &g in &a.gens {
                j = t.extend(&j, g);
            }
            if seen.insert(j.set.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by_key(|n| (n.order(), n.set.clone()));
    all
}

/// All normal subgroups, by increasing order.
pub fn normal_subgroups(g: &Group) -> Result<Vec<SubgroupHandle>> {
    let t = g.table()?;
    Ok(normal_subgroups_elem(&t)
        .into_iter()
        .map(|n| SubgroupHandle::from_parts(g.clone(), t.clone(), n))
        .collect())
}

/// Least normal subgroup `N` for which `in_class(N)` (the quotient by `N` lies
/// in the class) holds.
pub fn residual<F>(g: &Group, mut in_class: F) -> Result<SubgroupHandle>
where
    F: FnMut(&SubgroupHandle) -> Result<bool>,
{
    let normals = normal_subgroups(g)?;
    let mut members = Vec::new();
    for n in normals {
        if in_class(&n)? {
            members.push(n);
        }
    }
    let mut minimal: Vec<SubgroupHandle> = Vec::new();
    for n in members {
        if !minimal.iter().any(|m| m.set().is_subset(n.set())) {
            minimal.push(n);
        }
    }
    match minimal.len() {
        1 => Ok(minimal.pop().unwrap()),
        k => Err(Error::NonUniqueMinimal(k)),
    }
}

/// Intersection of all maximal subgroups.
pub fn frattini_subgroup(g: &Group) -> Result<SubgroupHandle> {
    let snap = crate::lattice::enumerate_subgroups(g)?;
    Ok(snap.frattini())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(deg: usize, gens: &[&str]) -> Group {
        Group::from_cycle_strings(deg, gens).unwrap()
    }

    #[test]
    fn solvability_of_small_groups() {
        assert!(is_solvable(&group(4, &["(1 2)", "(1 2 3 4)"])).unwrap());
        assert!(!is_solvable(&group(5, &["(1 2 3)", "(3 4 5)"])).unwrap());
    }

    #[test]
    fn p_solvability() {
        let a5 = group(5, &["(1 2 3)", "(3 4 5)"]);
        assert!(is_p_solvable(&a5, 7).unwrap());
        assert!(!is_p_solvable(&a5, 5).unwrap());
        assert_eq!(is_p_solvable(&a5, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn composition_factors_of_s4_and_s5() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(
            composition_factors(&s4).unwrap(),
            vec![
                SimpleTypeId::Cyclic(2),
                SimpleTypeId::Cyclic(2),
                SimpleTypeId::Cyclic(2),
                SimpleTypeId::Cyclic(3)
            ]
        );
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert_eq!(
            composition_factors(&s5).unwrap(),
            vec![SimpleTypeId::Cyclic(2), SimpleTypeId::NonAbelian(60)]
        );
    }

    #[test]
    fn minimal_normal_subgroups_of_cyclic_six() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let mins = minimal_normal_subgroups(&c6).unwrap();
        let orders: Vec<u128> = mins.iter().map(|m| m.order()).collect();
        assert_eq!(orders, vec![2, 3]);
        assert_eq!(
            minimal_normal_subgroups(&Group::trivial(3)).unwrap_err(),
            Error::TrivialGroup
        );
    }

    #[test]
    fn solvable_residual_of_s5() {
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let r = residual(&s5, |n| {
            let (q, _) = crate::perm::quotient_group(&s5, n)?;
            is_solvable(&q)
        })
        .unwrap();
        assert_eq!(r.order(), 60);
        assert_eq!(normal_subgroups(&s5).unwrap().len(), 3);
    }

    #[test]
    fn identification_ceiling() {
        assert_eq!(
            SimpleTypeId::nonabelian(20160).unwrap_err(),
            Error::UnidentifiableFactor(20160)
        );
        assert_eq!(SimpleTypeId::nonabelian(168).unwrap().label(), "PSL(2,7)");
    }
}
