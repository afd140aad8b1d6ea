mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{orders_of, Brute};
use maxsub::harness::{named_group, Engine, DEFAULT_SPECS};
use maxsub::lattice::{enumerate_subgroups, LatticeSnapshot, SubId};
use maxsub::Permutation;

fn elements(snap: &LatticeSnapshot, id: SubId) -> BTreeSet<Permutation> {
    snap.set(id).iter().map(|i| snap.table().element(i).clone()).collect()
}

fn lattice_ids(b: &Brute, snap: &LatticeSnapshot, ids: &[SubId]) -> BTreeSet<usize> {
    ids.iter()
        .map(|&id| b.find(&elements(snap, id)).expect("lattice subgroup is a subgroup"))
        .collect()
}

fn check_group(spec: &str, engine: &Engine) {
    let g = named_group(spec).unwrap();
    let b = Brute::new(g.generators());
    assert_eq!(b.order() as u128, g.order(), "{spec}: order");
    let a = engine.analyze(&g).unwrap();
    let (snap, st) = (&a.snap, &a.strata);

    assert_eq!(snap.total_subgroups(), b.subgroups.len(), "{spec}: subgroup count");
    let mut profile = BTreeMap::new();
    for c in snap.classes() {
        *profile.entry((c.order, c.size())).or_insert(0) += 1;
    }
    assert_eq!(profile, b.class_profile(), "{spec}: class profile");

    let max: BTreeSet<usize> = b.max().into_iter().collect();
    assert_eq!(lattice_ids(&b, snap, &st.max), max, "{spec}: Max");
    let max2: BTreeSet<usize> = b.max2().into_iter().collect();
    assert_eq!(lattice_ids(&b, snap, &st.max2), max2, "{spec}: Max2");
    let strict: BTreeSet<usize> = b.max2_strict().into_iter().collect();
    assert_eq!(lattice_ids(&b, snap, &st.strict_ids()), strict, "{spec}: Max2*");

    for &m in &st.max {
        let h = b.find(&elements(snap, m)).unwrap();
        assert_eq!(snap.class_of(m).solvable, b.is_solvable(h), "{spec}: solvable flag");
        assert_eq!(snap.class_of(m).is_normal(), b.is_normal(h), "{spec}: normal flag");
    }
}

#[test]
fn lattice_agrees_with_brute_force_up_to_order_200() {
    let engine = Engine::default();
    let mut checked = 0;
    for spec in DEFAULT_SPECS {
        if named_group(spec).unwrap().order() <= 200 {
            check_group(spec, &engine);
            checked += 1;
        }
    }
    assert!(checked >= 37, "only {checked} groups checked");
}

#[test]
fn maximal_subgroups_of_s4() {
    let g = named_group("sym(4)").unwrap();
    let b = Brute::new(g.generators());
    assert_eq!(orders_of(&b, &b.max()), vec![6, 6, 6, 6, 8, 8, 8, 12]);
    let snap = enumerate_subgroups(&g).unwrap();
    let mut orders: Vec<usize> = snap.maximal_ids().iter().map(|&m| snap.order(m)).collect();
    orders.sort_unstable();
    assert_eq!(orders, orders_of(&b, &b.max()));
}

#[test]
fn a5_has_59_subgroups_in_9_classes() {
    let b = Brute::new(named_group("alt(5)").unwrap().generators());
    assert_eq!(b.subgroups.len(), 59);
    assert_eq!(b.classes().len(), 9);
}
