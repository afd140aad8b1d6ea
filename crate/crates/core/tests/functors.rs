mod common;

use std::collections::BTreeSet;

use common::Brute;
use maxsub::functors::{
    generating_check, pipeline, small_quotient, transport_to_quotient, Atom, Caret, FunctorContext, FunctorExpr, Level,
    Outcome, SubgroupSet, PIPELINES,
};
use maxsub::harness::{named_group, Analysis, Engine};
use maxsub::lattice::{LatticeSnapshot, SubId};
use maxsub::{Error, Permutation};

fn analysis(engine: &Engine, spec: &str) -> std::sync::Arc<Analysis> {
    engine.analyze(&named_group(spec).unwrap()).unwrap()
}

fn elements(snap: &LatticeSnapshot, id: SubId) -> BTreeSet<Permutation> {
    snap.set(id).iter().map(|i| snap.table().element(i).clone()).collect()
}

fn orders(snap: &LatticeSnapshot, set: &SubgroupSet) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().map(|id| snap.order(id)).collect();
    v.sort_unstable();
    v
}

#[test]
fn x_is_empty_for_a5() {
    let e = Engine::default();
    let a = analysis(&e, "alt(5)");
    let ctx = FunctorContext::new(&a.snap, &a.strata, 2).unwrap();
    assert!(ctx.base_set(Atom::X).is_empty());
}

#[test]
fn x_of_s5_is_a5() {
    let e = Engine::default();
    let a = analysis(&e, "sym(5)");
    let ctx = FunctorContext::new(&a.snap, &a.strata, 2).unwrap();
    let x = ctx.base_set(Atom::X);
    assert_eq!(orders(&a.snap, &x), vec![60]);
    assert!(a.strata.max.iter().any(|&m| a.snap.order(m) == 24 && !x.contains(m)));
}

#[test]
fn x_of_a7_skips_the_solvable_maximal() {
    let e = Engine::default();
    let a = analysis(&e, "alt(7)");
    let ctx = FunctorContext::new(&a.snap, &a.strata, 7).unwrap();
    let x = ctx.base_set(Atom::X);
    let classes: BTreeSet<usize> = x.iter().map(|id| a.snap.order(id)).collect();
    assert_eq!(classes, BTreeSet::from([120, 168, 360]));
    assert!(a.strata.max.iter().any(|&m| a.snap.order(m) == 72));
}

#[test]
fn phi_of_x_for_s5_is_max_of_a5() {
    let e = Engine::default();
    let a = analysis(&e, "sym(5)");
    let snap = &a.snap;
    let ctx = FunctorContext::new(snap, &a.strata, 2).unwrap();
    let phi = ctx.phi(&ctx.base_set(Atom::X)).unwrap();

    let b = Brute::new(snap.group().generators());
    let a5 = b.max().into_iter().find(|&m| b.sub_order(m) == 60).unwrap();
    let expected: BTreeSet<BTreeSet<Permutation>> = b.maximal_in(a5).into_iter().map(|h| b.perms(h)).collect();
    let got: BTreeSet<BTreeSet<Permutation>> = phi.iter().map(|id| elements(snap, id)).collect();
    assert_eq!(got, expected);
    assert_eq!(phi.len(), 21);
    assert_eq!(
        phi.class_counts().iter().map(|&(_, k)| k).collect::<BTreeSet<_>>(),
        BTreeSet::from([5, 6, 10])
    );

    let t51 = FunctorExpr::parse("Phi(X)_L1")
        .unwrap()
        .eval(&ctx, Caret::Intersection)
        .unwrap();
    assert_eq!(t51, phi);
}

#[test]
fn generating_checks_on_a5_and_s5() {
    let e = Engine::default();
    let p = pipeline("T51").unwrap();
    let a = analysis(&e, "alt(5)");
    let ctx = FunctorContext::new(&a.snap, &a.strata, 5).unwrap();
    let v = generating_check(&ctx, p.id, &p.expr(), &p.target.class(5), Caret::Intersection).unwrap();
    assert_eq!(v.outcome, Outcome::VacuousHolds);
    assert_eq!(v.set_size, 0);

    let s = analysis(&e, "sym(5)");
    let ctx = FunctorContext::new(&s.snap, &s.strata, 2).unwrap();
    let v = generating_check(&ctx, p.id, &p.expr(), &p.target.class(2), Caret::Intersection).unwrap();
    assert_eq!(v.outcome, Outcome::NonVacuous);
    assert_eq!(v.set_size, 21);
}

#[test]
fn expressions_round_trip_and_reject_garbage() {
    for p in &PIPELINES {
        let e = p.expr();
        assert_eq!(FunctorExpr::parse(&e.render()).unwrap(), e);
    }
    let e = FunctorExpr::parse("Max2star.(Phi(X)_L2^E1)").unwrap();
    assert_eq!(e.render(), "S.(Phi(X)_L2^E1)");
    for bad in ["", "Phi(X", "Phi(Y)", "Phi(X)_", "Phi(X)_X", "X.Phi(X)"] {
        let r = FunctorExpr::parse(bad).and_then(|e| {
            let en = Engine::default();
            let a = analysis(&en, "sym(4)");
            let ctx = FunctorContext::new(&a.snap, &a.strata, 2)?;
            e.eval(&ctx, Caret::Intersection)
        });
        assert!(r.is_err(), "{bad:?} accepted");
    }
}

#[test]
fn base_set_inclusions() {
    let e = Engine::default();
    for spec in ["sym(5)", "alt(7)", "psl2(11)", "product(cyclic(2), alt(5))"] {
        let a = analysis(&e, spec);
        for p in [2, 3, 5, 7, 11] {
            let ctx = FunctorContext::new(&a.snap, &a.strata, p).unwrap();
            let base = |atom| ctx.base_set(atom);
            assert!(base(Atom::L1).is_subset(&base(Atom::L2)), "{spec} p={p}");
            assert!(base(Atom::Pc).is_subset(&base(Atom::Pci)), "{spec} p={p}");
            assert!(base(Atom::Pc).is_subset(&base(Atom::T1)), "{spec} p={p}");
            let full = SubgroupSet::full(&a.snap, &a.strata, Level::Max2);
            for atom in Atom::ALL.into_iter().filter(|a| a.level() == Level::Max2) {
                assert!(base(atom).is_subset(&full));
            }
        }
    }
}

#[test]
fn base_sets_are_unions_of_conjugacy_classes() {
    let e = Engine::default();
    for spec in ["sym(5)", "alt(6)", "mathieu11"] {
        let a = analysis(&e, spec);
        let ctx = FunctorContext::new(&a.snap, &a.strata, 3).unwrap();
        let mut sets: Vec<SubgroupSet> = Atom::ALL.iter().map(|&atom| ctx.base_set(atom)).collect();
        for p in &PIPELINES {
            sets.push(p.expr().eval(&ctx, Caret::Intersection).unwrap());
            sets.push(p.expr().eval(&ctx, Caret::Union).unwrap());
        }
        for s in &sets {
            for (c, k) in s.class_counts() {
                assert_eq!(k, a.snap.class(c as usize).size(), "{spec}: class {c}");
            }
        }
    }
}

#[test]
fn transport_through_klein_four() {
    let e = Engine::default();
    let a = analysis(&e, "sym(4)");
    let snap = &a.snap;
    let v4 = snap.normal_ids().into_iter().find(|&n| snap.order(n) == 4).unwrap();
    let q = small_quotient(snap, v4).unwrap();
    assert_eq!(q.group.order(), 6);
    let qsnap = e.lattice(&q.group).unwrap();

    let max = SubgroupSet::full(snap, &a.strata, Level::Max);
    let tr = transport_to_quotient(snap, &max, &q, &qsnap).unwrap();
    assert_eq!(tr.dropped, 4);
    assert_eq!(orders(&qsnap, &tr.set), vec![2, 2, 2, 3]);
    let qmax = SubgroupSet::new(qsnap.group(), Level::Max, qsnap.maximal_ids());
    assert_eq!(tr.set, qmax);

    let empty = SubgroupSet::empty(snap.group(), Level::Max);
    let tr = transport_to_quotient(snap, &empty, &q, &qsnap).unwrap();
    assert!(tr.set.is_empty());
    assert_eq!(tr.dropped, 0);
}

#[test]
fn transport_through_trivial_kernel_is_identity() {
    let e = Engine::default();
    let a = analysis(&e, "sym(4)");
    let snap = &a.snap;
    let q = small_quotient(snap, snap.trivial_id()).unwrap();
    let full = SubgroupSet::full(snap, &a.strata, Level::Max2);
    let tr = transport_to_quotient(snap, &full, &q, snap).unwrap();
    assert_eq!(tr.set, full);
    assert_eq!(tr.dropped, 0);
}

#[test]
fn mixing_groups_or_levels_is_an_error() {
    let e = Engine::default();
    let a = analysis(&e, "sym(4)");
    let b = analysis(&e, "alt(5)");
    let x = SubgroupSet::full(&a.snap, &a.strata, Level::Max);
    let y = SubgroupSet::full(&a.snap, &a.strata, Level::Max2);
    let z = SubgroupSet::full(&b.snap, &b.strata, Level::Max);
    assert!(matches!(x.contract(&y), Err(Error::LevelMismatch { .. })));
    assert!(matches!(x.extend(&z), Err(Error::MixedAmbient)));
    let ctx = FunctorContext::new(&b.snap, &b.strata, 2).unwrap();
    assert!(matches!(ctx.phi(&x), Err(Error::MixedAmbient)));
    assert!(FunctorContext::new(&a.snap, &a.strata, 4).is_err());
}
