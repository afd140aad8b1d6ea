use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, LazyLock};

use maxsub::functors::{Atom, FunctorContext, FunctorExpr, Level, SubgroupSet};
use maxsub::harness::{named_group, sym, Analysis, Engine};
use maxsub::lattice::SubId;
use maxsub::{Group, Permutation, SubgroupHandle};
use proptest::prelude::*;

const DEGREE: usize = 6;

static S6: LazyLock<Group> = LazyLock::new(|| sym(DEGREE));
static ENGINE: LazyLock<Engine> = LazyLock::new(Engine::default);
static S5: LazyLock<Arc<Analysis>> = LazyLock::new(|| ENGINE.analyze(&named_group("sym(5)").unwrap()).unwrap());

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn closure_order(gens: &[Permutation]) -> usize {
    let id = Permutation::identity(DEGREE);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn pick(ids: &[SubId], mask: &[bool]) -> Vec<SubId> {
    ids.iter()
        .zip(mask.iter().cycle())
        .filter(|(_, &m)| m)
        .map(|(&i, _)| i)
        .collect()
}

fn atom() -> impl Strategy<Value = Atom> {
    prop::sample::select(Atom::ALL.to_vec())
}

fn expr() -> impl Strategy<Value = FunctorExpr> {
    atom().prop_map(FunctorExpr::Phi).prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), atom()).prop_map(|(e, a)| FunctorExpr::Contract(Box::new(e), a)),
            (inner.clone(), atom()).prop_map(|(e, a)| FunctorExpr::Extend(Box::new(e), a)),
            (atom(), inner).prop_map(|(a, e)| FunctorExpr::Dot(a, Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_a_group_law(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&Permutation::identity(7)), a.clone());
        for x in 0..7 {
            prop_assert_eq!(a.then(&b).apply(x), b.apply(a.apply(x)));
        }
        prop_assert!(a.pow(a.order()).is_identity());
    }

    #[test]
    fn cycle_notation_round_trips(a in perm(9)) {
        let back = Permutation::parse(&a.to_string(), Some(9)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn random_subgroups_obey_lagrange(gens in prop::collection::vec(perm(DEGREE), 1..3)) {
        let h = SubgroupHandle::new(&S6, &gens).unwrap();
        prop_assert_eq!(h.order() as usize, closure_order(&gens));
        prop_assert_eq!(720 % h.order(), 0);
        prop_assert_eq!(h.order() * h.index(), 720);
        let core = h.core();
        prop_assert!(core.is_normal());
        prop_assert!(core.is_subgroup_of(&h).unwrap());
        for g in &gens {
            prop_assert!(h.contains(g));
        }
    }

    #[test]
    fn phi_is_monotone(a in prop::collection::vec(any::<bool>(), 4), b in prop::collection::vec(any::<bool>(), 4)) {
        let an = &**S5;
        let ctx = FunctorContext::new(&an.snap, &an.strata, 2).unwrap();
        let small: Vec<SubId> = pick(&an.strata.max, &a);
        let big: Vec<SubId> = small.iter().copied().chain(pick(&an.strata.max, &b)).collect();
        let y1 = SubgroupSet::new(an.snap.group(), Level::Max, small);
        let y2 = SubgroupSet::new(an.snap.group(), Level::Max, big);
        prop_assert!(ctx.phi(&y1).unwrap().is_subset(&ctx.phi(&y2).unwrap()));
    }

    #[test]
    fn contraction_and_extension_form_a_lattice(a in prop::collection::vec(any::<bool>(), 1..40), b in prop::collection::vec(any::<bool>(), 1..40)) {
        let an = &**S5;
        let g = an.snap.group();
        let y = SubgroupSet::new(g, Level::Max2, pick(&an.strata.max2, &a));
        let z = SubgroupSet::new(g, Level::Max2, pick(&an.strata.max2, &b));
        prop_assert_eq!(y.contract(&z).unwrap(), z.contract(&y).unwrap());
        prop_assert_eq!(y.extend(&z).unwrap(), z.extend(&y).unwrap());
        prop_assert_eq!(y.contract(&y).unwrap(), y.clone());
        prop_assert_eq!(y.contract(&y.extend(&z).unwrap()).unwrap(), y.clone());
        prop_assert_eq!(y.extend(&y.contract(&z).unwrap()).unwrap(), y.clone());
        prop_assert!(y.contract(&z).unwrap().is_subset(&y));
        prop_assert!(y.is_subset(&y.extend(&z).unwrap()));
    }

    #[test]
    fn expressions_reparse_to_the_same_tree(e in expr()) {
        let text = e.render();
        prop_assert_eq!(FunctorExpr::parse(&text).unwrap(), e);
    }
}
