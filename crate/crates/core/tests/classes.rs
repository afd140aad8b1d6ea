mod common;

use common::Brute;
use maxsub::classes::{class_membership, formation_axiom_check, member, residual, ClassId};
use maxsub::harness::{named_group, Engine, DEFAULT_SPECS};

fn raw_classes(p: u64) -> Vec<ClassId> {
    vec![
        ClassId::Jpr,
        ClassId::J(p),
        ClassId::Fprime(p),
        ClassId::Fdoubleprime(p),
        ClassId::F1(p),
        ClassId::F2(p),
    ]
}

#[test]
fn solvability_matches_brute_force() {
    let e = Engine::default();
    for spec in DEFAULT_SPECS.iter().filter(|s| named_group(s).unwrap().order() <= 200) {
        let g = named_group(spec).unwrap();
        let a = e.analyze(&g).unwrap();
        let b = Brute::new(g.generators());
        let in_class = member(&a.snap, a.snap.whole_id(), &ClassId::Solvable).unwrap();
        assert_eq!(in_class, b.is_solvable(b.whole()), "{spec}");
    }
}

#[test]
fn solvable_groups_lie_in_every_class() {
    let e = Engine::default();
    for spec in [
        "sym(4)",
        "dihedral(16)",
        "product(sym(3), sym(4))",
        "product(cyclic(3), dihedral(10))",
    ] {
        let a = e.analyze(&named_group(spec).unwrap()).unwrap();
        for p in [2, 3, 5, 7] {
            for c in raw_classes(p) {
                assert!(class_membership(&a.snap, &c).unwrap().member, "{spec} {c}");
                assert!(
                    class_membership(&a.snap, &c.clone().hat_with([])).unwrap().member,
                    "{spec} hat {c}"
                );
            }
        }
    }
}

#[test]
fn a5_memberships() {
    let e = Engine::default();
    let a = e.analyze(&named_group("alt(5)").unwrap()).unwrap();
    let m = |c: ClassId| class_membership(&a.snap, &c).unwrap().member;
    assert!(m(ClassId::Jpr));
    assert!(!m(ClassId::Solvable));
    assert!(m(ClassId::Jpr.hat_with([60])));
    assert!(!m(ClassId::Jpr.hat_with([168])));
    assert!(m(ClassId::F1(7)));
    assert!(!m(ClassId::F1(7).hat_with([])));
}

#[test]
fn residuals() {
    let e = Engine::default();
    for (spec, order) in [
        ("sym(5)", 60),
        ("product(cyclic(2), alt(5))", 60),
        ("sym(4)", 1),
        ("alt(5)", 60),
    ] {
        let a = e.analyze(&named_group(spec).unwrap()).unwrap();
        let r = residual(&a.snap, &ClassId::Solvable).unwrap();
        assert_eq!(a.snap.order(r), order, "{spec}");
    }
}

#[test]
fn solvable_is_a_formation_everywhere() {
    let e = Engine::default();
    for spec in [
        "sym(5)",
        "product(sym(3), alt(5))",
        "product(alt(4), alt(5))",
        "product(cyclic(2), psl2(7))",
    ] {
        let a = e.analyze(&named_group(spec).unwrap()).unwrap();
        let audit = formation_axiom_check(&a.snap, &ClassId::Solvable).unwrap();
        assert_eq!(audit.violations(), 0, "{spec}: {audit:?}");
        assert!(audit.normal_subgroups >= 2);
    }
}

#[test]
fn class_names_round_trip() {
    for text in [
        "Solvable",
        "Jpr",
        "J(3)",
        "Fprime(5)",
        "Fdoubleprime(11)",
        "F1(2)",
        "F2(7)",
        "F1Set(60,168)",
        "Hat(F1(2);60,168)",
    ] {
        let c: ClassId = text.parse().unwrap();
        assert_eq!(c.to_string(), text);
    }
    assert_eq!(ClassId::parse("J", Some(5)).unwrap(), ClassId::J(5));
    assert!(ClassId::parse("J(4)", None).is_err());
    assert!(ClassId::parse("F1Set(61)", None).is_err());
    assert!(ClassId::parse("Nope", None).is_err());
}
