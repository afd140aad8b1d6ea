use std::fs;

use maxsub::harness::{named_group, Analysis, DiskCache, Engine, ALGORITHM_VERSION};
use maxsub::lattice::{LatticeSnapshot, Strata, SubId, DEFAULT_BOUND};
use maxsub::perm::ElemSet;
use maxsub::structure::SimpleTypeId;

type ClassPrint = (
    usize,
    Vec<ElemSet>,
    Vec<u32>,
    bool,
    Vec<SimpleTypeId>,
    usize,
    Vec<SubId>,
);

fn fingerprint(snap: &LatticeSnapshot) -> Vec<ClassPrint> {
    (0..snap.classes().len())
        .map(|c| {
            let cls = snap.class(c);
            (
                cls.order,
                cls.members.clone(),
                cls.conjugators.clone(),
                cls.solvable,
                cls.nonabelian_factors.clone(),
                cls.core_class,
                snap.max_of_rep(c).to_vec(),
            )
        })
        .collect()
}

type StrataPrint = (Vec<SubId>, Vec<SubId>, Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<bool>);

fn strata_print(s: &Strata) -> StrataPrint {
    (
        s.max.clone(),
        s.max2.clone(),
        s.over.clone(),
        s.parents.clone(),
        s.strict.clone(),
    )
}

fn same(a: &Analysis, b: &Analysis) {
    assert_eq!(fingerprint(&a.snap), fingerprint(&b.snap));
    assert_eq!(strata_print(&a.strata), strata_print(&b.strata));
}

fn entry_path(cache: &DiskCache, spec: &str) -> std::path::PathBuf {
    cache
        .dir()
        .join(format!("{}.json", cache.key(&named_group(spec).unwrap())))
}

#[test]
fn round_trip_restores_identical_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = named_group("sym(4)").unwrap();
    let fresh = Engine::default().analyze(&g).unwrap();
    let cold = Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    same(&fresh, &cold);
    assert_eq!(cache.stats().unwrap().entries, 1);
    let warm = Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    same(&fresh, &warm);
    let snap = cache.load(&g).unwrap();
    assert_eq!(fingerprint(&snap), fingerprint(&fresh.snap));
}

#[test]
fn lattice_only_entries_gain_strata() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = named_group("alt(5)").unwrap();
    let e = Engine::new(DEFAULT_BOUND, Some(cache.clone()));
    e.lattice(&g).unwrap();
    let size_before = cache.stats().unwrap().bytes;
    let a = Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    assert!(cache.stats().unwrap().bytes > size_before);
    same(&a, &Engine::default().analyze(&g).unwrap());
}

#[test]
fn version_bump_invalidates_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = named_group("sym(4)").unwrap();
    Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    assert!(cache.load(&g).is_some());
    let bumped = DiskCache::new(dir.path()).with_version(ALGORITHM_VERSION + 1);
    assert!(bumped.load(&g).is_none());
    assert_ne!(bumped.key(&g), cache.key(&g));
}

#[test]
fn corrupt_entries_are_recomputed_and_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = named_group("dihedral(8)").unwrap();
    Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    let path = entry_path(&cache, "dihedral(8)");

    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\"solvable\":[true", "\"solvable\":[false", 1);
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();
    assert!(cache.load(&g).is_none(), "checksum mismatch accepted");

    fs::write(&path, b"{ not json").unwrap();
    assert!(cache.load(&g).is_none());
    let a = Engine::new(DEFAULT_BOUND, Some(cache.clone())).analyze(&g).unwrap();
    same(&a, &Engine::default().analyze(&g).unwrap());
    assert!(cache.load(&g).is_some());
}

#[test]
fn entries_are_keyed_by_generators() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let e = Engine::new(DEFAULT_BOUND, Some(cache.clone()));
    for spec in ["sym(3)", "dihedral(6)", "cyclic(6)"] {
        e.analyze(&named_group(spec).unwrap()).unwrap();
    }
    let stats = cache.stats().unwrap();
    assert_eq!(stats.entries, 3);
    assert_eq!(cache.clear().unwrap(), 3);
    assert_eq!(cache.stats().unwrap().entries, 0);
}
