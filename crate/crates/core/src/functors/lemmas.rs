//! Exhaustive checks of the structural lemmas the pipeline theorems rely on.

use serde::{Deserialize, Serialize};

use crate::arith::prime_power_base;
use crate::lattice::{LatticeSnapshot, Strata, SubId};

/// Outcome of the core criterion for solvability on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSolvability {
    pub solvable: bool,
    /// Every H in Max₂(G) lies in some M ∈ Max(G,H) with H_G < M_G.
    pub criterion: bool,
    /// The same condition over Max₂*(G) only.
    pub strict_criterion: bool,
    /// A second maximal subgroup where the condition fails.
    pub failing: Option<SubId>,
}

impl CoreSolvability {
    pub fn agrees(&self) -> bool {
        self.solvable == self.criterion && self.solvable == self.strict_criterion
    }
}

pub fn core_solvability(snap: &LatticeSnapshot, strata: &Strata) -> CoreSolvability {
    let core = |id: SubId| snap.class_of(id).core_class;
    let ok: Vec<bool> = strata
        .max2
        .iter()
        .enumerate()
        .map(|(i, &h)| strata.over_ids(i).any(|m| core(h) != core(m)))
        .collect();
    let failing = ok.iter().position(|&b| !b).map(|i| strata.max2[i]);
    CoreSolvability {
        solvable: snap.class_of(snap.whole_id()).solvable,
        criterion: failing.is_none(),
        strict_criterion: ok.iter().zip(strata.strict.iter()).all(|(&b, &s)| b || !s),
        failing,
    }
}

/// Triples (H, X, N) with H ∈ Max₂(G), X ∈ Max(G,H), N ◁ G, N ≤ X, N ≰ H.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XhnReport {
    pub triples: usize,
    /// Triples with X ≠ HN.
    pub counterexamples: Vec<[SubId; 3]>,
}

pub fn xhn_scan(snap: &LatticeSnapshot, strata: &Strata) -> XhnReport {
    let normals: Vec<SubId> = snap.normal_ids();
    let mut report = XhnReport::default();
    for (i, &h) in strata.max2.iter().enumerate() {
        let hs = snap.set(h);
        for x in strata.over_ids(i) {
            for &n in &normals {
                if !snap.contains(x, n) || snap.contains(h, n) {
                    continue;
                }
                report.triples += 1;
                let meet = hs.intersection(snap.set(n)).len();
                // |HN| = |H||N|/|H ∩ N|, and HN ≤ X already.
                if snap.order(h) * snap.order(n) / meet != snap.order(x) {
                    report.counterexamples.push([h, x, n]);
                }
            }
        }
    }
    report
}

/// A minimal normal L with two maximal classes avoiding L whose indices are
/// powers of different primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LIndexInstance {
    pub l: SubId,
    pub l_order: usize,
    pub abelian: bool,
    /// Order of the simple direct factor when L is nonabelian.
    pub simple_order: Option<u64>,
    pub indices: (u128, u128),
    /// L is abelian or a power of the simple group of order 168.
    pub consistent: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LIndexReport {
    pub minimal_normals: usize,
    pub instances: Vec<LIndexInstance>,
}

impl LIndexReport {
    pub fn counterexamples(&self) -> usize {
        self.instances.iter().filter(|i| !i.consistent).count()
    }
}

/// Order of the simple group of order 168.
pub const PSL27_ORDER: u64 = 168;

pub fn minimal_normal_ids(snap: &LatticeSnapshot) -> Vec<SubId> {
    let normals: Vec<SubId> = snap
        .normal_ids()
        .into_iter()
        .filter(|&n| n != snap.trivial_id())
        .collect();
    normals
        .iter()
        .copied()
        .filter(|&n| !normals.iter().any(|&m| m != n && snap.contains(n, m)))
        .collect()
}

pub fn l_index_scan(snap: &LatticeSnapshot) -> LIndexReport {
    let minimal = minimal_normal_ids(snap);
    let maxes: Vec<SubId> = snap
        .maximal_classes()
        .into_iter()
        .map(|c| SubId {
            class: c as u32,
            member: 0,
        })
        .collect();
    let mut report = LIndexReport {
        minimal_normals: minimal.len(),
        instances: Vec::new(),
    };
    for &l in &minimal {
        let cls = snap.class_of(l);
        let avoid: Vec<(u128, u64)> = maxes
            .iter()
            .filter(|&&m| !snap.contains(m, l))
            .filter_map(|&m| {
                let idx = snap.index(m);
                prime_power_base(idx).map(|q| (idx, q))
            })
            .collect();
        for (a, &(i1, q1)) in avoid.iter().enumerate() {
            for &(i2, q2) in &avoid[a + 1..] {
                if q1 == q2 {
                    continue;
                }
                let simple_order = cls.nonabelian.first().map(|t| t.order());
                report.instances.push(LIndexInstance {
                    l,
                    l_order: cls.order,
                    abelian: cls.solvable,
                    simple_order,
                    indices: (i1.min(i2), i1.max(i2)),
                    consistent: cls.solvable || simple_order == Some(PSL27_ORDER),
                });
            }
        }
    }
    report
}
