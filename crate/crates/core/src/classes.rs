//! Group classes defined through maximal subgroups, their extension-formation
//! closures, class products and formation-axiom audits.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power_base};
use crate::error::{Error, Result};
use crate::lattice::{LatticeSnapshot, SubId};
use crate::structure::{p_solvable_from_types, SimpleTypeId};

/// Where the simple groups of an extension formation come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AllowPolicy {
    /// Listed explicitly (orders of nonabelian simple groups).
    Explicit(BTreeSet<u64>),
    /// To be filled from the corpus.
    CorpusScan,
    /// Filled from the named corpus by a scan.
    Scanned { corpus: String, orders: BTreeSet<u64> },
}

impl AllowPolicy {
    pub fn orders(&self) -> Option<&BTreeSet<u64>> {
        match self {
            AllowPolicy::Explicit(s) | AllowPolicy::Scanned { orders: s, .. } => Some(s),
            AllowPolicy::CorpusScan => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    Solvable,
    Jpr,
    J(u64),
    Fprime(u64),
    Fdoubleprime(u64),
    F1(u64),
    F2(u64),
    /// Groups whose nonabelian chief factors are powers of the listed simple groups.
    F1Set(BTreeSet<u64>),
    Hat(Box<ClassId>, AllowPolicy),
    Meet(Box<ClassId>, Box<ClassId>),
}

impl ClassId {
    pub fn prime(&self) -> Option<u64> {
        match self {
            ClassId::J(p) | ClassId::Fprime(p) | ClassId::Fdoubleprime(p) | ClassId::F1(p) | ClassId::F2(p) => Some(*p),
            ClassId::Hat(b, _) => b.prime(),
            _ => None,
        }
    }

    /// Defined through maximal subgroups (as opposed to chief factors).
    pub fn is_raw(&self) -> bool {
        match self {
            ClassId::Solvable | ClassId::F1Set(_) | ClassId::Hat(..) => false,
            ClassId::Meet(a, b) => a.is_raw() || b.is_raw(),
            _ => true,
        }
    }

    pub fn hat(self) -> ClassId {
        ClassId::Hat(Box::new(self), AllowPolicy::CorpusScan)
    }

    pub fn hat_with(self, orders: impl IntoIterator<Item = u64>) -> ClassId {
        ClassId::Hat(Box::new(self), AllowPolicy::Explicit(orders.into_iter().collect()))
    }

    /// Parses a class name, filling a missing prime parameter with `default_p`.
    pub fn parse(text: &str, default_p: Option<u64>) -> Result<ClassId> {
        let s = text.trim();
        let err = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg} in class `{s}`"),
        };
        let (head, arg) = match s.find('(') {
            Some(i) => {
                if !s.ends_with(')') {
                    return Err(err("missing `)`"));
                }
                (&s[..i], Some(&s[i + 1..s.len() - 1]))
            }
            None => (s, None),
        };
        let prime = |arg: Option<&str>| -> Result<u64> {
            let p = match arg {
                Some(a) if !a.trim().is_empty() => a.trim().parse::<u64>().map_err(|_| err("bad prime"))?,
                _ => default_p.ok_or_else(|| err("missing prime"))?,
            };
            if is_prime(p) {
                Ok(p)
            } else {
                Err(Error::NotPrime(p))
            }
        };
        let orders = |a: &str| -> Result<BTreeSet<u64>> {
            a.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    let o = x.trim().parse::<u64>().map_err(|_| err("bad order"))?;
                    SimpleTypeId::nonabelian(o).map(|t| t.order())
                })
                .collect()
        };
        Ok(match head.trim() {
            "Solvable" | "S" => ClassId::Solvable,
            "Jpr" => ClassId::Jpr,
            "J" => ClassId::J(prime(arg)?),
            "Fprime" => ClassId::Fprime(prime(arg)?),
            "Fdoubleprime" => ClassId::Fdoubleprime(prime(arg)?),
            "F1" => ClassId::F1(prime(arg)?),
            "F2" => ClassId::F2(prime(arg)?),
            "F1Set" => ClassId::F1Set(orders(arg.unwrap_or(""))?),
            "Hat" => {
                let a = arg.ok_or_else(|| err("missing base"))?;
                match a.split_once(';') {
                    Some((base, list)) => hat_of(ClassId::parse(base, default_p)?, Some(orders(list)?)),
                    None => hat_of(ClassId::parse(a, default_p)?, None),
                }
            }
            other => {
                return Err(Error::Unknown {
                    kind: "class",
                    name: other.to_string(),
                })
            }
        })
    }
}

fn hat_of(base: ClassId, orders: Option<BTreeSet<u64>>) -> ClassId {
    match orders {
        Some(o) => ClassId::Hat(Box::new(base), AllowPolicy::Explicit(o)),
        None => ClassId::Hat(Box::new(base), AllowPolicy::CorpusScan),
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ClassId::Solvable => write!(f, "Solvable"),
            ClassId::Jpr => write!(f, "Jpr"),
            ClassId::J(p) => write!(f, "J({p})"),
            ClassId::Fprime(p) => write!(f, "Fprime({p})"),
            ClassId::Fdoubleprime(p) => write!(f, "Fdoubleprime({p})"),
            ClassId::F1(p) => write!(f, "F1({p})"),
            ClassId::F2(p) => write!(f, "F2({p})"),
            ClassId::F1Set(s) => write!(f, "F1Set({})", list(s)),
            ClassId::Hat(b, AllowPolicy::CorpusScan) => write!(f, "Hat({b})"),
            ClassId::Hat(b, AllowPolicy::Explicit(s)) => write!(f, "Hat({b};{})", list(s)),
            ClassId::Hat(b, AllowPolicy::Scanned { orders, .. }) => write!(f, "Hat({b};{})", list(orders)),
            ClassId::Meet(a, b) => write!(f, "Meet({a},{b})"),
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassId::parse(s, None)
    }
}

/// One disjunct of a maximal-subgroup condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Disjunct {
    Solvable,
    PSolvable,
    MinimalNonSolvable,
    MinimalNonPSolvable,
    PrimePowerIndex,
}

/// What held for one conjugacy class of maximal subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub order: usize,
    pub index: u128,
    pub class_size: usize,
    pub solvable: bool,
    pub p_solvable: Option<bool>,
    pub minimal_non_solvable: bool,
    pub minimal_non_p_solvable: Option<bool>,
    /// The prime `q` when the index is a power of `q`.
    pub prime_power_index: Option<u64>,
    /// Disjuncts of the evaluated class that held.
    pub holds: Vec<Disjunct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub evidence: Vec<Evidence>,
}

fn disjuncts(c: &ClassId) -> Option<(&'static [Disjunct], Option<u64>)> {
    use Disjunct::*;
    Some(match c {
        ClassId::Jpr => (&[Solvable, PrimePowerIndex], None),
        ClassId::J(p) => (&[PSolvable, PrimePowerIndex], Some(*p)),
        ClassId::Fprime(p) => (&[PSolvable, MinimalNonSolvable, PrimePowerIndex], Some(*p)),
        ClassId::Fdoubleprime(p) => (&[PSolvable, MinimalNonPSolvable, PrimePowerIndex], Some(*p)),
        ClassId::F1(p) => (&[PSolvable], Some(*p)),
        ClassId::F2(p) => (&[PSolvable, MinimalNonPSolvable], Some(*p)),
        _ => return None,
    })
}

fn check_prime(c: &ClassId) -> Result<()> {
    match c.prime() {
        Some(p) if !is_prime(p) => Err(Error::NotPrime(p)),
        _ => Ok(()),
    }
}

/// Evaluates a maximal-subgroup class on the subgroup `h` of the snapshot's
/// group, with one evidence record per conjugacy class (within `h`) of
/// maximal subgroups of `h`.
pub fn raw_membership(snap: &LatticeSnapshot, h: SubId, c: &ClassId) -> Result<Membership> {
    check_prime(c)?;
    let (ds, p) = disjuncts(c).ok_or(Error::LevelMismatch {
        expected: "class defined through maximal subgroups",
        found: "chief-factor class",
    })?;
    let h_order = snap.order(h) as u128;
    let maxes = snap.max_of(h);
    // Group by ambient class and index; conjugacy within `h` refines this, but
    // every recorded property is invariant under conjugation in the ambient group.
    let mut evidence: Vec<Evidence> = Vec::new();
    let mut keys: Vec<u32> = Vec::new();
    for m in maxes {
        if let Some(pos) = keys.iter().position(|&k| k == m.class) {
            evidence[pos].class_size += 1;
            continue;
        }
        keys.push(m.class);
        let cls = snap.class_of(m);
        let index = h_order / cls.order as u128;
        let ppi = prime_power_base(index);
        let mns = snap.is_minimal_non_solvable(m);
        let psolv = p.map(|p| cls.is_p_solvable(p));
        let mnps = p.map(|p| snap.is_minimal_non_p_solvable(m, p));
        let holds: Vec<Disjunct> = ds
            .iter()
            .copied()
            .filter(|d| match d {
                Disjunct::Solvable => cls.solvable,
                Disjunct::PSolvable => psolv == Some(true),
                Disjunct::MinimalNonSolvable => mns,
                Disjunct::MinimalNonPSolvable => mnps == Some(true),
                Disjunct::PrimePowerIndex => ppi.is_some(),
            })
            .collect();
        evidence.push(Evidence {
            order: cls.order,
            index,
            class_size: 1,
            solvable: cls.solvable,
            p_solvable: psolv,
            minimal_non_solvable: mns,
            minimal_non_p_solvable: mnps,
            prime_power_index: ppi,
            holds,
        });
    }
    let member = evidence.iter().all(|e| !e.holds.is_empty());
    Ok(Membership { member, evidence })
}

/// Whether all listed nonabelian types are allowed.
fn types_allowed(types: &[SimpleTypeId], allowed: &BTreeSet<u64>) -> bool {
    types.iter().all(|t| t.is_abelian() || allowed.contains(&t.order()))
}

fn resolved_orders(policy: &AllowPolicy) -> Result<&BTreeSet<u64>> {
    policy
        .orders()
        .ok_or_else(|| Error::Config("allowlist has not been scanned from a corpus".into()))
}

/// Membership of the subgroup `h` of the snapshot's group.
pub fn member(snap: &LatticeSnapshot, h: SubId, c: &ClassId) -> Result<bool> {
    let types = &snap.class_of(h).nonabelian;
    match c {
        ClassId::Solvable => Ok(snap.class_of(h).solvable),
        ClassId::F1Set(s) => Ok(types_allowed(types, s)),
        ClassId::Hat(_, policy) => Ok(types_allowed(types, resolved_orders(policy)?)),
        ClassId::Meet(a, b) => Ok(member(snap, h, a)? && member(snap, h, b)?),
        _ => Ok(raw_membership(snap, h, c)?.member),
    }
}

/// Membership of the whole group.
pub fn class_membership(snap: &LatticeSnapshot, c: &ClassId) -> Result<Membership> {
    let g = snap.whole_id();
    if c.is_raw() && !matches!(c, ClassId::Meet(..)) {
        return raw_membership(snap, g, c);
    }
    Ok(Membership {
        member: member(snap, g, c)?,
        evidence: Vec::new(),
    })
}

/// Membership of `G/N` for a class defined through chief factors, computed
/// from the chief factors of `G` above `N`.
pub fn quotient_member_by_factors(snap: &LatticeSnapshot, n: SubId, c: &ClassId) -> Result<bool> {
    let types = snap.quotient_types(snap.whole_id(), n);
    match c {
        ClassId::Solvable => Ok(types.is_empty()),
        ClassId::F1Set(s) => Ok(types_allowed(&types, s)),
        ClassId::Hat(_, policy) => Ok(types_allowed(&types, resolved_orders(policy)?)),
        ClassId::Meet(a, b) => Ok(quotient_member_by_factors(snap, n, a)? && quotient_member_by_factors(snap, n, b)?),
        _ => Err(Error::LevelMismatch {
            expected: "chief-factor class",
            found: "class defined through maximal subgroups",
        }),
    }
}

/// Least normal subgroup with quotient in the class, where `in_class(n)`
/// decides membership of the quotient by `n`.
pub fn residual_with<F>(snap: &LatticeSnapshot, mut in_class: F) -> Result<SubId>
where
    F: FnMut(SubId) -> Result<bool>,
{
    let mut minimal: Vec<SubId> = Vec::new();
    let mut normals = snap.normal_ids();
    normals.sort_by_key(|&n| snap.order(n));
    for n in normals {
        if minimal.iter().any(|&m| snap.contains(n, m)) {
            continue;
        }
        if in_class(n)? {
            minimal.push(n);
        }
    }
    // The whole group always has trivial quotient, so candidates exist
    // whenever the trivial group is a member.
    match minimal.len() {
        1 => Ok(minimal[0]),
        k => Err(Error::NonUniqueMinimal(k)),
    }
}

/// Residual for a chief-factor class.
pub fn residual(snap: &LatticeSnapshot, c: &ClassId) -> Result<SubId> {
    residual_with(snap, |n| quotient_member_by_factors(snap, n, c))
}

/// Formation product membership: the `c2`-residual lies in `c1`.
pub fn class_join_membership(snap: &LatticeSnapshot, c1: &ClassId, c2: &ClassId) -> Result<bool> {
    let r = residual(snap, c2)?;
    member(snap, r, c1)
}

pub fn class_meet(c1: ClassId, c2: ClassId) -> ClassId {
    ClassId::Meet(Box::new(c1), Box::new(c2))
}

pub fn minimal_non_solvable(snap: &LatticeSnapshot) -> bool {
    snap.is_minimal_non_solvable(snap.whole_id())
}

pub fn minimal_non_p_solvable(snap: &LatticeSnapshot, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(snap.is_minimal_non_p_solvable(snap.whole_id(), p))
}

/// Nonabelian composition factor orders over all groups that satisfy `base`.
pub fn allowlist_scan<'a>(
    snaps: impl IntoIterator<Item = &'a LatticeSnapshot>,
    base: &ClassId,
) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for snap in snaps {
        let g = snap.whole_id();
        if member(snap, g, base)? {
            out.extend(snap.class_of(g).nonabelian.iter().map(|t| t.order()));
        }
    }
    Ok(out)
}

/// Parses an allowlist file: one `<order> <label>` pair per line.
pub fn parse_allowlist(text: &str) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let order_text = line.split_whitespace().next().unwrap_or("");
        let order: u64 = order_text.parse().map_err(|_| Error::Parse {
            pos: lineno + 1,
            msg: format!("expected an order, found `{order_text}`"),
        })?;
        out.insert(SimpleTypeId::nonabelian(order)?.order());
    }
    Ok(out)
}

pub fn render_allowlist(orders: &BTreeSet<u64>) -> String {
    orders
        .iter()
        .map(|&o| format!("{o} {}\n", SimpleTypeId::NonAbelian(o).label()))
        .collect()
}

/// Evaluates a maximal-subgroup class on `G/N` through the maximal subgroups
/// of `G` that contain the normal subgroup `n`.
pub fn quotient_raw_membership(snap: &LatticeSnapshot, n: SubId, c: &ClassId) -> Result<Membership> {
    if !snap.class_of(n).is_normal() {
        return Err(Error::NotNormal);
    }
    if n == snap.trivial_id() {
        return raw_membership(snap, snap.whole_id(), c);
    }
    check_prime(c)?;
    let (ds, p) = disjuncts(c).ok_or(Error::LevelMismatch {
        expected: "class defined through maximal subgroups",
        found: "chief-factor class",
    })?;
    let g_order = snap.order(snap.whole_id()) as u128;
    let mut evidence = Vec::new();
    for mc in snap.maximal_classes() {
        let m = SubId {
            class: mc as u32,
            member: 0,
        };
        if !snap.contains(m, n) {
            continue;
        }
        let cls = snap.class(mc);
        let types = snap.quotient_types(m, n);
        let solvable = types.is_empty();
        let psolv = p.map(|p| p_solvable_from_types(&types, p));
        let inner: Vec<Vec<SimpleTypeId>> = if solvable {
            Vec::new()
        } else {
            snap.max_of(m)
                .into_iter()
                .filter(|&k| snap.contains(k, n))
                .map(|k| snap.quotient_types(k, n))
                .collect()
        };
        let mns = !solvable && inner.iter().all(|ty| ty.is_empty());
        let mnps = p.map(|p| psolv == Some(false) && inner.iter().all(|ty| p_solvable_from_types(ty, p)));
        let index = g_order / cls.order as u128;
        let ppi = prime_power_base(index);
        let holds: Vec<Disjunct> = ds
            .iter()
            .copied()
            .filter(|d| match d {
                Disjunct::Solvable => solvable,
                Disjunct::PSolvable => psolv == Some(true),
                Disjunct::MinimalNonSolvable => mns,
                Disjunct::MinimalNonPSolvable => mnps == Some(true),
                Disjunct::PrimePowerIndex => ppi.is_some(),
            })
            .collect();
        evidence.push(Evidence {
            order: cls.order / snap.order(n),
            index,
            class_size: cls.size(),
            solvable,
            p_solvable: psolv,
            minimal_non_solvable: mns,
            minimal_non_p_solvable: mnps,
            prime_power_index: ppi,
            holds,
        });
    }
    let member = evidence.iter().all(|e| !e.holds.is_empty());
    Ok(Membership { member, evidence })
}

/// Membership of `G/N` for any class.
pub fn quotient_member(snap: &LatticeSnapshot, n: SubId, c: &ClassId) -> Result<bool> {
    match c {
        ClassId::Solvable | ClassId::F1Set(_) | ClassId::Hat(..) => quotient_member_by_factors(snap, n, c),
        ClassId::Meet(a, b) => Ok(quotient_member(snap, n, a)? && quotient_member(snap, n, b)?),
        _ => Ok(quotient_raw_membership(snap, n, c)?.member),
    }
}

/// Outcome of testing the formation axioms of a class on one group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormationAudit {
    pub class: String,
    pub normal_subgroups: usize,
    /// Normal `N` with `G` in the class and `G/N` outside it.
    pub quotient_violations: Vec<SubId>,
    /// Pairs with both quotients in the class and `G/(N₁ ∩ N₂)` outside it.
    pub r0_violations: Vec<(SubId, SubId)>,
    /// Normal `N` with `N` and `G/N` in the class and `G` outside it
    /// (checked for chief-factor classes only).
    pub extension_violations: Vec<SubId>,
}

impl FormationAudit {
    pub fn violations(&self) -> usize {
        self.quotient_violations.len() + self.r0_violations.len() + self.extension_violations.len()
    }
}

pub fn formation_axiom_check(snap: &LatticeSnapshot, c: &ClassId) -> Result<FormationAudit> {
    let normals = snap.normal_ids();
    let in_class: Vec<bool> = normals
        .iter()
        .map(|&n| quotient_member(snap, n, c))
        .collect::<Result<_>>()?;
    let g_member = in_class[0];
    let mut audit = FormationAudit {
        class: c.to_string(),
        normal_subgroups: normals.len(),
        ..Default::default()
    };
    if g_member {
        audit.quotient_violations = normals
            .iter()
            .zip(in_class.iter())
            .filter(|(_, &m)| !m)
            .map(|(&n, _)| n)
            .collect();
    }
    let pos: std::collections::HashMap<SubId, usize> = normals.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            if !(in_class[i] && in_class[j]) {
                continue;
            }
            let meet = snap.set(normals[i]).intersection(snap.set(normals[j]));
            let k = snap.id_of(&meet).expect("intersection of subgroups is a subgroup");
            if !in_class[pos[&k]] {
                audit.r0_violations.push((normals[i], normals[j]));
            }
        }
    }
    if !c.is_raw() && !g_member {
        for (i, &n) in normals.iter().enumerate() {
            if in_class[i] && member(snap, n, c)? {
                audit.extension_violations.push(n);
            }
        }
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_round_trip() {
        for s in [
            "Solvable",
            "Jpr",
            "J(7)",
            "Fprime(7)",
            "Fdoubleprime(11)",
            "F1(5)",
            "F2(5)",
            "F1Set(60,168)",
            "Hat(F1(5))",
            "Hat(F2(5);60)",
        ] {
            let c = ClassId::parse(s, None).unwrap();
            assert_eq!(c.to_string(), s);
        }
    }

    #[test]
    fn default_prime_and_errors() {
        assert_eq!(ClassId::parse("J", Some(7)).unwrap(), ClassId::J(7));
        assert_eq!(ClassId::parse("J(9)", None).unwrap_err(), Error::NotPrime(9));
        assert!(ClassId::parse("J", None).is_err());
        assert!(matches!(ClassId::parse("Q(3)", None), Err(Error::Unknown { .. })));
        assert_eq!(
            ClassId::parse("F1Set(61)", None).unwrap_err(),
            Error::UnidentifiableFactor(61)
        );
    }

    #[test]
    fn allowlist_file_round_trip() {
        let s: BTreeSet<u64> = [60, 168].into_iter().collect();
        assert_eq!(parse_allowlist(&render_allowlist(&s)).unwrap(), s);
        assert!(parse_allowlist("abc A5").is_err());
    }
}
