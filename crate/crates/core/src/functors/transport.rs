//! Moving subgroup sets to quotient groups.

use serde::{Deserialize, Serialize};

use super::dsl::{Caret, FunctorExpr};
use super::sets::{Atom, FunctorContext, SubgroupSet};
use super::theorems::PIPELINES;
use crate::error::{Error, Result};
use crate::lattice::{LatticeSnapshot, SubId};
use crate::perm::{ElemSet, Group, Homomorphism};

/// `G/N` realized as a permutation group, with the projection.
#[derive(Clone)]
pub struct Quotient {
    pub group: Group,
    pub hom: Homomorphism,
    pub kernel: SubId,
}

/// `G/N` acting on the cosets of the largest subgroup whose core is `N`.
pub fn small_quotient(snap: &LatticeSnapshot, n: SubId) -> Result<Quotient> {
    if !snap.class_of(n).is_normal() {
        return Err(Error::NotNormal);
    }
    let g = snap.group();
    let name = format!("{}/{}", g.name().unwrap_or("G"), snap.order(n));
    if n == snap.trivial_id() {
        let hom = Homomorphism::identity(g)?;
        return Ok(Quotient {
            group: g.clone(),
            hom,
            kernel: n,
        });
    }
    let k = snap
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.core_class == n.class as usize)
        .max_by(|a, b| a.1.order.cmp(&b.1.order).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .expect("the normal subgroup is its own core");
    let hom = Homomorphism::on_cosets(g, &[&snap.class(k).rep])?;
    Ok(Quotient {
        group: hom.codomain().clone().named(name),
        hom,
        kernel: n,
    })
}

/// A transported set and the number of members that did not contain the kernel.
#[derive(Clone, Debug)]
pub struct Transported {
    pub set: SubgroupSet,
    pub dropped: usize,
}

/// Images in `G/L` of the members of `y` that contain `L`.
pub fn transport_to_quotient(
    snap: &LatticeSnapshot,
    y: &SubgroupSet,
    q: &Quotient,
    qsnap: &LatticeSnapshot,
) -> Result<Transported> {
    if !y.ambient().same_as(snap.group()) || !q.hom.domain().same_as(snap.group()) {
        return Err(Error::MixedAmbient);
    }
    if !qsnap.group().same_as(&q.group) {
        return Err(Error::MixedAmbient);
    }
    let qorder = qsnap.table().order();
    let mut members = Vec::new();
    let mut dropped = 0;
    for id in y.iter() {
        if !snap.contains(id, q.kernel) {
            dropped += 1;
            continue;
        }
        let img = ElemSet::from_indices(qorder, snap.set(id).iter().map(|x| q.hom.map_index(x)));
        members.push(qsnap.id_of(&img).expect("image of a subgroup is a subgroup"));
    }
    Ok(Transported {
        set: SubgroupSet::new(qsnap.group(), y.level(), members),
        dropped,
    })
}

/// Comparison of a base set on `G/L` with the transported base set of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub atom: Atom,
    pub holds: bool,
    pub quotient_size: usize,
    pub transported_size: usize,
    pub dropped: usize,
}

pub fn quotient_identities(
    ctx: &FunctorContext<'_>,
    qctx: &FunctorContext<'_>,
    q: &Quotient,
) -> Result<Vec<IdentityCheck>> {
    Atom::ALL
        .iter()
        .map(|&atom| {
            let tr = transport_to_quotient(ctx.snap, &ctx.base_set(atom), q, qctx.snap)?;
            let direct = qctx.base_set(atom);
            Ok(IdentityCheck {
                atom,
                holds: tr.set == direct,
                quotient_size: direct.len(),
                transported_size: tr.set.len(),
                dropped: tr.dropped,
            })
        })
        .collect()
}

/// Whether a pipeline empty on `G` stays empty on `G/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCheck {
    pub pipeline: String,
    pub caret: Caret,
    pub empty_on_group: bool,
    pub empty_on_quotient: bool,
}

impl EmptinessCheck {
    pub fn holds(&self) -> bool {
        !self.empty_on_group || self.empty_on_quotient
    }
}

pub fn emptiness_transport(
    ctx: &FunctorContext<'_>,
    qctx: &FunctorContext<'_>,
    caret: Caret,
) -> Result<Vec<EmptinessCheck>> {
    PIPELINES
        .iter()
        .map(|p| {
            let e: FunctorExpr = p.expr();
            Ok(EmptinessCheck {
                pipeline: p.id.to_string(),
                caret,
                empty_on_group: e.eval(ctx, caret)?.is_empty(),
                empty_on_quotient: e.eval(qctx, caret)?.is_empty(),
            })
        })
        .collect()
}
