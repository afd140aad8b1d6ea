//! The order-reversing behaviour of the generating morphism on two pairs of
//! pipelines: set meet/join on one side, class meet and formation product on
//! the other.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::dsl::{Caret, FunctorExpr};
use super::sets::FunctorContext;
use super::theorems::TargetKind;
use crate::classes::{class_join_membership, class_meet, member, ClassId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExampleId {
    /// a = Φ(X)_L1, b = Φ(X)_L1_S.
    E61,
    /// a = Φ(X)_L1, b = Pci.(Φ(X)_L1^E1).
    E62,
}

impl ExampleId {
    pub const ALL: [ExampleId; 2] = [ExampleId::E61, ExampleId::E62];

    pub fn pipelines(self) -> (&'static str, &'static str) {
        match self {
            ExampleId::E61 => ("Phi(X)_L1", "Phi(X)_L1_S"),
            ExampleId::E62 => ("Phi(X)_L1", "Pci.(Phi(X)_L1^E1)"),
        }
    }

    /// Classes assigned to `a` and `b`.
    pub fn targets(self) -> (TargetKind, TargetKind) {
        match self {
            ExampleId::E61 => (TargetKind::F1, TargetKind::F2),
            ExampleId::E62 => (TargetKind::F1, TargetKind::Fdoubleprime),
        }
    }

    pub fn parse(s: &str) -> Result<ExampleId> {
        match s {
            "6.1" | "E61" => Ok(ExampleId::E61),
            "6.2" | "E62" => Ok(ExampleId::E62),
            _ => Err(Error::Unknown {
                kind: "example",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleId::E61 => "6.1",
            ExampleId::E62 => "6.2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntihomReport {
    pub example: ExampleId,
    pub prime: u64,
    pub a_size: usize,
    pub b_size: usize,
    /// b ⊆ a, so a ∧ b = b and a ∨ b = a.
    pub b_subset_a: bool,
    pub in_class_a: bool,
    pub in_class_b: bool,
    /// G ∈ g(a)g(b) (formation product).
    pub in_product: bool,
    /// G ∈ g(a) ∩ g(b).
    pub in_meet: bool,
}

impl AntihomReport {
    /// g(a ∧ b) = g(a) ∨ g(b) on this group.
    pub fn meet_identity(&self) -> bool {
        self.in_class_b == self.in_product
    }

    /// g(a ∨ b) = g(a) ∧ g(b) on this group.
    pub fn join_identity(&self) -> bool {
        self.in_class_a == self.in_meet
    }

    pub fn holds(&self) -> bool {
        self.b_subset_a && self.meet_identity() && self.join_identity()
    }
}

/// Checks one example on one group with the given classes for `a` and `b`.
pub fn antihom_check(
    ctx: &FunctorContext<'_>,
    example: ExampleId,
    caret: Caret,
    class_a: &ClassId,
    class_b: &ClassId,
) -> Result<AntihomReport> {
    let (ta, tb) = example.pipelines();
    let a = FunctorExpr::parse(ta)?.eval(ctx, caret)?;
    let b = FunctorExpr::parse(tb)?.eval(ctx, caret)?;
    let snap = ctx.snap;
    let g = snap.whole_id();
    Ok(AntihomReport {
        example,
        prime: ctx.p,
        a_size: a.len(),
        b_size: b.len(),
        b_subset_a: b.is_subset(&a),
        in_class_a: member(snap, g, class_a)?,
        in_class_b: member(snap, g, class_b)?,
        in_product: class_join_membership(snap, class_a, class_b)?,
        in_meet: member(snap, g, &class_meet(class_a.clone(), class_b.clone()))?,
    })
}
