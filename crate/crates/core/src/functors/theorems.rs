use serde::{Deserialize, Serialize};

use super::dsl::{Caret, FunctorExpr};
use super::sets::FunctorContext;
use crate::classes::{class_membership, ClassId, Evidence};
use crate::error::{Error, Result};

/// Target class of a registered pipeline, before fixing the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetKind {
    F1,
    F2,
    J,
    Fprime,
    Fdoubleprime,
}

impl TargetKind {
    pub fn class(self, p: u64) -> ClassId {
        match self {
            TargetKind::F1 => ClassId::F1(p),
            TargetKind::F2 => ClassId::F2(p),
            TargetKind::J => ClassId::J(p),
            TargetKind::Fprime => ClassId::Fprime(p),
            TargetKind::Fdoubleprime => ClassId::Fdoubleprime(p),
        }
    }
}

/// A registered (pipeline, target) pair.
#[derive(Clone, Copy, Debug)]
pub struct Pipeline {
    pub id: &'static str,
    pub text: &'static str,
    pub target: TargetKind,
}

impl Pipeline {
    pub fn expr(&self) -> FunctorExpr {
        FunctorExpr::parse(self.text).expect("registered pipelines parse")
    }
}

pub const PIPELINES: [Pipeline; 8] = [
    Pipeline {
        id: "T51",
        text: "Phi(X)_L1",
        target: TargetKind::F1,
    },
    Pipeline {
        id: "C52",
        text: "Phi(X)_L2",
        target: TargetKind::F1,
    },
    Pipeline {
        id: "T53",
        text: "Pci.(Phi(X)_L1^E1)",
        target: TargetKind::Fdoubleprime,
    },
    Pipeline {
        id: "T54",
        text: "Pc.(Phi(X)_L2)",
        target: TargetKind::J,
    },
    Pipeline {
        id: "L55",
        text: "Phi(X)_L1_S",
        target: TargetKind::F2,
    },
    Pipeline {
        id: "C56",
        text: "Phi(X)_L2_S",
        target: TargetKind::F2,
    },
    Pipeline {
        id: "T57",
        text: "Pci.(Phi(X)_L1_S^E1)",
        target: TargetKind::Fdoubleprime,
    },
    Pipeline {
        id: "C58",
        text: "Pci.((Phi(X)_L2^E1)_S)",
        target: TargetKind::Fprime,
    },
];

pub fn pipeline(id: &str) -> Result<&'static Pipeline> {
    PIPELINES
        .iter()
        .find(|p| p.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Unknown {
            kind: "pipeline",
            name: id.to_string(),
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    /// The set is empty and the group lies in the target.
    VacuousHolds,
    /// The set is nonempty; nothing is claimed.
    NonVacuous,
    /// The set is empty but the group lies outside the target.
    Violation,
}

/// Why the group misses the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A maximal subgroup satisfying no disjunct; `chain` lists orders from the group down.
    Maximal { chain: Vec<u128>, evidence: Evidence },
    /// A nonabelian chief factor outside the allowlist.
    ChiefFactor { simple_order: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub group: String,
    pub order: u128,
    pub prime: u64,
    pub pipeline: String,
    pub expr: String,
    pub target: String,
    pub caret: Caret,
    pub outcome: Outcome,
    /// The prime does not divide the group order.
    pub degenerate: bool,
    pub set_size: usize,
    pub witness: Option<Witness>,
}

/// Evaluates the pipeline and, when it is empty, tests the target class.
pub fn generating_check(
    ctx: &FunctorContext<'_>,
    pipeline_id: &str,
    expr: &FunctorExpr,
    target: &ClassId,
    caret: Caret,
) -> Result<TheoremVerdict> {
    let set = expr.eval(ctx, caret)?;
    let snap = ctx.snap;
    let g = snap.group();
    let mut verdict = TheoremVerdict {
        group: g.name().unwrap_or("").to_string(),
        order: g.order(),
        prime: ctx.p,
        pipeline: pipeline_id.to_string(),
        expr: expr.render(),
        target: target.to_string(),
        caret,
        outcome: Outcome::NonVacuous,
        degenerate: ctx.degenerate(),
        set_size: set.len(),
        witness: None,
    };
    if !set.is_empty() {
        return Ok(verdict);
    }
    let m = class_membership(snap, target)?;
    if m.member {
        verdict.outcome = Outcome::VacuousHolds;
        return Ok(verdict);
    }
    verdict.outcome = Outcome::Violation;
    verdict.witness = Some(match m.evidence.into_iter().find(|e| e.holds.is_empty()) {
        Some(evidence) => Witness::Maximal {
            chain: vec![g.order(), evidence.order as u128],
            evidence,
        },
        None => {
            let allowed = match target {
                ClassId::Hat(_, policy) => policy.orders().cloned().unwrap_or_default(),
                ClassId::F1Set(s) => s.clone(),
                _ => Default::default(),
            };
            let simple_order = snap
                .class_of(snap.whole_id())
                .nonabelian
                .iter()
                .map(|t| t.order())
                .find(|o| !allowed.contains(o))
                .unwrap_or(0);
            Witness::ChiefFactor { simple_order }
        }
    });
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        for p in &PIPELINES {
            let e = p.expr();
            assert_eq!(FunctorExpr::parse(&e.render()).unwrap(), e, "{}", p.id);
        }
        assert_eq!(pipeline("t53").unwrap().id, "T53");
        assert!(pipeline("T99").is_err());
    }
}
