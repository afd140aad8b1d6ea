//! Subgroup-set functors over Max(G) and Max₂(G), the pipeline language
//! built from them, and the checks that tie empty pipelines to group classes.

mod antihom;
mod dsl;
mod lemmas;
mod sets;
mod theorems;
mod transport;

pub use antihom::{antihom_check, AntihomReport, ExampleId};
pub use dsl::{eval_functor, parse_functor, Caret, FunctorExpr};
pub use lemmas::{
    core_solvability, l_index_scan, minimal_normal_ids, xhn_scan, CoreSolvability, LIndexInstance, LIndexReport,
    XhnReport, PSL27_ORDER,
};
pub use sets::{Atom, E1Reading, FunctorContext, Level, SubgroupSet};
pub use theorems::{generating_check, pipeline, Outcome, Pipeline, TargetKind, TheoremVerdict, Witness, PIPELINES};
pub use transport::{
    emptiness_transport, quotient_identities, small_quotient, transport_to_quotient, EmptinessCheck, IdentityCheck,
    Quotient, Transported,
};
