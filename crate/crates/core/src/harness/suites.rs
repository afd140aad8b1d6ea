//! Verification suites over a corpus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{Analysis, Engine};
use super::config::Settings;
use super::corpus::{Corpus, CorpusEntry};
use super::named::named_group;
use super::report::{AllowlistEcho, ConfigEcho, ReportItem, Status, Timing, VerificationReport};
use super::tables::reproduce_table;
use crate::arith::{is_prime, prime_divisors};
use crate::classes::{
    allowlist_scan, class_membership, formation_axiom_check, minimal_non_p_solvable, minimal_non_solvable, AllowPolicy,
    ClassId,
};
use crate::error::{Error, Result};
use crate::functors::{
    antihom_check, core_solvability, emptiness_transport, generating_check, l_index_scan, minimal_normal_ids,
    quotient_identities, small_quotient, xhn_scan, Atom, Caret, E1Reading, ExampleId, FunctorContext, Outcome,
    TargetKind, PIPELINES,
};
use crate::structure::ChiefSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Tables,
    Examples,
    Theorems,
    Inclusion,
    Lemmas,
    Series,
    Transport,
    Antihom,
    Axioms,
    All,
}

impl SuiteId {
    /// Every suite except `All`, in the order `All` runs them.
    pub const EACH: [SuiteId; 9] = [
        SuiteId::Tables,
        SuiteId::Examples,
        SuiteId::Theorems,
        SuiteId::Inclusion,
        SuiteId::Lemmas,
        SuiteId::Series,
        SuiteId::Transport,
        SuiteId::Antihom,
        SuiteId::Axioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Tables => "tables",
            SuiteId::Examples => "examples",
            SuiteId::Theorems => "theorems",
            SuiteId::Inclusion => "inclusion",
            SuiteId::Lemmas => "lemmas",
            SuiteId::Series => "series",
            SuiteId::Transport => "transport",
            SuiteId::Antihom => "antihom",
            SuiteId::Axioms => "axioms",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::EACH
            .iter()
            .chain(std::iter::once(&SuiteId::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

/// Primes dividing `order`, then the least prime that does not (flagged degenerate).
pub fn suite_primes(order: u128) -> Vec<(u64, bool)> {
    let mut out: Vec<(u64, bool)> = prime_divisors(order).into_iter().map(|p| (p, false)).collect();
    let extra = (2u64..)
        .find(|&q| is_prime(q) && !order.is_multiple_of(q as u128))
        .expect("primes are unbounded");
    out.push((extra, true));
    out
}

fn flag(b: bool) -> char {
    if b {
        'T'
    } else {
        'F'
    }
}

struct Allow {
    orders: BTreeSet<u64>,
    provenance: String,
}

/// Runs suites against one corpus with fixed settings.
pub struct Runner {
    settings: Settings,
    engine: Engine,
    corpus: Corpus,
    analyses: OnceLock<std::result::Result<Vec<Arc<Analysis>>, Error>>,
    explicit: BTreeMap<String, (Vec<u64>, String)>,
    scanned: Mutex<BTreeMap<String, Arc<Allow>>>,
    used: Mutex<BTreeSet<String>>,
}

impl Runner {
    /// Loads the configured corpus and builds the engine.
    pub fn new(settings: Settings) -> Result<Runner> {
        let corpus = settings.load_corpus()?;
        let engine = settings.engine();
        Runner::with_parts(settings, engine, corpus)
    }

    pub fn with_parts(settings: Settings, engine: Engine, corpus: Corpus) -> Result<Runner> {
        let explicit = settings.explicit_allowlists()?;
        for key in explicit.keys() {
            ClassId::parse(key, None)?;
        }
        Ok(Runner {
            settings,
            engine,
            corpus,
            analyses: OnceLock::new(),
            explicit,
            scanned: Mutex::new(BTreeMap::new()),
            used: Mutex::new(BTreeSet::new()),
        })
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    /// Analyses of every corpus group, in corpus order.
    pub fn analyses(&self) -> Result<&[Arc<Analysis>]> {
        let r = self.analyses.get_or_init(|| {
            self.corpus
                .entries
                .par_iter()
                .map(|e| self.engine.analyze(&e.group))
                .collect::<Result<Vec<_>>>()
        });
        r.as_deref().map_err(|e| e.clone())
    }

    /// `base` with its allowlist: explicit from the settings, else scanned from the corpus.
    pub fn hat_class(&self, base: ClassId) -> Result<ClassId> {
        let key = base.to_string();
        self.used.lock().expect("allowlist lock").insert(key.clone());
        if let Some((orders, _)) = self.explicit.get(&key) {
            return Ok(ClassId::Hat(
                Box::new(base),
                AllowPolicy::Explicit(orders.iter().copied().collect()),
            ));
        }
        let allow = self.scanned_allowlist(&base)?;
        Ok(ClassId::Hat(
            Box::new(base),
            AllowPolicy::Scanned {
                corpus: self.corpus.id.clone(),
                orders: allow.orders.clone(),
            },
        ))
    }

    fn scanned_allowlist(&self, base: &ClassId) -> Result<Arc<Allow>> {
        let key = base.to_string();
        if let Some(a) = self.scanned.lock().expect("allowlist lock").get(&key) {
            return Ok(a.clone());
        }
        let orders = allowlist_scan(self.analyses()?.iter().map(|a| &a.snap), base)?;
        let allow = Arc::new(Allow {
            orders,
            provenance: format!("corpus scan over `{}`", self.corpus.id),
        });
        Ok(self
            .scanned
            .lock()
            .expect("allowlist lock")
            .entry(key)
            .or_insert(allow)
            .clone())
    }

    /// Replaces every corpus-scan allowlist inside `c` by its resolved list.
    pub fn resolve_class(&self, c: ClassId) -> Result<ClassId> {
        match c {
            ClassId::Hat(base, AllowPolicy::CorpusScan) => self.hat_class(*base),
            ClassId::Meet(a, b) => Ok(ClassId::Meet(
                Box::new(self.resolve_class(*a)?),
                Box::new(self.resolve_class(*b)?),
            )),
            other => Ok(other),
        }
    }

    /// Corpus-scanned allowlist for a base class, ignoring explicit settings.
    pub fn scan_allowlist(&self, base: &ClassId) -> Result<BTreeSet<u64>> {
        Ok(self.scanned_allowlist(base)?.orders.clone())
    }

    fn echo(&self) -> ConfigEcho {
        let used = self.used.lock().expect("allowlist lock").clone();
        let scanned = self.scanned.lock().expect("allowlist lock");
        let allowlists = used
            .into_iter()
            .filter_map(|k| {
                if let Some((o, prov)) = self.explicit.get(&k) {
                    return Some(AllowlistEcho {
                        class: k,
                        orders: o.clone(),
                        provenance: prov.clone(),
                    });
                }
                scanned.get(&k).map(|a| AllowlistEcho {
                    class: k.clone(),
                    orders: a.orders.iter().copied().collect(),
                    provenance: a.provenance.clone(),
                })
            })
            .collect();
        ConfigEcho {
            caret: self.settings.caret.name().to_string(),
            e1: e1_name(self.settings.e1).to_string(),
            semantics_both: self.settings.semantics_both,
            bound: self.settings.bound as u64,
            lemma_order_limit: self.settings.lemma_order_limit as u64,
            corpus: self.corpus.id.clone(),
            corpus_size: self.corpus.len(),
            allowlists,
        }
    }

    /// Runs a suite. Not reentrant: the allowlist echo is collected per run.
    pub fn run(&self, suite: SuiteId) -> Result<(VerificationReport, Timing)> {
        self.used.lock().expect("allowlist lock").clear();
        let start = Instant::now();
        let mut timing = Timing::default();
        let suites: Vec<SuiteId> = match suite {
            SuiteId::All => SuiteId::EACH.to_vec(),
            s => vec![s],
        };
        let mut items = Vec::new();
        for s in suites {
            let t0 = Instant::now();
            let mut part = match s {
                SuiteId::Tables => self.tables()?,
                SuiteId::Examples => self.examples()?,
                SuiteId::Theorems => self.theorems()?,
                SuiteId::Inclusion => self.inclusion()?,
                SuiteId::Lemmas => self.lemmas()?,
                SuiteId::Series => self.series()?,
                SuiteId::Transport => self.transport()?,
                SuiteId::Antihom => self.antihom()?,
                SuiteId::Axioms => self.axioms()?,
                SuiteId::All => unreachable!(),
            };
            for it in &mut part {
                it.id = format!("{}/{}", s.name(), it.id);
            }
            items.append(&mut part);
            timing
                .phases
                .insert(s.name().to_string(), t0.elapsed().as_secs_f64() * 1e3);
        }
        timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok((VerificationReport::new(suite.name(), self.echo(), items), timing))
    }

    /// Applies `f` to every corpus group in parallel; items keep corpus order.
    fn per_group<F>(&self, f: F) -> Result<Vec<ReportItem>>
    where
        F: Fn(&CorpusEntry, &Analysis) -> Result<Vec<ReportItem>> + Sync,
    {
        let analyses = self.analyses()?;
        let parts = self
            .corpus
            .entries
            .par_iter()
            .zip(analyses.par_iter())
            .map(|(e, a)| {
                f(e, a).map(|items| {
                    items
                        .into_iter()
                        .map(|it| {
                            if it.group.is_none() {
                                it.group(e.name.clone())
                            } else {
                                it
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().flatten().collect())
    }

    fn small_enough(&self, a: &Analysis) -> bool {
        a.snap.group().order() <= self.settings.lemma_order_limit
    }

    fn tables(&self) -> Result<Vec<ReportItem>> {
        let mut items = Vec::new();
        for k in 1..=4u8 {
            for t in reproduce_table(&self.engine, k)? {
                let tag = match &t.part {
                    Some(p) => format!("table{k}-{p}"),
                    None => format!("table{k}"),
                };
                for row in &t.rows {
                    let detail = if row.matched() {
                        format!("{} cells match ({})", row.cells, row.cite)
                    } else {
                        let m: Vec<String> = row
                            .mismatches
                            .iter()
                            .map(|m| format!("{} expected {} computed {}", m.column, m.expected, m.computed))
                            .collect();
                        format!("{} ({})", m.join("; "), row.cite)
                    };
                    let mut it = ReportItem::new(format!("{tag}/{}", row.label), Status::check(row.matched()), detail)
                        .group(t.group.clone())
                        .data(row);
                    if let Some(p) = t.prime {
                        it = it.prime(p);
                    }
                    items.push(it);
                }
                let listing: Vec<String> = t
                    .computed
                    .iter()
                    .map(|c| format!("{}x{}(index {})", c.size, c.order, c.index))
                    .collect();
                let coverage = if t.subset {
                    ReportItem::new(
                        format!("{tag}/computed"),
                        Status::Info,
                        format!("subset check; all maximal classes: {}", listing.join(", ")),
                    )
                } else {
                    ReportItem::new(
                        format!("{tag}/coverage"),
                        Status::check(t.unlisted.is_empty()),
                        format!(
                            "{} unlisted of {} classes: {}",
                            t.unlisted.len(),
                            t.computed.len(),
                            listing.join(", ")
                        ),
                    )
                };
                items.push(coverage.group(t.group.clone()).data(&t.computed));
            }
        }
        Ok(items)
    }

    fn examples(&self) -> Result<Vec<ReportItem>> {
        let mut items = Vec::new();
        let analyze = |spec: &str| -> Result<Arc<Analysis>> { self.engine.analyze(&named_group(spec)?) };
        let memb = |a: &Analysis, c: &ClassId| -> Result<bool> { Ok(class_membership(&a.snap, c)?.member) };

        let pairs: [(&str, &str, ClassId, ClassId, u64); 3] = [
            ("psl2(16)-in-J-not-Jpr", "psl2(16)", ClassId::J(17), ClassId::Jpr, 17),
            ("alt(7)-in-Fprime-not-J", "alt(7)", ClassId::Fprime(7), ClassId::J(7), 7),
            (
                "mathieu11-in-Fdoubleprime-not-Fprime",
                "mathieu11",
                ClassId::Fdoubleprime(11),
                ClassId::Fprime(11),
                11,
            ),
        ];
        for (id, spec, inside, outside, p) in pairs {
            let a = analyze(spec)?;
            let i = memb(&a, &inside)?;
            let o = memb(&a, &outside)?;
            items.push(
                ReportItem::new(
                    id,
                    Status::check(i && !o),
                    format!("{inside}={} {outside}={}", flag(i), flag(o)),
                )
                .group(spec)
                .prime(p),
            );
        }
        for spec in ["alt(5)", "psl2(7)"] {
            let a = analyze(spec)?;
            let m = minimal_non_solvable(&a.snap);
            items.push(
                ReportItem::new(
                    format!("{spec}-minimal-non-solvable"),
                    Status::check(m),
                    format!("minimal non-solvable={}", flag(m)),
                )
                .group(spec),
            );
        }
        let a = analyze("psl2(11)")?;
        let mp = minimal_non_p_solvable(&a.snap, 11)?;
        let ms = minimal_non_solvable(&a.snap);
        items.push(
            ReportItem::new(
                "psl2(11)-minimal-non-11-solvable-only",
                Status::check(mp && !ms),
                format!("minimal non-11-solvable={} minimal non-solvable={}", flag(mp), flag(ms)),
            )
            .group("psl2(11)")
            .prime(11),
        );

        let hats: [(&str, ClassId, Option<u64>); 2] = [
            ("sym(5)", ClassId::Jpr, None),
            ("mathieu11", ClassId::Fdoubleprime(11), Some(11)),
        ];
        for (spec, base, p) in hats {
            let c = self.hat_class(base)?;
            let a = analyze(spec)?;
            let m = memb(&a, &c)?;
            let mut it = ReportItem::new(
                format!("{spec}-in-{c}"),
                Status::check(m),
                format!("member={}", flag(m)),
            )
            .group(spec);
            if let Some(p) = p {
                it = it.prime(p);
            }
            items.push(it);
        }
        Ok(items)
    }

    fn theorems(&self) -> Result<Vec<ReportItem>> {
        let s = &self.settings;
        let alt_caret = match s.caret {
            Caret::Intersection => Caret::Union,
            Caret::Union => Caret::Intersection,
        };
        let alt_e1 = match s.e1 {
            E1Reading::PowerOfP => E1Reading::AnyPrimePower,
            E1Reading::AnyPrimePower => E1Reading::PowerOfP,
        };
        let mut items = self.per_group(|_, a| {
            let mut out = Vec::new();
            for (p, degenerate) in suite_primes(a.snap.group().order()) {
                let ctx = FunctorContext::new(&a.snap, &a.strata, p)?.with_e1(s.e1);
                for pl in &PIPELINES {
                    let expr = pl.expr();
                    let raw = pl.target.class(p);
                    let v = generating_check(&ctx, pl.id, &expr, &raw, s.caret)?;
                    out.push(
                        ReportItem::new(
                            format!("{}/raw", pl.id),
                            v.outcome.into(),
                            format!("{} -> {}: |set|={}", v.expr, v.target, v.set_size),
                        )
                        .prime(p)
                        .degenerate(degenerate)
                        .data(&v),
                    );
                    let hat = self.hat_class(raw.clone())?;
                    let h = generating_check(&ctx, pl.id, &expr, &hat, s.caret)?;
                    out.push(
                        ReportItem::new(
                            format!("{}/hat", pl.id),
                            h.outcome.into(),
                            format!("{} -> {}: |set|={}", h.expr, h.target, h.set_size),
                        )
                        .prime(p)
                        .degenerate(degenerate)
                        .data(&h),
                    );
                    if !s.semantics_both {
                        continue;
                    }
                    let u = generating_check(&ctx, pl.id, &expr, &raw, alt_caret)?;
                    out.push(diff_item(
                        pl.id,
                        "caret",
                        s.caret.name(),
                        alt_caret.name(),
                        v.outcome,
                        u.outcome,
                        u.set_size,
                        p,
                        degenerate,
                    ));
                    let ectx = ctx.with_e1(alt_e1);
                    let e = generating_check(&ectx, pl.id, &expr, &raw, s.caret)?;
                    if pl.expr().atoms().contains(&Atom::E1) {
                        out.push(diff_item(
                            pl.id,
                            "e1",
                            e1_name(s.e1),
                            e1_name(alt_e1),
                            v.outcome,
                            e.outcome,
                            e.set_size,
                            p,
                            degenerate,
                        ));
                    }
                }
            }
            Ok(out)
        })?;
        if s.semantics_both {
            for (axis, primary, alt) in [
                ("caret", s.caret.name(), alt_caret.name()),
                ("e1", e1_name(s.e1), e1_name(alt_e1)),
            ] {
                let prefix = format!("/{axis}-diff");
                let rel: Vec<&ReportItem> = items.iter().filter(|i| i.id.ends_with(&prefix)).collect();
                let differ = rel
                    .iter()
                    .filter(|i| i.data["differs"] == serde_json::Value::Bool(true))
                    .count();
                let alt_viol = rel
                    .iter()
                    .filter(|i| i.data["alternative"] == serde_json::json!("violation"))
                    .count();
                let summary = ReportItem::new(
                    format!("summary/{axis}"),
                    Status::Info,
                    format!(
                        "{primary} vs {alt}: {differ} of {} verdicts differ; {alt_viol} violations under {alt}",
                        rel.len()
                    ),
                );
                items.push(summary);
            }
            items.retain(|i| !(i.status == Status::Info && i.data["differs"] == serde_json::Value::Bool(false)));
        }
        Ok(items)
    }

    fn inclusion(&self) -> Result<Vec<ReportItem>> {
        self.per_group(|_, a| {
            let snap = &a.snap;
            let m = |c: &ClassId| -> Result<bool> { Ok(class_membership(snap, c)?.member) };
            let solv = m(&ClassId::Solvable)?;
            let jpr = m(&ClassId::Jpr)?;
            let mut out = Vec::new();
            for (p, degenerate) in suite_primes(snap.group().order()) {
                if degenerate {
                    continue;
                }
                let j = m(&ClassId::J(p))?;
                let fp = m(&ClassId::Fprime(p))?;
                let fpp = m(&ClassId::Fdoubleprime(p))?;
                let f1 = m(&ClassId::F1(p))?;
                let f2 = m(&ClassId::F2(p))?;
                let chain: [(&str, bool, bool); 10] = [
                    ("S=>F1", solv, f1),
                    ("F1=>F2", f1, f2),
                    ("F2=>Fdoubleprime", f2, fpp),
                    ("S=>Jpr", solv, jpr),
                    ("Jpr=>J", jpr, j),
                    ("J=>Fprime", j, fp),
                    ("Fprime=>Fdoubleprime", fp, fpp),
                    ("S=>J", solv, j),
                    ("S=>Fprime", solv, fp),
                    ("S=>Fdoubleprime", solv, fpp),
                ];
                let broken: Vec<&str> = chain.iter().filter(|(_, a, b)| *a && !*b).map(|(n, _, _)| *n).collect();
                let memb = format!(
                    "S={} Jpr={} J={} Fprime={} Fdoubleprime={} F1={} F2={}",
                    flag(solv),
                    flag(jpr),
                    flag(j),
                    flag(fp),
                    flag(fpp),
                    flag(f1),
                    flag(f2)
                );
                let detail = if broken.is_empty() {
                    memb
                } else {
                    format!("{memb}; broken: {}", broken.join(", "))
                };
                out.push(ReportItem::new("chain", Status::check(broken.is_empty()), detail).prime(p));
            }
            Ok(out)
        })
    }

    fn lemmas(&self) -> Result<Vec<ReportItem>> {
        let mut items = self.per_group(|_, a| {
            if !self.small_enough(a) {
                return Ok(Vec::new());
            }
            let cs = core_solvability(&a.snap, &a.strata);
            let xhn = xhn_scan(&a.snap, &a.strata);
            let li = l_index_scan(&a.snap);
            Ok(vec![
                ReportItem::new(
                    "core-solvability",
                    Status::check(cs.agrees()),
                    format!(
                        "solvable={} criterion={} strict-criterion={}",
                        flag(cs.solvable),
                        flag(cs.criterion),
                        flag(cs.strict_criterion)
                    ),
                ),
                ReportItem::new(
                    "x-equals-hn",
                    Status::check(xhn.counterexamples.is_empty()),
                    format!("{} triples, {} counterexamples", xhn.triples, xhn.counterexamples.len()),
                ),
                ReportItem::new(
                    "l-index",
                    Status::check(li.counterexamples() == 0),
                    format!(
                        "{} minimal normal, {} instances, {} counterexamples",
                        li.minimal_normals,
                        li.instances.len(),
                        li.counterexamples()
                    ),
                )
                .data(&li.instances),
            ])
        })?;
        let a = self.engine.analyze(&named_group("psl2(7)")?)?;
        let li = l_index_scan(&a.snap);
        let whole = a.snap.whole_id();
        let found = li.instances.iter().find(|i| i.l == whole && i.indices == (7, 8));
        let (status, detail) = match found {
            Some(i) => (
                Status::check(i.consistent && i.simple_order == Some(168)),
                format!(
                    "L = G, indices 7 and 8, simple order {:?}, consistent={}",
                    i.simple_order,
                    flag(i.consistent)
                ),
            ),
            None => (Status::Fail, "instance with indices 7 and 8 not found".to_string()),
        };
        items.push(ReportItem::new("l-index-psl27-self-instance", status, detail).group("psl2(7)"));
        Ok(items)
    }

    fn series(&self) -> Result<Vec<ReportItem>> {
        let trials = self.settings.jh_trials;
        self.per_group(|_, a| {
            let h = a.snap.handle(a.snap.whole_id());
            let sorted = |s: ChiefSeries| {
                let mut f = s.composition_factors();
                f.sort();
                f
            };
            let base = sorted(ChiefSeries::of(&h)?);
            let mut differing = 0;
            for t in 0..trials {
                if sorted(ChiefSeries::randomized(&h, t as u64)?) != base {
                    differing += 1;
                }
            }
            let labels: Vec<String> = base.iter().map(|t| t.label()).collect();
            Ok(vec![ReportItem::new(
                "jordan-holder",
                Status::check(differing == 0),
                format!(
                    "{trials} randomized series, {differing} differ; factors [{}]",
                    labels.join(", ")
                ),
            )])
        })
    }

    fn transport(&self) -> Result<Vec<ReportItem>> {
        const CHECKED: [Atom; 5] = [Atom::S, Atom::Pc, Atom::Pci, Atom::E1, Atom::T1];
        let e1 = self.settings.e1;
        self.per_group(|_, a| {
            let mut out = Vec::new();
            if !self.small_enough(a) {
                return Ok(out);
            }
            let snap = &a.snap;
            for l in minimal_normal_ids(snap) {
                if l == snap.whole_id() {
                    continue;
                }
                let q = small_quotient(snap, l)?;
                let qa = self.engine.analyze(&q.group)?;
                let lname = format!("L{}", snap.order(l));
                for (p, degenerate) in suite_primes(snap.group().order()) {
                    if degenerate {
                        continue;
                    }
                    let ctx = FunctorContext::new(snap, &a.strata, p)?.with_e1(e1);
                    let qctx = FunctorContext::new(&qa.snap, &qa.strata, p)?.with_e1(e1);
                    let ids = quotient_identities(&ctx, &qctx, &q)?;
                    let failed: Vec<&str> = ids
                        .iter()
                        .filter(|c| CHECKED.contains(&c.atom) && !c.holds)
                        .map(|c| c.atom.name())
                        .collect();
                    out.push(
                        ReportItem::new(
                            format!("{lname}/identities"),
                            Status::check(failed.is_empty()),
                            if failed.is_empty() {
                                "S, Pc, Pci, E1, T1 commute with the quotient".to_string()
                            } else {
                                format!("failing: {}", failed.join(", "))
                            },
                        )
                        .prime(p)
                        .data(&ids),
                    );
                    let differ: Vec<&str> = ids
                        .iter()
                        .filter(|c| !CHECKED.contains(&c.atom) && !c.holds)
                        .map(|c| c.atom.name())
                        .collect();
                    if !differ.is_empty() {
                        out.push(
                            ReportItem::new(
                                format!("{lname}/literal-forms"),
                                Status::Info,
                                format!("{} differ from their quotient-form counterparts", differ.join(", ")),
                            )
                            .prime(p),
                        );
                    }
                    for caret in [Caret::Intersection, Caret::Union] {
                        let em = emptiness_transport(&ctx, &qctx, caret)?;
                        let bad: Vec<&str> = em.iter().filter(|c| !c.holds()).map(|c| c.pipeline.as_str()).collect();
                        let empty = em.iter().filter(|c| c.empty_on_group).count();
                        out.push(
                            ReportItem::new(
                                format!("{lname}/emptiness-{}", caret.name()),
                                Status::check(bad.is_empty()),
                                if bad.is_empty() {
                                    format!("{empty} of {} pipelines empty on G stay empty on G/L", em.len())
                                } else {
                                    format!("nonempty on G/L: {}", bad.join(", "))
                                },
                            )
                            .prime(p),
                        );
                    }
                }
            }
            Ok(out)
        })
    }

    fn antihom(&self) -> Result<Vec<ReportItem>> {
        let caret = self.settings.caret;
        let e1 = self.settings.e1;
        self.per_group(|_, a| {
            let mut out = Vec::new();
            for (p, degenerate) in suite_primes(a.snap.group().order()) {
                let ctx = FunctorContext::new(&a.snap, &a.strata, p)?.with_e1(e1);
                for ex in ExampleId::ALL {
                    let (ta, tb): (TargetKind, TargetKind) = ex.targets();
                    let ca = self.hat_class(ta.class(p))?;
                    let cb = self.hat_class(tb.class(p))?;
                    let r = antihom_check(&ctx, ex, caret, &ca, &cb)?;
                    out.push(
                        ReportItem::new(
                            format!("{ex}"),
                            Status::check(r.holds()),
                            format!(
                                "|a|={} |b|={} b<=a={} meet={} join={}",
                                r.a_size,
                                r.b_size,
                                flag(r.b_subset_a),
                                flag(r.meet_identity()),
                                flag(r.join_identity())
                            ),
                        )
                        .prime(p)
                        .degenerate(degenerate)
                        .data(&r),
                    );
                }
            }
            Ok(out)
        })
    }

    fn axioms(&self) -> Result<Vec<ReportItem>> {
        self.per_group(|_, a| {
            let snap = &a.snap;
            let mut classes: Vec<(ClassId, Option<u64>)> = vec![
                (ClassId::Solvable, None),
                (self.hat_class(ClassId::Jpr)?, None),
                (ClassId::Jpr, None),
            ];
            for (p, degenerate) in suite_primes(snap.group().order()) {
                if degenerate {
                    continue;
                }
                for k in [
                    TargetKind::F1,
                    TargetKind::F2,
                    TargetKind::J,
                    TargetKind::Fprime,
                    TargetKind::Fdoubleprime,
                ] {
                    classes.push((self.hat_class(k.class(p))?, Some(p)));
                    classes.push((k.class(p), Some(p)));
                }
            }
            let mut out = Vec::new();
            for (c, p) in classes {
                let audit = formation_axiom_check(snap, &c)?;
                let v = audit.violations();
                let status = if c.is_raw() {
                    Status::Info
                } else {
                    Status::check(v == 0)
                };
                if status == Status::Info && v == 0 {
                    continue;
                }
                let label = match &c {
                    ClassId::Hat(b, _) => format!("Hat({b})"),
                    other => other.to_string(),
                };
                let mut it = ReportItem::new(
                    label,
                    status,
                    format!(
                        "{} normal subgroups; quotient {}, R0 {}, extension {} violations",
                        audit.normal_subgroups,
                        audit.quotient_violations.len(),
                        audit.r0_violations.len(),
                        audit.extension_violations.len()
                    ),
                );
                if let Some(p) = p {
                    it = it.prime(p);
                }
                out.push(it);
            }
            Ok(out)
        })
    }
}

fn e1_name(e: E1Reading) -> &'static str {
    match e {
        E1Reading::PowerOfP => "power-of-p",
        E1Reading::AnyPrimePower => "any-prime-power",
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::VacuousHolds => "vacuous-holds",
        Outcome::NonVacuous => "non-vacuous",
        Outcome::Violation => "violation",
    }
}

#[allow(clippy::too_many_arguments)]
fn diff_item(
    pid: &str,
    axis: &str,
    primary_name: &str,
    alt_name: &str,
    primary: Outcome,
    alt: Outcome,
    alt_size: usize,
    p: u64,
    degenerate: bool,
) -> ReportItem {
    let differs = primary != alt;
    ReportItem::new(
        format!("{pid}/{axis}-diff"),
        Status::Info,
        format!(
            "{primary_name}: {}, {alt_name}: {} (|set|={alt_size})",
            outcome_name(primary),
            outcome_name(alt)
        ),
    )
    .prime(p)
    .degenerate(degenerate)
    .data(&serde_json::json!({
        "differs": differs,
        "primary": outcome_name(primary),
        "alternative": outcome_name(alt),
    }))
}

/// Runs one suite with the settings' corpus and engine.
pub fn run_suite(suite: SuiteId, settings: Settings) -> Result<(VerificationReport, Timing)> {
    Runner::new(settings)?.run(suite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_runner() -> Runner {
        let corpus = Corpus::from_specs("small", &["sym(3)", "sym(4)", "alt(5)", "cyclic(6)"]).unwrap();
        let settings = Settings {
            semantics_both: true,
            ..Settings::default()
        };
        Runner::with_parts(settings, Engine::default(), corpus).unwrap()
    }

    #[test]
    fn primes_include_one_degenerate() {
        assert_eq!(suite_primes(60), vec![(2, false), (3, false), (5, false), (7, true)]);
        assert_eq!(suite_primes(1), vec![(2, true)]);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteId::EACH {
            assert_eq!(s.name().parse::<SuiteId>().unwrap(), s);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn small_corpus_suites_pass() {
        let r = small_runner();
        for s in [
            SuiteId::Theorems,
            SuiteId::Inclusion,
            SuiteId::Lemmas,
            SuiteId::Series,
            SuiteId::Transport,
            SuiteId::Antihom,
            SuiteId::Axioms,
        ] {
            let (rep, _) = r.run(s).unwrap();
            assert!(rep.passed(), "{}", rep.render_text(true));
            assert!(rep.counts.total > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = small_runner().run(SuiteId::Theorems).unwrap().0;
        let b = small_runner().run(SuiteId::Theorems).unwrap().0;
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
