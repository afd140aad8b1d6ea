//! Acceptance criteria, one PASS/FAIL line each.
//!
//! The binary exits 0 after reporting so the rest of the workspace tests
//! still run; set `ACCEPTANCE_STRICT=1` to exit 1 when any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use common::Brute;
use maxsub::harness::{
    named_group, reproduce_table, ConfigEcho, DiskCache, Engine, ReportItem, Runner, Settings, Status, SuiteId,
    VerificationReport, DEFAULT_SPECS,
};
use maxsub::lattice::DEFAULT_BOUND;

/// Table reproduction must finish within this many seconds.
const TABLE_BUDGET_S: f64 = 600.0;
/// Minimum warm/cold speedup for the cached M11 analysis.
const WARM_SPEEDUP: f64 = 10.0;
/// Groups up to this order are checked against the brute-force oracle.
const ORACLE_ORDER: u128 = 200;

struct Line {
    n: u8,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn part(report: &VerificationReport, suite: &str) -> VerificationReport {
    let prefix = format!("{suite}/");
    let items: Vec<ReportItem> = report.select(&prefix).cloned().collect();
    VerificationReport::new(suite, ConfigEcho::default(), items)
}

fn failures(r: &VerificationReport) -> String {
    let f: Vec<String> = r
        .failures()
        .map(|i| format!("{} [{}] {}", i.id, i.group.as_deref().unwrap_or("-"), i.detail))
        .collect();
    if f.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", f.join(" | "))
    }
}

fn all_pass(items: &[&ReportItem]) -> bool {
    !items.is_empty() && items.iter().all(|i| i.status == Status::Pass)
}

fn settings() -> Settings {
    Settings {
        semantics_both: true,
        cache: false,
        ..Settings::default()
    }
}

fn cached_settings(dir: &std::path::Path) -> Settings {
    Settings {
        cache: true,
        cache_dir: Some(dir.to_path_buf()),
        ..settings()
    }
}

fn tables(report: &VerificationReport, ms: f64) -> Line {
    let r = part(report, "tables");
    let engine = Engine::default();
    let indices = |k: u8| -> BTreeSet<u64> {
        reproduce_table(&engine, k)
            .unwrap()
            .iter()
            .flat_map(|t| t.computed.iter().map(|c| c.index))
            .collect()
    };
    let witnesses =
        indices(2) == BTreeSet::from([7, 15, 21, 35]) && indices(3) == BTreeSet::from([11, 12, 55, 66, 165]);
    let secs = ms / 1e3;
    Line {
        n: 1,
        title: "table reproduction",
        pass: r.passed() && witnesses && secs <= TABLE_BUDGET_S,
        detail: format!(
            "{} of {} checks pass, witness indices {}, runtime {:.1} s (limit {TABLE_BUDGET_S} s){}",
            r.counts.pass,
            r.counts.pass + r.counts.fail,
            if witnesses { "match" } else { "differ" },
            secs,
            failures(&r)
        ),
    }
}

fn examples(report: &VerificationReport) -> Line {
    let r = part(report, "examples");
    let verdicts = [
        "examples/psl2(16)-in-J-not-Jpr",
        "examples/alt(7)-in-Fprime-not-J",
        "examples/mathieu11-in-Fdoubleprime-not-Fprime",
        "examples/alt(5)-minimal-non-solvable",
        "examples/psl2(7)-minimal-non-solvable",
        "examples/psl2(11)-minimal-non-11-solvable-only",
    ];
    let six: Vec<&ReportItem> = r.items.iter().filter(|i| verdicts.contains(&i.id.as_str())).collect();
    Line {
        n: 2,
        title: "example claims",
        pass: six.len() == 6 && all_pass(&six) && r.passed(),
        detail: format!(
            "{} of 6 verdicts exact{}",
            six.iter().filter(|i| i.status == Status::Pass).count(),
            failures(&r)
        ),
    }
}

fn theorems(report: &VerificationReport) -> Line {
    let r = part(report, "theorems");
    let summary: Vec<&str> = r.select("theorems/summary/").map(|i| i.detail.as_str()).collect();
    let c = &r.counts;
    Line {
        n: 3,
        title: "theorem matrix",
        pass: c.violation == 0 && c.fail == 0 && summary.len() == 2 && c.vacuous_holds + c.non_vacuous > 0,
        detail: format!(
            "{} violations, {} vacuous-holds, {} non-vacuous; {}",
            c.violation,
            c.vacuous_holds,
            c.non_vacuous,
            summary.join("; ")
        ),
    }
}

fn lemma(report: &VerificationReport, n: u8, title: &'static str, ids: &[&str]) -> Line {
    let r = part(report, "lemmas");
    let items: Vec<&ReportItem> = r
        .items
        .iter()
        .filter(|i| ids.iter().any(|id| i.id == format!("lemmas/{id}")))
        .collect();
    let bad: Vec<String> = items
        .iter()
        .filter(|i| i.status != Status::Pass)
        .map(|i| format!("{} [{}] {}", i.id, i.group.as_deref().unwrap_or("-"), i.detail))
        .collect();
    let groups: BTreeSet<&str> = items.iter().filter_map(|i| i.group.as_deref()).collect();
    Line {
        n,
        title,
        pass: all_pass(&items),
        detail: format!(
            "{} checks over {} groups, {} disagreements{}",
            items.len(),
            groups.len(),
            bad.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!(": {}", bad.join(" | "))
            }
        ),
    }
}

fn inclusion(report: &VerificationReport) -> Line {
    let r = part(report, "inclusion");
    Line {
        n: 7,
        title: "inclusion chain",
        pass: r.passed() && r.counts.pass > 0,
        detail: format!(
            "{} (group, prime) chains, {} broken{}",
            r.counts.total,
            r.counts.fail,
            failures(&r)
        ),
    }
}

fn oracle(report: &VerificationReport) -> Line {
    let engine = Engine::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for spec in DEFAULT_SPECS {
        let g = named_group(spec).unwrap();
        if g.order() > ORACLE_ORDER {
            continue;
        }
        checked += 1;
        let a = engine.analyze(&g).unwrap();
        let b = Brute::new(g.generators());
        let mut profile = BTreeMap::new();
        for c in a.snap.classes() {
            *profile.entry((c.order, c.size())).or_insert(0) += 1;
        }
        if profile != b.class_profile() || a.snap.total_subgroups() != b.subgroups.len() {
            bad.push(spec.to_string());
        }
    }
    let jh = part(report, "series");
    Line {
        n: 8,
        title: "oracle equivalence",
        pass: bad.is_empty() && checked > 0 && jh.passed() && jh.counts.pass > 0,
        detail: format!(
            "{checked} groups of order <= {ORACLE_ORDER} class-by-class, {} differ{}; Jordan-Holder stable on {} of {} groups{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(" ({})", bad.join(", ")) },
            jh.counts.pass,
            jh.counts.total,
            failures(&jh)
        ),
    }
}

fn antihom(report: &VerificationReport) -> Line {
    let r = part(report, "antihom");
    Line {
        n: 9,
        title: "anti-homomorphism",
        pass: r.passed() && r.counts.pass > 0,
        detail: format!(
            "{} checks, {} disagreements{}",
            r.counts.total,
            r.counts.fail,
            failures(&r)
        ),
    }
}

fn determinism(first: &str) -> Line {
    let second = Runner::new(settings())
        .unwrap()
        .run(SuiteId::All)
        .unwrap()
        .0
        .to_json()
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cold = Runner::new(cached_settings(dir.path()))
        .unwrap()
        .run(SuiteId::All)
        .unwrap()
        .0
        .to_json()
        .unwrap();
    let warm = Runner::new(cached_settings(dir.path()))
        .unwrap()
        .run(SuiteId::All)
        .unwrap()
        .0
        .to_json()
        .unwrap();
    let repeat = first == second;
    let cache = first == cold && first == warm;

    let m11 = named_group("mathieu11").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let t = Instant::now();
    Engine::new(DEFAULT_BOUND, Some(DiskCache::new(dir.path())))
        .analyze(&m11)
        .unwrap();
    let cold_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    Engine::new(DEFAULT_BOUND, Some(DiskCache::new(dir.path())))
        .analyze(&m11)
        .unwrap();
    let warm_ms = t.elapsed().as_secs_f64() * 1e3;
    let speedup = cold_ms / warm_ms;
    Line {
        n: 10,
        title: "determinism and cache",
        pass: repeat && cache && speedup >= WARM_SPEEDUP,
        detail: format!(
            "repeat run {}, cache on/off {}, M11 cold {:.0} ms warm {:.0} ms speedup {:.1}x (limit {WARM_SPEEDUP}x)",
            if repeat { "byte-identical" } else { "differs" },
            if cache { "identical" } else { "differs" },
            cold_ms,
            warm_ms,
            speedup
        ),
    }
}

fn main() {
    let runner = Runner::new(settings()).unwrap();
    let (report, timing) = runner.run(SuiteId::All).unwrap();
    let first = report.to_json().unwrap();
    let phase = |s: &str| timing.phases.get(s).copied().unwrap_or(0.0);

    let lines = vec![
        tables(&report, phase("tables")),
        examples(&report),
        theorems(&report),
        lemma(&report, 4, "core-solvability criterion", &["core-solvability"]),
        lemma(&report, 5, "X = HN lemma", &["x-equals-hn"]),
        lemma(&report, 6, "L-index scan", &["l-index", "l-index-psl27-self-instance"]),
        inclusion(&report),
        oracle(&report),
        antihom(&report),
        determinism(&first),
    ];
    for l in &lines {
        println!(
            "{} criterion {:>2} ({}): {}",
            if l.pass { "PASS" } else { "FAIL" },
            l.n,
            l.title,
            l.detail
        );
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "acceptance: {passed} of {} criteria pass, full run {:.1} s",
        lines.len(),
        timing.total_ms / 1e3
    );
    if passed < lines.len() && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
