use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use maxsub::classes::{class_membership, render_allowlist, ClassId};
use maxsub::functors::{Caret, E1Reading, FunctorContext, FunctorExpr};
use maxsub::harness::{
    named_group, parse_group_file, report_document, reproduce_table, Config, Runner, Settings, SuiteId, TableReport,
};
use maxsub::structure::composition_factors;
use maxsub::{Error, Group, Result};

#[derive(Parser)]
#[command(
    name = "maxsub",
    version,
    about = "Maximal-subgroup functors and generalized solvable classes"
)]
struct Cli {
    /// TOML configuration; its values override command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Lattice cache directory (defaults to $MAXSUB_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the on-disk lattice cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest group order to enumerate.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, structure and lattice statistics of a group.
    Info { group: String },
    /// Conjugacy classes of maximal subgroups.
    Max { group: String },
    /// Conjugacy classes of second maximal subgroups.
    Max2 {
        group: String,
        /// Only strictly second maximal subgroups.
        #[arg(long)]
        strict: bool,
    },
    /// Membership of a group in a class, with per-maximal evidence.
    Classify {
        group: String,
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Pipeline expressions.
    Functor {
        #[command(subcommand)]
        action: FunctorCmd,
    },
    /// Reproduce the transcribed tables (all when none given).
    Tables { ids: Vec<u8> },
    /// Run a verification suite over a corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corpus manifest.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum)]
        semantics: Option<Semantics>,
        #[arg(long, value_enum)]
        e1: Option<E1Arg>,
        /// Also write the JSON document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// List every item, not just failures and findings.
        #[arg(long)]
        verbose: bool,
    },
    /// Nonabelian composition factors of corpus groups in a class, as an allowlist file.
    ScanAllowlist {
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Lattice cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum FunctorCmd {
    Eval {
        expr: String,
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        caret: Option<CaretArg>,
        #[arg(long, value_enum)]
        e1: Option<E1Arg>,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    Clear,
    Stats,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaretArg {
    Union,
    Intersection,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Union,
    Intersection,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum E1Arg {
    PowerOfP,
    AnyPrimePower,
}

impl From<CaretArg> for Caret {
    fn from(c: CaretArg) -> Caret {
        match c {
            CaretArg::Union => Caret::Union,
            CaretArg::Intersection => Caret::Intersection,
        }
    }
}

impl From<E1Arg> for E1Reading {
    fn from(e: E1Arg) -> E1Reading {
        match e {
            E1Arg::PowerOfP => E1Reading::PowerOfP,
            E1Arg::AnyPrimePower => E1Reading::AnyPrimePower,
        }
    }
}

/// Flags first, then the configuration file on top.
fn settings(cli: &Cli, tweak: impl FnOnce(&mut Settings)) -> Result<Settings> {
    let mut s = Settings::default();
    if let Some(d) = &cli.cache_dir {
        s.cache_dir = Some(d.clone());
    }
    if cli.no_cache {
        s.cache = false;
    }
    if let Some(b) = cli.bound {
        s.bound = b as u128;
    }
    tweak(&mut s);
    if let Some(path) = &cli.config {
        Config::load(path)?.apply(&mut s);
    }
    Ok(s)
}

/// A named-group spec, or a group file whose first record is used.
fn load_group(arg: &str) -> Result<Group> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let records = parse_group_file(&text)?;
        return records
            .first()
            .ok_or_else(|| Error::Corpus(format!("{arg}: no group records")))?
            .build();
    }
    named_group(arg)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn tf(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

fn labels(types: &[maxsub::structure::SimpleTypeId]) -> String {
    types.iter().map(|t| t.label()).collect::<Vec<_>>().join(", ")
}

fn cmd_info(cli: &Cli, spec: &str) -> Result<u8> {
    let s = settings(cli, |_| {})?;
    let g = load_group(spec)?;
    let a = s.engine().analyze(&g)?;
    let snap = &a.snap;
    let whole = snap.class_of(snap.whole_id());
    let factors = composition_factors(&g)?;
    let frattini = snap.frattini();
    let v = serde_json::json!({
        "name": g.name().unwrap_or(spec),
        "degree": g.degree(),
        "order": g.order().to_string(),
        "solvable": whole.solvable,
        "composition_factors": factors.iter().map(|t| t.label()).collect::<Vec<_>>(),
        "subgroup_classes": snap.classes().len(),
        "subgroups": snap.total_subgroups(),
        "normal_subgroups": snap.normal_ids().len(),
        "maximal": a.strata.max.len(),
        "maximal_classes": snap.maximal_classes().len(),
        "second_maximal": a.strata.max2.len(),
        "strictly_second_maximal": a.strata.strict_ids().len(),
        "frattini_order": frattini.order().to_string(),
    });
    if cli.json {
        print_json(&v);
    } else {
        println!("group          {}", v["name"].as_str().unwrap_or(spec));
        println!("degree         {}", g.degree());
        println!("order          {}", g.order());
        println!("solvable       {}", tf(whole.solvable));
        println!("composition    [{}]", labels(&factors));
        println!(
            "subgroups      {} in {} classes",
            snap.total_subgroups(),
            snap.classes().len()
        );
        println!("normal         {}", snap.normal_ids().len());
        println!(
            "Max            {} in {} classes",
            a.strata.max.len(),
            snap.maximal_classes().len()
        );
        println!("Max2           {}", a.strata.max2.len());
        println!("Max2*          {}", a.strata.strict_ids().len());
        println!("Frattini order {}", frattini.order());
    }
    Ok(0)
}

fn class_rows(snap: &maxsub::lattice::LatticeSnapshot, classes: &[(usize, usize)]) -> Vec<serde_json::Value> {
    classes
        .iter()
        .map(|&(c, count)| {
            let cls = snap.class(c);
            serde_json::json!({
                "class": c,
                "order": cls.order,
                "index": (snap.group().order() / cls.order as u128).to_string(),
                "members": count,
                "conjugates": cls.size(),
                "solvable": cls.solvable,
                "nonabelian_factors": cls.nonabelian_factors.iter().map(|t| t.label()).collect::<Vec<_>>(),
                "core_order": snap.class(cls.core_class).order,
            })
        })
        .collect()
}

fn print_class_rows(rows: &[serde_json::Value]) {
    let num = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    println!(
        "{:>6} {:>7} {:>7} {:>7} {:>8} {:>5}  nonabelian factors",
        "class", "order", "index", "count", "solvable", "core"
    );
    for r in rows {
        println!(
            "{:>6} {:>7} {:>7} {:>7} {:>8} {:>5}  {}",
            num(&r["class"]),
            num(&r["order"]),
            num(&r["index"]),
            num(&r["members"]),
            tf(r["solvable"].as_bool().unwrap_or(false)),
            num(&r["core_order"]),
            r["nonabelian_factors"]
                .as_array()
                .map(|a| a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(", "))
                .unwrap_or_default()
        );
    }
}

fn grouped(ids: impl IntoIterator<Item = maxsub::lattice::SubId>) -> Vec<(usize, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for id in ids {
        *m.entry(id.class as usize).or_insert(0usize) += 1;
    }
    let mut v: Vec<(usize, usize)> = m.into_iter().collect();
    v.reverse();
    v
}

fn cmd_max(cli: &Cli, spec: &str, level2: bool, strict: bool) -> Result<u8> {
    let s = settings(cli, |_| {})?;
    let g = load_group(spec)?;
    let a = s.engine().analyze(&g)?;
    let ids = if !level2 {
        a.strata.max.clone()
    } else if strict {
        a.strata.strict_ids()
    } else {
        a.strata.max2.clone()
    };
    let rows = class_rows(&a.snap, &grouped(ids.iter().copied()));
    if cli.json {
        print_json(&serde_json::json!({ "group": g.name(), "total": ids.len(), "classes": rows }));
    } else {
        println!("{} subgroups in {} classes", ids.len(), rows.len());
        print_class_rows(&rows);
    }
    Ok(0)
}

fn cmd_classify(cli: &Cli, spec: &str, class: &str, p: Option<u64>) -> Result<u8> {
    let s = settings(cli, |_| {})?;
    let c = ClassId::parse(class, p)?;
    let runner = Runner::new(s)?;
    let c = runner.resolve_class(c)?;
    let g = load_group(spec)?;
    let a = runner.engine().analyze(&g)?;
    let m = class_membership(&a.snap, &c)?;
    if cli.json {
        print_json(&serde_json::json!({
            "group": g.name(),
            "class": c.to_string(),
            "member": m.member,
            "evidence": m.evidence,
        }));
    } else {
        println!("{} in {}: {}", g.name().unwrap_or(spec), c, tf(m.member));
        if !m.evidence.is_empty() {
            println!(
                "{:>7} {:>7} {:>6} {:>4} {:>6} {:>4} {:>5} {:>5}  holds",
                "order", "index", "count", "S", "p-S", "mNS", "mNpS", "ppi"
            );
        }
        for e in &m.evidence {
            let opt = |b: Option<bool>| b.map(tf).unwrap_or("-");
            println!(
                "{:>7} {:>7} {:>6} {:>4} {:>6} {:>4} {:>5} {:>5}  {:?}",
                e.order,
                e.index,
                e.class_size,
                tf(e.solvable),
                opt(e.p_solvable),
                tf(e.minimal_non_solvable),
                opt(e.minimal_non_p_solvable),
                e.prime_power_index.map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
                e.holds
            );
        }
    }
    Ok(0)
}

fn cmd_functor(cli: &Cli, expr: &str, spec: &str, p: u64, caret: Option<CaretArg>, e1: Option<E1Arg>) -> Result<u8> {
    let s = settings(cli, |s| {
        if let Some(c) = caret {
            s.caret = c.into();
        }
        if let Some(e) = e1 {
            s.e1 = e.into();
        }
    })?;
    let e = FunctorExpr::parse(expr)?;
    let g = load_group(spec)?;
    let a = s.engine().analyze(&g)?;
    let ctx = FunctorContext::new(&a.snap, &a.strata, p)?.with_e1(s.e1);
    let set = e.eval(&ctx, s.caret)?;
    let rows = class_rows(&a.snap, &grouped(set.iter()));
    if cli.json {
        print_json(&serde_json::json!({
            "expr": e.render(),
            "group": g.name(),
            "prime": p,
            "caret": s.caret.name(),
            "degenerate": ctx.degenerate(),
            "size": set.len(),
            "classes": rows,
        }));
    } else {
        println!(
            "{} on {} (p = {}, ^ = {}{}): {} subgroups",
            e.render(),
            g.name().unwrap_or(spec),
            p,
            s.caret.name(),
            if ctx.degenerate() { ", degenerate" } else { "" },
            set.len()
        );
        if !rows.is_empty() {
            print_class_rows(&rows);
        }
    }
    Ok(0)
}

fn print_table(t: &TableReport) {
    let p = t.prime.map(|p| format!(", p = {p}")).unwrap_or_default();
    println!("{}: {} (|G| = {}{})", t.title(), t.group, t.group_order, p);
    for r in &t.rows {
        let status = if r.matched() { "ok" } else { "MISMATCH" };
        println!("  {:<10} {:<9} {} cells  {}", r.label, status, r.cells, r.cite);
        for m in &r.mismatches {
            println!("    {}: expected {}, computed {}", m.column, m.expected, m.computed);
        }
    }
    println!("  computed maximal classes:");
    println!(
        "  {:>7} {:>6} {:>6} {:>4} {:>4} {:>4}",
        "order", "index", "count", "ppi", "S", "p-S"
    );
    for c in &t.computed {
        println!(
            "  {:>7} {:>6} {:>6} {:>4} {:>4} {:>4}",
            c.order,
            c.index,
            c.size,
            tf(c.prime_power),
            tf(c.solvable),
            c.p_solvable.map(tf).unwrap_or("-")
        );
    }
    println!(
        "  rows matched {}/{}, cells mismatched {}/{}{}",
        t.rows_matched(),
        t.rows.len(),
        t.mismatched_cells(),
        t.cells(),
        if t.subset { " (subset check)" } else { "" }
    );
}

fn cmd_tables(cli: &Cli, ids: &[u8]) -> Result<u8> {
    let s = settings(cli, |_| {})?;
    let engine = s.engine();
    let ids: Vec<u8> = if ids.is_empty() { vec![1, 2, 3, 4] } else { ids.to_vec() };
    let mut all = Vec::new();
    for k in ids {
        all.extend(reproduce_table(&engine, k)?);
    }
    if cli.json {
        print_json(&serde_json::to_value(&all).expect("tables serialize"));
    } else {
        for t in &all {
            print_table(t);
        }
    }
    Ok(if all.iter().all(|t| t.passed()) { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    suite: &str,
    corpus: Option<&PathBuf>,
    semantics: Option<Semantics>,
    e1: Option<E1Arg>,
    out: Option<&PathBuf>,
    verbose: bool,
) -> Result<u8> {
    let suite: SuiteId = suite.parse()?;
    let s = settings(cli, |s| {
        if let Some(c) = corpus {
            s.corpus = Some(c.clone());
        }
        match semantics {
            Some(Semantics::Union) => s.caret = Caret::Union,
            Some(Semantics::Intersection) => s.caret = Caret::Intersection,
            Some(Semantics::Both) => s.semantics_both = true,
            None => {}
        }
        if let Some(e) = e1 {
            s.e1 = e.into();
        }
    })?;
    let runner = Runner::new(s)?;
    let (report, timing) = runner.run(suite)?;
    let doc = report_document(&report, &timing)?;
    if let Some(path) = out {
        fs::write(path, &doc)?;
    }
    if cli.json {
        println!("{doc}");
    } else {
        print!("{}", report.render_text(!verbose));
        println!("wall time {:.0} ms", timing.total_ms);
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_scan(cli: &Cli, class: &str, p: Option<u64>, corpus: Option<&PathBuf>) -> Result<u8> {
    let s = settings(cli, |s| {
        if let Some(c) = corpus {
            s.corpus = Some(c.clone());
        }
    })?;
    let base = ClassId::parse(class, p)?;
    let runner = Runner::new(s)?;
    let orders = runner.scan_allowlist(&base)?;
    if cli.json {
        print_json(&serde_json::json!({
            "class": base.to_string(),
            "corpus": runner.corpus().id,
            "orders": orders,
        }));
    } else {
        println!("# {} over corpus `{}`", base, runner.corpus().id);
        print!("{}", render_allowlist(&orders));
    }
    Ok(0)
}

fn cmd_cache(cli: &Cli, action: &CacheCmd) -> Result<u8> {
    let s = settings(cli, |_| {})?;
    let disk = s
        .disk_cache()
        .ok_or_else(|| Error::Config("no cache directory: pass --cache-dir or set MAXSUB_CACHE_DIR".into()))?;
    match action {
        CacheCmd::Clear => {
            let n = disk.clear()?;
            if cli.json {
                print_json(&serde_json::json!({ "removed": n }));
            } else {
                println!("removed {n} entries from {}", disk.dir().display());
            }
        }
        CacheCmd::Stats => {
            let st = disk.stats()?;
            if cli.json {
                print_json(&serde_json::json!({
                    "dir": st.dir.display().to_string(),
                    "entries": st.entries,
                    "bytes": st.bytes,
                }));
            } else {
                println!("{}: {} entries, {} bytes", st.dir.display(), st.entries, st.bytes);
            }
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Info { group } => cmd_info(cli, group),
        Command::Max { group } => cmd_max(cli, group, false, false),
        Command::Max2 { group, strict } => cmd_max(cli, group, true, *strict),
        Command::Classify { group, class, p } => cmd_classify(cli, group, class, *p),
        Command::Functor {
            action:
                FunctorCmd::Eval {
                    expr,
                    group,
                    p,
                    caret,
                    e1,
                },
        } => cmd_functor(cli, expr, group, *p, *caret, *e1),
        Command::Tables { ids } => cmd_tables(cli, ids),
        Command::Verify {
            suite,
            corpus,
            semantics,
            e1,
            out,
            verbose,
        } => cmd_verify(cli, suite, corpus.as_ref(), *semantics, *e1, out.as_ref(), *verbose),
        Command::ScanAllowlist { class, p, corpus } => cmd_scan(cli, class, *p, corpus.as_ref()),
        Command::Cache { action } => cmd_cache(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
