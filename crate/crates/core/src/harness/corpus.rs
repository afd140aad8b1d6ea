//! Group files, corpus manifests and the default corpus.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::named::named_group;
use crate::error::{Error, Result};
use crate::perm::{Group, Permutation};

/// One group as written in a group file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub expected_order: Option<u128>,
    pub tags: BTreeSet<String>,
}

impl GroupRecord {
    pub fn build(&self) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse(s, Some(self.degree)))
            .collect::<Result<Vec<_>>>()?;
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            gens
        };
        let g = Group::new(gens)?.named(self.name.clone());
        if let Some(o) = self.expected_order {
            if g.order() != o {
                return Err(Error::Corpus(format!(
                    "group `{}` has order {} but the file says {o}",
                    self.name,
                    g.order()
                )));
            }
        }
        Ok(g)
    }

    pub fn from_group(g: &Group, tags: &BTreeSet<String>) -> GroupRecord {
        GroupRecord {
            name: g.name().unwrap_or("G").to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
            expected_order: Some(g.order()),
            tags: tags.clone(),
        }
    }
}

fn corpus_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Corpus(format!("line {line}: {}", msg.into()))
}

/// Parses a group file. Each `name` line starts a new record; `degree`,
/// `gen`, `order` and `tag` lines fill it in.
pub fn parse_group_file(text: &str) -> Result<Vec<GroupRecord>> {
    let mut out: Vec<GroupRecord> = Vec::new();
    let mut degree_seen: Vec<bool> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        if key == "name" {
            if rest.is_empty() {
                return Err(corpus_err(line_no, "empty name"));
            }
            out.push(GroupRecord {
                name: rest.to_string(),
                degree: 0,
                generators: Vec::new(),
                expected_order: None,
                tags: BTreeSet::new(),
            });
            degree_seen.push(false);
            continue;
        }
        let rec = out
            .last_mut()
            .ok_or_else(|| corpus_err(line_no, format!("`{key}` before any `name`")))?;
        match key {
            "degree" => {
                rec.degree = rest
                    .parse()
                    .map_err(|_| corpus_err(line_no, format!("bad degree `{rest}`")))?;
                if rec.degree == 0 {
                    return Err(corpus_err(line_no, "degree must be positive"));
                }
                *degree_seen.last_mut().expect("record exists") = true;
            }
            "gen" => rec.generators.push(rest.to_string()),
            "order" => {
                rec.expected_order = Some(
                    rest.parse()
                        .map_err(|_| corpus_err(line_no, format!("bad order `{rest}`")))?,
                )
            }
            "tag" => {
                rec.tags.insert(rest.to_string());
            }
            other => return Err(corpus_err(line_no, format!("unknown key `{other}`"))),
        }
    }
    if let Some(pos) = degree_seen.iter().position(|&d| !d) {
        return Err(Error::Corpus(format!("group `{}` has no degree", out[pos].name)));
    }
    for rec in &out {
        for g in &rec.generators {
            Permutation::parse(g, Some(rec.degree)).map_err(|e| Error::Corpus(format!("group `{}`: {e}", rec.name)))?;
        }
    }
    Ok(out)
}

pub fn render_group_file(records: &[GroupRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&format!("name {}\ndegree {}\n", r.name, r.degree));
        for g in &r.generators {
            s.push_str(&format!("gen {g}\n"));
        }
        if let Some(o) = r.expected_order {
            s.push_str(&format!("order {o}\n"));
        }
        for t in &r.tags {
            s.push_str(&format!("tag {t}\n"));
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
    pub tags: BTreeSet<String>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub id: String,
    pub entries: Vec<CorpusEntry>,
}

/// Groups of the default corpus, by constructor spec.
pub const DEFAULT_SPECS: &[&str] = &[
    "sym(2)",
    "sym(3)",
    "sym(4)",
    "sym(5)",
    "sym(6)",
    "sym(7)",
    "alt(3)",
    "alt(4)",
    "alt(5)",
    "alt(6)",
    "alt(7)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "dihedral(6)",
    "dihedral(8)",
    "dihedral(10)",
    "dihedral(12)",
    "dihedral(14)",
    "dihedral(16)",
    "psl2(2)",
    "psl2(3)",
    "psl2(4)",
    "psl2(5)",
    "psl2(7)",
    "psl2(8)",
    "psl2(9)",
    "psl2(11)",
    "psl2(13)",
    "psl2(16)",
    "mathieu11",
    "product(cyclic(2), cyclic(2))",
    "product(cyclic(3), cyclic(3))",
    "product(cyclic(2), sym(3))",
    "product(sym(3), sym(3))",
    "product(cyclic(2), alt(4))",
    "product(cyclic(3), alt(4))",
    "product(cyclic(2), dihedral(8))",
    "product(cyclic(3), dihedral(10))",
    "product(cyclic(2), sym(4))",
    "product(sym(3), sym(4))",
    "product(sym(4), sym(4))",
    "product(cyclic(2), alt(5))",
    "product(cyclic(3), alt(5))",
    "product(sym(3), alt(5))",
    "product(alt(4), alt(5))",
    "product(sym(4), alt(5))",
    "product(cyclic(2), sym(5))",
    "product(sym(3), sym(5))",
    "product(cyclic(2), psl2(7))",
    "product(cyclic(3), psl2(7))",
    "product(sym(3), psl2(7))",
    "product(cyclic(2), alt(6))",
    "product(cyclic(2), psl2(8))",
    "product(cyclic(2), psl2(11))",
    "product(cyclic(2), sym(6))",
];

fn family_tag(spec: &str) -> String {
    spec.split('(').next().unwrap_or(spec).trim().to_string()
}

impl Corpus {
    pub fn from_specs<S: AsRef<str>>(id: &str, specs: &[S]) -> Result<Corpus> {
        let entries = specs
            .iter()
            .map(|s| {
                let g = named_group(s.as_ref())?;
                Ok(CorpusEntry {
                    name: g.name().unwrap_or(s.as_ref()).to_string(),
                    group: g,
                    tags: [family_tag(s.as_ref())].into_iter().collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            id: id.to_string(),
            entries,
        })
    }

    pub fn default_corpus() -> Result<Corpus> {
        Corpus::from_specs("default", DEFAULT_SPECS)
    }

    /// Reads a manifest: `id <name>`, `group <spec>` and `file <path>` lines,
    /// with paths relative to the manifest.
    pub fn from_manifest(path: &Path) -> Result<Corpus> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut corpus = Corpus {
            id: path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "corpus".into()),
            entries: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(char::is_whitespace)
                .map(|(k, r)| (k, r.trim()))
                .ok_or_else(|| corpus_err(i + 1, format!("expected `<key> <value>`, found `{line}`")))?;
            match key {
                "id" => corpus.id = rest.to_string(),
                "group" => {
                    let g = named_group(rest).map_err(|e| corpus_err(i + 1, e.to_string()))?;
                    corpus.entries.push(CorpusEntry {
                        name: g.name().unwrap_or(rest).to_string(),
                        group: g,
                        tags: [family_tag(rest)].into_iter().collect(),
                    });
                }
                "file" => {
                    let p = base.join(rest);
                    let body =
                        std::fs::read_to_string(&p).map_err(|e| Error::Corpus(format!("{}: {e}", p.display())))?;
                    for rec in parse_group_file(&body)? {
                        corpus.entries.push(CorpusEntry {
                            name: rec.name.clone(),
                            group: rec.build()?,
                            tags: rec.tags.clone(),
                        });
                    }
                }
                other => return Err(corpus_err(i + 1, format!("unknown key `{other}`"))),
            }
        }
        Ok(corpus)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
