//! Run settings and the TOML configuration file that overrides them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::cache::{DiskCache, Engine, CACHE_ENV};
use super::corpus::Corpus;
use crate::classes::parse_allowlist;
use crate::error::{Error, Result};
use crate::functors::{Caret, E1Reading};
use crate::lattice::DEFAULT_BOUND;

/// An allowlist given inline as orders or as a path to an allowlist file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AllowSource {
    Orders(Vec<u64>),
    File(PathBuf),
}

/// Resolved settings for a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub caret: Caret,
    pub e1: E1Reading,
    /// Also run the union reading of "^" and the alternative E₁ reading.
    pub semantics_both: bool,
    pub bound: u128,
    /// Lemma scans cover groups up to this order.
    pub lemma_order_limit: u128,
    /// Randomized chief series per group in the series suite.
    pub jh_trials: usize,
    /// Corpus manifest; the default corpus when absent.
    pub corpus: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub cache: bool,
    /// Explicit allowlists keyed by base class, e.g. `Fdoubleprime(11)`.
    pub allowlists: BTreeMap<String, AllowSource>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            caret: Caret::Intersection,
            e1: E1Reading::PowerOfP,
            semantics_both: false,
            bound: DEFAULT_BOUND,
            lemma_order_limit: 2000,
            jh_trials: 10,
            corpus: None,
            cache_dir: None,
            cache: true,
            allowlists: BTreeMap::new(),
        }
    }
}

/// Configuration file contents; every present field overrides the settings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub caret: Option<Caret>,
    pub e1: Option<E1Reading>,
    pub semantics_both: Option<bool>,
    pub bound: Option<u64>,
    pub lemma_order_limit: Option<u64>,
    pub jh_trials: Option<usize>,
    pub corpus: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub cache: Option<bool>,
    #[serde(default)]
    pub allowlists: BTreeMap<String, AllowSource>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a configuration file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Config::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = cfg.corpus.as_mut() {
            rebase(p);
        }
        if let Some(p) = cfg.cache_dir.as_mut() {
            rebase(p);
        }
        for src in cfg.allowlists.values_mut() {
            if let AllowSource::File(p) = src {
                rebase(p);
            }
        }
        Ok(cfg)
    }

    pub fn apply(&self, s: &mut Settings) {
        if let Some(c) = self.caret {
            s.caret = c;
        }
        if let Some(e) = self.e1 {
            s.e1 = e;
        }
        if let Some(b) = self.semantics_both {
            s.semantics_both = b;
        }
        if let Some(b) = self.bound {
            s.bound = b as u128;
        }
        if let Some(l) = self.lemma_order_limit {
            s.lemma_order_limit = l as u128;
        }
        if let Some(t) = self.jh_trials {
            s.jh_trials = t;
        }
        if let Some(c) = &self.corpus {
            s.corpus = Some(c.clone());
        }
        if let Some(d) = &self.cache_dir {
            s.cache_dir = Some(d.clone());
        }
        if let Some(c) = self.cache {
            s.cache = c;
        }
        for (k, v) in &self.allowlists {
            s.allowlists.insert(k.clone(), v.clone());
        }
    }
}

impl Settings {
    /// Cache directory from the settings, else from the environment.
    pub fn disk_cache(&self) -> Option<DiskCache> {
        if !self.cache {
            return None;
        }
        match &self.cache_dir {
            Some(d) => Some(DiskCache::new(d)),
            None => std::env::var_os(CACHE_ENV).map(DiskCache::new),
        }
    }

    pub fn engine(&self) -> Engine {
        Engine::new(self.bound, self.disk_cache())
    }

    pub fn load_corpus(&self) -> Result<Corpus> {
        match &self.corpus {
            Some(p) => Corpus::from_manifest(p),
            None => Corpus::default_corpus(),
        }
    }

    /// Explicit allowlists with files read and validated.
    pub fn explicit_allowlists(&self) -> Result<BTreeMap<String, (Vec<u64>, String)>> {
        let mut out = BTreeMap::new();
        for (k, src) in &self.allowlists {
            let entry = match src {
                AllowSource::Orders(o) => {
                    let text: String = o.iter().map(|x| format!("{x}\n")).collect();
                    (parse_allowlist(&text)?.into_iter().collect(), "explicit".to_string())
                }
                AllowSource::File(p) => {
                    let text = fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
                    (
                        parse_allowlist(&text)?.into_iter().collect(),
                        format!("file {}", p.display()),
                    )
                }
            };
            out.insert(k.clone(), entry);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_overrides_settings() {
        let cfg = Config::parse(
            "caret = \"union\"\ne1 = \"any-prime-power\"\nbound = 500\n[allowlists]\n\"Jpr\" = [60, 168]\n",
        )
        .unwrap();
        let mut s = Settings::default();
        cfg.apply(&mut s);
        assert_eq!(s.caret, Caret::Union);
        assert_eq!(s.e1, E1Reading::AnyPrimePower);
        assert_eq!(s.bound, 500);
        assert_eq!(s.lemma_order_limit, 2000);
        let al = s.explicit_allowlists().unwrap();
        assert_eq!(al["Jpr"].0, vec![60, 168]);
    }

    #[test]
    fn unknown_keys_and_bad_orders_are_rejected() {
        assert!(matches!(Config::parse("colour = 1"), Err(Error::Config(_))));
        let cfg = Config::parse("[allowlists]\n\"Jpr\" = [61]\n").unwrap();
        let mut s = Settings::default();
        cfg.apply(&mut s);
        assert!(s.explicit_allowlists().is_err());
    }
}
