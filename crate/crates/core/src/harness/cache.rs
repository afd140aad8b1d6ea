//! Lattice analyses kept in memory per group and, optionally, on disk keyed
//! by the group's generators and the algorithm version.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_subgroups_bounded, restore, LatticeSnapshot, Restored, Strata, StrataParts, DEFAULT_BOUND,
};
use crate::perm::Group;

/// Bumped whenever enumeration or class ordering changes.
pub const ALGORITHM_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MAXSUB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    degree: usize,
    generators: Vec<Vec<usize>>,
    checksum: String,
    data: Restored,
    #[serde(default)]
    strata: Option<StrataParts>,
}

fn checksum(data: &Restored, strata: &Option<StrataParts>) -> String {
    let bytes = serde_json::to_vec(&(data, strata)).expect("cache data serializes");
    hex::encode(Sha256::digest(&bytes))
}

fn generator_images(g: &Group) -> Vec<Vec<usize>> {
    g.generators().iter().map(|p| p.one_based_images()).collect()
}

/// Digest of the version, degree and generators in order (the order fixes
/// the element numbering).
pub fn lattice_key(version: u32, g: &Group) -> String {
    let mut h = Sha256::new();
    h.update(format!("maxsub-lattice:v{version}:{}:", g.degree()));
    for p in g.generators() {
        for x in p.images() {
            h.update(x.to_le_bytes());
        }
        h.update(b";");
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub dir: PathBuf,
    pub entries: usize,
    pub bytes: u64,
}

/// Snapshot store on disk. Entries are written atomically; unreadable or
/// stale entries are ignored and overwritten.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
    version: u32,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> DiskCache {
        DiskCache {
            dir: dir.into(),
            version: ALGORITHM_VERSION,
        }
    }

    pub fn from_env() -> Option<DiskCache> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(DiskCache::new)
    }

    /// Same directory with a different algorithm version.
    pub fn with_version(mut self, version: u32) -> DiskCache {
        self.version = version;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, g: &Group) -> String {
        lattice_key(self.version, g)
    }

    fn path(&self, g: &Group) -> PathBuf {
        self.dir.join(format!("{}.json", self.key(g)))
    }

    fn read(&self, g: &Group) -> Option<Entry> {
        let bytes = fs::read(self.path(g)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        if entry.version != self.version
            || entry.degree != g.degree()
            || entry.generators != generator_images(g)
            || entry.checksum != checksum(&entry.data, &entry.strata)
        {
            return None;
        }
        Some(entry)
    }

    pub fn load(&self, g: &Group) -> Option<LatticeSnapshot> {
        restore(g, self.read(g)?.data).ok()
    }

    /// Snapshot and, when the entry holds them, strata.
    fn load_parts(&self, g: &Group) -> Option<(LatticeSnapshot, Option<Strata>)> {
        let entry = self.read(g)?;
        let snap = restore(g, entry.data).ok()?;
        let strata = match entry.strata {
            Some(p) => Some(Strata::from_parts(&snap, p).ok()?),
            None => None,
        };
        Some((snap, strata))
    }

    pub fn store(&self, snap: &LatticeSnapshot) -> Result<()> {
        self.write(snap, None)
    }

    pub fn store_analysis(&self, a: &Analysis) -> Result<()> {
        self.write(&a.snap, Some(a.strata.parts()))
    }

    fn write(&self, snap: &LatticeSnapshot, strata: Option<StrataParts>) -> Result<()> {
        let g = snap.group();
        let data = Restored::capture(snap);
        let entry = Entry {
            version: self.version,
            degree: g.degree(),
            generators: generator_images(g),
            checksum: checksum(&data, &strata),
            data,
            strata,
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path(g);
        let tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(std::io::BufWriter::new(tmp.as_file()), &entry).map_err(|e| Error::Io(e.to_string()))?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        if let Ok(rd) = fs::read_dir(&self.dir) {
            for e in rd.flatten() {
                let p = e.path();
                if p.extension().is_some_and(|x| x == "json") {
                    fs::remove_file(&p)?;
                    n += 1;
                }
            }
        }
        Ok(n)
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let mut stats = CacheStats {
            dir: self.dir.clone(),
            entries: 0,
            bytes: 0,
        };
        if let Ok(rd) = fs::read_dir(&self.dir) {
            for e in rd.flatten() {
                if e.path().extension().is_some_and(|x| x == "json") {
                    stats.entries += 1;
                    stats.bytes += e.metadata()?.len();
                }
            }
        }
        Ok(stats)
    }
}

/// A group's lattice with its strata.
pub struct Analysis {
    pub snap: LatticeSnapshot,
    pub strata: Strata,
}

/// Computes analyses once per group, consulting the disk cache first.
pub struct Engine {
    bound: u128,
    disk: Option<DiskCache>,
    memo: Mutex<HashMap<String, Arc<Analysis>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_BOUND, None)
    }
}

impl Engine {
    pub fn new(bound: u128, disk: Option<DiskCache>) -> Engine {
        Engine {
            bound,
            disk,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn bound(&self) -> u128 {
        self.bound
    }

    pub fn disk(&self) -> Option<&DiskCache> {
        self.disk.as_ref()
    }

    /// Lattice of `g` with every class's maximal subgroups computed.
    pub fn lattice(&self, g: &Group) -> Result<LatticeSnapshot> {
        if let Some(snap) = self.disk.as_ref().and_then(|d| d.load(g)) {
            return Ok(snap);
        }
        let snap = self.enumerate(g)?;
        if let Some(d) = &self.disk {
            d.store(&snap)?;
        }
        Ok(snap)
    }

    fn enumerate(&self, g: &Group) -> Result<LatticeSnapshot> {
        let snap = enumerate_subgroups_bounded(g, self.bound)?;
        for c in 0..snap.classes().len() {
            snap.max_of_rep(c);
        }
        Ok(snap)
    }

    pub fn analyze(&self, g: &Group) -> Result<Arc<Analysis>> {
        let memo_key = lattice_key(ALGORITHM_VERSION, g);
        if let Some(a) = self.memo.lock().expect("memo lock").get(&memo_key) {
            return Ok(a.clone());
        }
        let loaded = self.disk.as_ref().and_then(|d| d.load_parts(g));
        let a = match loaded {
            Some((snap, Some(strata))) => Arc::new(Analysis { snap, strata }),
            other => {
                let snap = match other {
                    Some((snap, None)) => snap,
                    _ => self.enumerate(g)?,
                };
                let strata = snap.strata();
                let a = Arc::new(Analysis { snap, strata });
                if let Some(d) = &self.disk {
                    d.store_analysis(&a)?;
                }
                a
            }
        };
        self.memo
            .lock()
            .expect("memo lock")
            .entry(memo_key)
            .or_insert_with(|| a.clone());
        Ok(a)
    }
}
