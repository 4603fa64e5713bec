//! On-disk store of [`KLTable`]s, one JSON document per anchor.
//!
//! Anchors are normalized to minimum value zero before keying, so every
//! global shift of an anchor shares one entry. Writers hold an exclusive
//! advisory lock on `.lock` in the cache directory, readers a shared one.

use std::fs::{self, File, OpenOptions, TryLockError};
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::KLTable;
use crate::error::{Error, Result};
use crate::laurent::LaurentQ;
use crate::weights::WeightFunction;

pub const CACHE_VERSION: u64 = 1;

const LOCK_FILE: &str = ".lock";
const STATS_FILE: &str = "stats.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Miss,
    /// An entry exists under an older schema version; it was ignored.
    Stale,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub file: String,
    pub anchor: String,
    pub depth: u64,
    pub version: u64,
    pub members: usize,
    pub bytes: u64,
}

impl CacheEntry {
    pub fn is_current(&self) -> bool {
        self.version == CACHE_VERSION
    }

    pub fn to_json(&self) -> Value {
        json!({
            "file": self.file,
            "anchor": self.anchor,
            "depth": self.depth,
            "version": self.version,
            "current": self.is_current(),
            "members": self.members,
            "bytes": self.bytes,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub stale: u64,
    pub entries: usize,
}

impl CacheStats {
    pub fn to_json(&self) -> Value {
        json!({"hits": self.hits, "misses": self.misses, "stale": self.stale, "entries": self.entries})
    }
}

pub struct KlCache {
    dir: PathBuf,
}

fn io_err(e: std::io::Error) -> Error {
    Error::CacheIo(e.to_string())
}

struct LockGuard(File);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

impl KlCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(io_err)?;
        Ok(KlCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn lock(&self, exclusive: bool) -> Result<LockGuard> {
        let path = self.dir.join(LOCK_FILE);
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(io_err)?;
        let res = if exclusive { file.try_lock() } else { file.try_lock_shared() };
        match res {
            Ok(()) => Ok(LockGuard(file)),
            Err(TryLockError::WouldBlock) => Err(Error::CacheLocked(path.display().to_string())),
            Err(TryLockError::Error(e)) => Err(io_err(e)),
        }
    }

    /// Holds the exclusive lock until the returned guard is dropped.
    pub fn hold_exclusive(&self) -> Result<impl Drop> {
        self.lock(true)
    }

    pub fn file_name(anchor: &WeightFunction, depth: u32) -> String {
        let label: String = anchor
            .to_string()
            .chars()
            .map(|c| match c {
                '|' => 'p',
                ',' => '_',
                '-' => 'm',
                c => c,
            })
            .collect();
        let s = anchor.shape();
        format!("kl_{}x{}_d{}_{}.json", s.m, s.n, depth, label)
    }

    /// The table for `anchor` at window depth `depth`, loaded or computed.
    pub fn table(&self, anchor: &WeightFunction, depth: u32) -> Result<(KLTable, Outcome)> {
        let _guard = self.lock(true)?;
        let shift = anchor.min_value().unwrap_or(0);
        let key = anchor.shifted(-shift);
        let path = self.dir.join(Self::file_name(&key, depth));
        let mut outcome = Outcome::Miss;
        if path.exists() {
            let doc = read_json(&path)?;
            if doc.get("version").and_then(Value::as_u64) == Some(CACHE_VERSION) {
                let table = table_from_json(&doc)?;
                if table.anchor != key || table.depth != depth {
                    return Err(Error::CacheIo(format!("{} does not hold {key}", path.display())));
                }
                self.bump_stats(Outcome::Hit)?;
                return Ok((table.shifted(shift), Outcome::Hit));
            }
            outcome = Outcome::Stale;
        }
        let table = KLTable::compute(&key, depth)?;
        if outcome == Outcome::Miss {
            write_atomic(&path, &serde_json::to_string_pretty(&table_to_json(&table)).unwrap())?;
        }
        self.bump_stats(outcome)?;
        Ok((table.shifted(shift), outcome))
    }

    fn entry_paths(&self) -> Result<Vec<PathBuf>> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)
            .map_err(io_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("kl_") && n.ends_with(".json"))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        let _guard = self.lock(false)?;
        self.entry_paths()?
            .into_iter()
            .map(|p| {
                let doc = read_json(&p)?;
                let bytes = fs::metadata(&p).map_err(io_err)?.len();
                Ok(CacheEntry {
                    file: p.file_name().unwrap().to_string_lossy().into_owned(),
                    anchor: doc.get("anchor").and_then(Value::as_str).unwrap_or("?").to_string(),
                    depth: doc.get("depth").and_then(Value::as_u64).unwrap_or(0),
                    version: doc.get("version").and_then(Value::as_u64).unwrap_or(0),
                    members: doc.get("members").and_then(Value::as_array).map_or(0, Vec::len),
                    bytes,
                })
            })
            .collect()
    }

    /// Removes all entries and statistics; returns the number of entries removed.
    pub fn clear(&self) -> Result<usize> {
        let _guard = self.lock(true)?;
        let paths = self.entry_paths()?;
        for p in &paths {
            fs::remove_file(p).map_err(io_err)?;
        }
        let stats = self.dir.join(STATS_FILE);
        if stats.exists() {
            fs::remove_file(stats).map_err(io_err)?;
        }
        Ok(paths.len())
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let _guard = self.lock(false)?;
        let mut stats = self.read_stats()?;
        stats.entries = self.entry_paths()?.len();
        Ok(stats)
    }

    fn read_stats(&self) -> Result<CacheStats> {
        let path = self.dir.join(STATS_FILE);
        if !path.exists() {
            return Ok(CacheStats::default());
        }
        let doc = read_json(&path)?;
        let get = |k: &str| doc.get(k).and_then(Value::as_u64).unwrap_or(0);
        Ok(CacheStats {
            hits: get("hits"),
            misses: get("misses"),
            stale: get("stale"),
            entries: 0,
        })
    }

    fn bump_stats(&self, outcome: Outcome) -> Result<()> {
        let mut stats = self.read_stats()?;
        match outcome {
            Outcome::Hit => stats.hits += 1,
            Outcome::Miss => stats.misses += 1,
            Outcome::Stale => stats.stale += 1,
        }
        let doc = json!({"hits": stats.hits, "misses": stats.misses, "stale": stats.stale});
        write_atomic(&self.dir.join(STATS_FILE), &doc.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(io_err)?;
    serde_json::from_str(&text).map_err(|e| Error::CacheIo(format!("{}: {e}", path.display())))
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp).map_err(io_err)?;
        f.write_all(text.as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
    }
    fs::rename(&tmp, path).map_err(io_err)
}

fn matrix_json<T: ToString>(m: &[Vec<T>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn table_to_json(t: &KLTable) -> Value {
    json!({
        "version": CACHE_VERSION,
        "anchor": t.anchor.to_string(),
        "depth": t.depth,
        "members": t.members.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "u": matrix_json(&t.u),
        "l_at_one": matrix_json(&t.l_at_one),
        "twisted_u_at_one": matrix_json(&t.twisted_u_at_one),
    })
}

fn parse_matrix<T>(v: Option<&Value>, len: usize, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<Vec<T>>> {
    let bad = || Error::CacheIo("malformed matrix in cache entry".into());
    let rows = v.and_then(Value::as_array).ok_or_else(bad)?;
    if rows.len() != len {
        return Err(bad());
    }
    rows.iter()
        .map(|row| {
            let row = row.as_array().filter(|r| r.len() == len).ok_or_else(bad)?;
            row.iter()
                .map(|x| x.as_str().and_then(&parse).ok_or_else(bad))
                .collect()
        })
        .collect()
}

pub fn table_from_json(doc: &Value) -> Result<KLTable> {
    let bad = |what: &str| Error::CacheIo(format!("malformed cache entry: {what}"));
    let anchor: WeightFunction = doc
        .get("anchor")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("anchor"))?
        .parse()?;
    let depth = doc.get("depth").and_then(Value::as_u64).ok_or_else(|| bad("depth"))? as u32;
    let members: Vec<WeightFunction> = doc
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("members"))?
        .iter()
        .map(|m| m.as_str().ok_or_else(|| bad("member")).and_then(|s| s.parse()))
        .collect::<Result<_>>()?;
    let len = members.len();
    Ok(KLTable {
        anchor,
        depth,
        u: parse_matrix(doc.get("u"), len, |s| s.parse::<LaurentQ>().ok())?,
        l_at_one: parse_matrix(doc.get("l_at_one"), len, |s| s.parse::<BigInt>().ok())?,
        twisted_u_at_one: parse_matrix(doc.get("twisted_u_at_one"), len, |s| s.parse::<BigInt>().ok())?,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_hits() {
        let dir = tempfile::tempdir().unwrap();
        let cache = KlCache::open(dir.path()).unwrap();
        assert!(cache.list().unwrap().is_empty());
        let f: WeightFunction = "5|5".parse().unwrap();
        let (t1, o1) = cache.table(&f, 3).unwrap();
        assert_eq!(o1, Outcome::Miss);
        let (t2, o2) = cache.table(&f.shifted(-7), 3).unwrap();
        assert_eq!(o2, Outcome::Hit);
        assert_eq!(t2, t1.shifted(-7));
        assert_eq!(t1, KLTable::compute(&f, 3).unwrap());
        let stats = cache.stats().unwrap();
        assert_eq!((stats.hits, stats.misses, stats.entries), (1, 1, 1));
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }

    #[test]
    fn stale_entries_are_not_used() {
        let dir = tempfile::tempdir().unwrap();
        let cache = KlCache::open(dir.path()).unwrap();
        let f: WeightFunction = "0|0".parse().unwrap();
        cache.table(&f, 2).unwrap();
        let path = dir.path().join(KlCache::file_name(&f, 2));
        let mut doc = read_json(&path).unwrap();
        doc["version"] = json!(0);
        doc["u"] = json!([]);
        fs::write(&path, doc.to_string()).unwrap();
        let (t, o) = cache.table(&f, 2).unwrap();
        assert_eq!(o, Outcome::Stale);
        assert_eq!(t, KLTable::compute(&f, 2).unwrap());
        assert!(!cache.list().unwrap()[0].is_current());
    }

    #[test]
    fn locked_cache_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = KlCache::open(dir.path()).unwrap();
        let other = File::open(dir.path().join(LOCK_FILE)).or_else(|_| {
            File::create(dir.path().join(LOCK_FILE))
        }).unwrap();
        other.try_lock().unwrap();
        assert!(matches!(cache.stats(), Err(Error::CacheLocked(_))));
        other.unlock().unwrap();
        assert!(cache.stats().is_ok());
    }
}
