//! On-disk cache of `A_{g,r}`.
//!
//! One plain-text file per `(g, r)`: a few `key: value` header lines, a
//! blank line, then the polynomial in canonical form. Entries are written to
//! a temporary file in the cache directory and renamed into place, so
//! readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use higgs_betti_core::algebra::LaurentPoly;
use higgs_betti_core::mellit::APoly;
use higgs_betti_core::ENGINE_VERSION;

/// Overrides the cache directory.
pub const CACHE_ENV: &str = "HIGGS_BETTI_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache io error at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed cache entry {path}: {why}")]
    Malformed { path: PathBuf, why: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub g: usize,
    pub r: usize,
    pub engine_version: String,
    pub created: u64,
    pub poly: String,
    pub path: PathBuf,
}

impl CacheEntry {
    pub fn a_poly(&self) -> Result<APoly, CacheError> {
        let value = LaurentPoly::parse_canonical(self.g, &self.poly).map_err(|e| CacheError::Malformed {
            path: self.path.clone(),
            why: e.to_string(),
        })?;
        Ok(APoly {
            genus: self.g,
            rank: self.r,
            value,
        })
    }

    pub fn is_current(&self) -> bool {
        self.engine_version == ENGINE_VERSION
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$HIGGS_BETTI_CACHE`, else the user cache directory.
    pub fn from_env() -> Self {
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Cache::new(dir);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        Cache::new(base.join("higgs-betti"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: usize, r: usize) -> PathBuf {
        self.dir.join(format!("a_g{g}_r{r}.txt"))
    }

    fn read(path: &Path) -> Result<CacheEntry, CacheError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let bad = |why: &str| CacheError::Malformed {
            path: path.to_path_buf(),
            why: why.to_string(),
        };
        let (header, body) = text
            .split_once("\n\n")
            .ok_or_else(|| bad("missing blank line after header"))?;
        let mut g = None;
        let mut r = None;
        let mut version = None;
        let mut created = None;
        for line in header.lines() {
            let (k, v) = line.split_once(": ").ok_or_else(|| bad("header line without `: `"))?;
            match k {
                "g" => g = v.parse().ok(),
                "r" => r = v.parse().ok(),
                "engine" => version = Some(v.to_string()),
                "created" => created = v.parse().ok(),
                _ => {}
            }
        }
        Ok(CacheEntry {
            g: g.ok_or_else(|| bad("missing g"))?,
            r: r.ok_or_else(|| bad("missing r"))?,
            engine_version: version.ok_or_else(|| bad("missing engine"))?,
            created: created.ok_or_else(|| bad("missing created"))?,
            poly: body.trim().to_string(),
            path: path.to_path_buf(),
        })
    }

    /// A current entry for `(g, r)`, if there is one. Entries from another
    /// engine version are misses; unreadable entries are errors.
    pub fn load(&self, g: usize, r: usize) -> Result<Option<APoly>, CacheError> {
        let path = self.path_for(g, r);
        if !path.exists() {
            return Ok(None);
        }
        let entry = Self::read(&path)?;
        if !entry.is_current() {
            return Ok(None);
        }
        if (entry.g, entry.r) != (g, r) {
            return Err(CacheError::Malformed {
                path,
                why: format!("header says g={} r={}", entry.g, entry.r),
            });
        }
        entry.a_poly().map(Some)
    }

    pub fn store(&self, a: &APoly) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let text = format!(
            "g: {}\nr: {}\nengine: {}\ncreated: {}\n\n{}\n",
            a.genus,
            a.rank,
            ENGINE_VERSION,
            created,
            a.value.to_canonical()
        );
        let path = self.path_for(a.genus, a.rank);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io_err(&self.dir))?;
        tmp.write_all(text.as_bytes()).map_err(io_err(tmp.path()))?;
        tmp.persist(&path)
            .map_err(|e| CacheError::Io { path, source: e.error })?;
        Ok(())
    }

    /// Every entry, sorted by `(g, r)`. Unreadable files are returned as errors.
    pub fn list(&self) -> Vec<Result<CacheEntry, CacheError>> {
        let Ok(dir) = fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut paths: Vec<PathBuf> = dir
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("a_g") && n.ends_with(".txt"))
            })
            .collect();
        paths.sort();
        let mut out: Vec<_> = paths.iter().map(|p| Self::read(p)).collect();
        out.sort_by_key(|e| e.as_ref().map(|e| (e.g, e.r)).unwrap_or((usize::MAX, usize::MAX)));
        out
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let mut n = 0;
        for entry in self.list() {
            let path = match entry {
                Ok(e) => e.path,
                Err(CacheError::Malformed { path, .. }) | Err(CacheError::Io { path, .. }) => path,
            };
            fs::remove_file(&path).map_err(io_err(&path))?;
            n += 1;
        }
        Ok(n)
    }
}
