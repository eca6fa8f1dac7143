use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// First line of every cache file. Files with another header are ignored
/// and rewritten.
pub const CACHE_HEADER: &str = "khsq-cache v1";

/// A content-addressed store of computed results, keyed by a hash of the
/// diagram's PD code and the computation parameters.
#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    /// The hex SHA-256 of the header, the kind and the parts.
    pub fn key(kind: &str, parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(CACHE_HEADER.as_bytes());
        h.update([0]);
        h.update(kind.as_bytes());
        for p in parts {
            h.update([0]);
            h.update(p.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.khsq")))
    }

    fn read<T: DeserializeOwned>(path: &Path, kind: &str) -> Option<T> {
        let text = fs::read_to_string(path).ok()?;
        let mut lines = text.splitn(3, '\n');
        if lines.next()? != CACHE_HEADER || lines.next()? != kind {
            return None;
        }
        serde_json::from_str(lines.next()?).ok()
    }

    fn write<T: Serialize>(dir: &Path, path: &Path, kind: &str, value: &T) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Input(format!("cache directory {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let body = serde_json::to_string(value).map_err(|e| CliError::internal("cache", e))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, format!("{CACHE_HEADER}\n{kind}\n{body}")).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    /// The cached value for `(kind, parts)`, if present and readable.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, parts: &[&str]) -> Option<T> {
        Cache::read(&self.path(&Cache::key(kind, parts))?, kind)
    }

    /// Stores a value; does nothing without a cache directory.
    pub fn put<T: Serialize>(&self, kind: &str, parts: &[&str], value: &T) -> Result<(), CliError> {
        match (self.dir.as_deref(), self.path(&Cache::key(kind, parts))) {
            (Some(dir), Some(path)) => Cache::write(dir, &path, kind, value),
            _ => Ok(()),
        }
    }

    /// Returns the cached value for `(kind, parts)`, computing and storing
    /// it on a miss.
    pub fn get_or_compute<T, F>(&self, kind: &str, parts: &[&str], compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.get(kind, parts) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(kind, parts, &v)?;
        Ok(v)
    }
}
