//! On-disk result cache: one JSON document per key plus an append-only
//! `index.ndjson`.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::Rational;

pub const CACHE_ENV: &str = "GW_CACHE_DIR";

/// Exact fraction as decimal digit strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Fraction {
    fn from(r: &Rational) -> Self {
        Fraction {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl Fraction {
    pub fn to_rational(&self) -> Option<Rational> {
        let num = self.num.parse().ok()?;
        let den: num_bigint::BigInt = self.den.parse().ok()?;
        if den == num_bigint::BigInt::from(0) {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub query: serde_json::Value,
    pub value: Fraction,
    pub seeds: Vec<u64>,
    pub graph_count: u64,
    pub engine_version: String,
    pub created_at: String,
}

pub fn cache_key(canonical_query: &str, engine_version: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(engine_version.as_bytes());
    hasher.update(b"\n");
    hasher.update(canonical_query.as_bytes());
    hex::encode(hasher.finalize())
}

/// `--cache-dir`, else `$GW_CACHE_DIR`, else the platform cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(dir).join("gwloc");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("gwloc");
    }
    std::env::temp_dir().join("gwloc")
}

pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize)]
struct IndexLine<'a> {
    key: &'a str,
    query: &'a serde_json::Value,
    created_at: &'a str,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A record stored under `key`, if present and readable.
    pub fn get(&self, key: &str) -> Option<CacheRecord> {
        let text = fs::read_to_string(self.record_path(key)).ok()?;
        let record: CacheRecord = serde_json::from_str(&text).ok()?;
        (record.key == key).then_some(record)
    }

    /// Writes the record atomically (temp file, then rename) and appends to
    /// the index.
    pub fn put(&self, record: &CacheRecord) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let final_path = self.record_path(&record.key);
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", record.key, std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(record)?)?;
        fs::rename(&tmp, &final_path)?;
        let line = serde_json::to_string(&IndexLine {
            key: &record.key,
            query: &record.query,
            created_at: &record.created_at,
        })?;
        let mut index = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join("index.ndjson"))?;
        writeln!(index, "{line}")
    }
}
