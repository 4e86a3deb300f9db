//! Content-addressed result cache.
//!
//! Each entry lives in `<dir>/<sha256>.json`, where the hash covers the
//! schema version, the operation and its parameters. The file repeats all
//! three, so a renamed or stale file is never served.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub schema: u32,
    pub op: String,
    pub params: String,
    pub value: Value,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn key(op: &str, params: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("treecoeff-cache/v{SCHEMA_VERSION}\n{op}\n{params}").as_bytes());
    hex::encode(h.finalize())
}

fn is_entry_name(path: &Path) -> bool {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    path.extension().and_then(|e| e.to_str()) == Some("json")
        && stem.len() == 64
        && stem.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

impl Cache {
    pub fn open(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored value, if present and written for this exact request.
    pub fn get(&self, op: &str, params: &str) -> Option<Value> {
        let bytes = fs::read(self.path(&key(op, params))).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        (entry.schema == SCHEMA_VERSION && entry.op == op && entry.params == params).then_some(entry.value)
    }

    pub fn put(&self, op: &str, params: &str, value: Value) -> CliResult<()> {
        let entry = Entry {
            schema: SCHEMA_VERSION,
            op: op.to_string(),
            params: params.to_string(),
            value,
        };
        let bytes = serde_json::to_vec(&entry).expect("cache entries serialize");
        write_atomic(&self.path(&key(op, params)), &bytes)
    }

    /// Every `<key>.json` file with its parsed entry, sorted by file name.
    /// Other files in the directory are not entries and are skipped.
    pub fn entries(&self) -> CliResult<Vec<(PathBuf, Result<Entry, String>)>> {
        let mut out = Vec::new();
        for item in fs::read_dir(&self.dir).map_err(|e| CliError::io(&self.dir, e))? {
            let path = item.map_err(|e| CliError::io(&self.dir, e))?.path();
            if !is_entry_name(&path) {
                continue;
            }
            let parsed = fs::read(&path)
                .map_err(|e| e.to_string())
                .and_then(|b| serde_json::from_slice::<Entry>(&b).map_err(|e| e.to_string()));
            out.push((path, parsed));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}
