//! On-disk memo of homology tables, keyed by input hash, complex and window.
//! Enabled by setting `DGCYC_CACHE_DIR`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::report::{sha256_hex, ENGINE_VERSION};

pub const CACHE_ENV: &str = "DGCYC_CACHE_DIR";

/// Homology dimensions per `(d, w)`.
pub type Table = BTreeMap<(i64, u32), usize>;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    name: String,
    cells: Vec<(i64, u32, usize)>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(format!("{ENGINE_VERSION}\0{key}").as_bytes())))
    }

    /// A stored table, or `None` on a miss or an unreadable entry.
    pub fn get(&self, key: &str) -> Option<(String, Table)> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.key == key).then(|| (e.name, e.cells.into_iter().map(|(d, w, n)| ((d, w), n)).collect()))
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn put(&self, key: &str, name: &str, table: &Table) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let e = Entry {
            key: key.to_string(),
            name: name.to_string(),
            cells: table.iter().map(|(&(d, w), &n)| (d, w, n)).collect(),
        };
        let target = self.path(key);
        let tmp = target.with_extension(format!("tmp.{}.{:?}", std::process::id(), std::thread::current().id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&e).map_err(std::io::Error::other)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &target)
    }
}
