//! Persistent JSON-lines cache of character tables, one file per `n`.
//!
//! ```text
//! {"format":"kron-stab-chars","version":1,"n":8,"class_order":"revlex"}
//! {"lambda":[8],"values":["1","1",...]}
//! ```
//!
//! Values are decimal strings. Writes go to a temporary file in the cache
//! directory and are renamed into place, so readers never see partial files.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{classes, CharacterTable};
use crate::error::{Error, Result};
use crate::partitions::{sn_dim, Partition};

pub const CACHE_ENV: &str = "KRONSTAB_CACHE_DIR";
pub const FORMAT: &str = "kron-stab-chars";
pub const VERSION: u32 = 1;
const FILE_PREFIX: &str = "sn_chars_v1_n";

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    n: usize,
    class_order: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Row {
    lambda: Partition,
    values: Vec<String>,
}

/// A directory of cached character tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterCache {
    dir: PathBuf,
}

impl CharacterCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CharacterCache { dir: dir.into() }
    }

    /// `$KRONSTAB_CACHE_DIR`, else the platform cache directory under `kron-stab/`.
    pub fn default_dir() -> PathBuf {
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return PathBuf::from(dir);
        }
        dirs::cache_dir()
            .unwrap_or_else(std::env::temp_dir)
            .join("kron-stab")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("{FILE_PREFIX}{n:02}.jsonl"))
    }

    /// Reads the table for `n` if a valid file exists.
    ///
    /// A missing file is silent; an unreadable or inconsistent one is
    /// reported with a warning and ignored.
    pub fn load(&self, n: usize) -> Option<CharacterTable> {
        let path = self.path_for(n);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring character cache {}: {e}", path.display());
                return None;
            }
        };
        match parse(n, BufReader::new(file)) {
            Ok(table) => Some(table),
            Err(e) => {
                log::warn!("ignoring corrupt character cache {}: {e}", path.display());
                None
            }
        }
    }

    /// Writes the table atomically (temporary file, then rename).
    pub fn store(&self, table: &CharacterTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(table.n());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(render(table).as_bytes())?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(path)
    }

    /// Removes every cached table; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut removed = 0;
        for entry in entries {
            let entry = entry?;
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if name.starts_with(FILE_PREFIX) && name.ends_with(".jsonl") {
                fs::remove_file(entry.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// The exact file contents for a table.
pub fn render(table: &CharacterTable) -> String {
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
        n: table.n(),
        class_order: "revlex".into(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for (lambda, values) in table.rows() {
        let row = Row {
            lambda: lambda.clone(),
            values: values.iter().map(|v| v.to_string()).collect(),
        };
        out.push_str(&serde_json::to_string(&row).expect("row serializes"));
        out.push('\n');
    }
    out
}

fn parse(n: usize, reader: impl BufRead) -> Result<CharacterTable> {
    let corrupt = |msg: String| Error::Io(msg);
    let mut lines = reader.lines();
    let header: Header = serde_json::from_str(
        &lines
            .next()
            .ok_or_else(|| corrupt("empty file".into()))??,
    )
    .map_err(|e| corrupt(format!("bad header: {e}")))?;
    let expected = Header {
        format: FORMAT.into(),
        version: VERSION,
        n,
        class_order: "revlex".into(),
    };
    if header != expected {
        return Err(corrupt(format!("header mismatch: {header:?}")));
    }

    let classes = classes(n);
    let shapes: Vec<&Partition> = classes.iter().map(|c| &c.shape).collect();
    let mut rows = Vec::with_capacity(shapes.len());
    for (i, line) in lines.enumerate() {
        let line = line?;
        let row: Row = serde_json::from_str(&line)
            .map_err(|e| corrupt(format!("row {i}: {e}")))?;
        if shapes.get(i) != Some(&&row.lambda) {
            return Err(corrupt(format!("row {i} has unexpected label {}", row.lambda)));
        }
        if row.values.len() != shapes.len() {
            return Err(corrupt(format!("row {i} has {} values", row.values.len())));
        }
        let values = row
            .values
            .iter()
            .map(|v| v.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| corrupt(format!("row {i}: {e}")))?;
        // the identity class is last in canonical order
        if values.last() != Some(&BigInt::from(sn_dim(&row.lambda))) {
            return Err(corrupt(format!("row {i} has the wrong degree")));
        }
        rows.push((row.lambda, values));
    }
    if rows.len() != shapes.len() {
        return Err(corrupt(format!("{} rows, expected {}", rows.len(), shapes.len())));
    }
    Ok(CharacterTable::from_parts(n, classes, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterCache::new(dir.path());
        assert!(cache.load(5).is_none());
        let table = CharacterTable::compute(5);
        let path = cache.store(&table).unwrap();
        assert!(path.ends_with("sn_chars_v1_n05.jsonl"));
        assert_eq!(cache.load(5).unwrap(), table);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.load(5).is_none());
    }

    #[test]
    fn header_format() {
        let text = render(&CharacterTable::compute(3));
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            r#"{"format":"kron-stab-chars","version":1,"n":3,"class_order":"revlex"}"#
        );
        assert_eq!(lines.next().unwrap(), r#"{"lambda":[3],"values":["1","1","1"]}"#);
        assert_eq!(lines.next().unwrap(), r#"{"lambda":[2,1],"values":["-1","0","2"]}"#);
    }

    #[test]
    fn corrupt_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterCache::new(dir.path());
        let table = CharacterTable::compute(4);
        cache.store(&table).unwrap();
        let path = cache.path_for(4);

        let good = fs::read_to_string(&path).unwrap();
        fs::write(&path, good.replace("\"version\":1", "\"version\":2")).unwrap();
        assert!(cache.load(4).is_none());

        let truncated: String = good.lines().take(3).map(|l| format!("{l}\n")).collect();
        fs::write(&path, truncated).unwrap();
        assert!(cache.load(4).is_none());

        fs::write(&path, "not json\n").unwrap();
        assert!(cache.load(4).is_none());

        let tampered = good.replacen("\"1\"]}", "\"7\"]}", 1);
        fs::write(&path, tampered).unwrap();
        assert!(cache.load(4).is_none());
    }
}
