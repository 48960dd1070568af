use std::collections::{BTreeMap, HashSet};
use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use super::ResultRecord;
use crate::error::{Error, Result};

const COMPLETE: &str = "#complete";

/// Append-only, line-oriented store of result records. Lines starting with
/// `#complete` mark finished runs: `#complete <TAB> key <TAB> row-json`.
#[derive(Clone, Debug)]
pub struct ResultCache {
    path: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheContents {
    /// First occurrence of each canonical graph6, in file order.
    pub records: Vec<ResultRecord>,
    pub completed: BTreeMap<String, String>,
}

impl ResultCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// A missing file reads as empty.
    pub fn load(&self) -> Result<CacheContents> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(CacheContents::default()),
            Err(e) => return Err(Error::Cache(e.to_string())),
        };
        let mut out = CacheContents::default();
        let mut seen = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix(COMPLETE) {
                let mut parts = rest.trim_start_matches('\t').splitn(2, '\t');
                let key = parts.next().unwrap_or_default();
                let row = parts
                    .next()
                    .ok_or_else(|| Error::Cache(format!("line {}: marker without row", i + 1)))?;
                out.completed.insert(key.to_string(), row.to_string());
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let r = ResultRecord::from_line(line).map_err(|e| match e {
                Error::Cache(msg) => Error::Cache(format!("line {}: {msg}", i + 1)),
                other => other,
            })?;
            if seen.insert(r.canonical_g6.clone()) {
                out.records.push(r);
            }
        }
        Ok(out)
    }

    /// Appends the records not already present; returns how many.
    pub fn append(&self, records: &[ResultRecord]) -> Result<usize> {
        let existing: HashSet<String> = self
            .load()?
            .records
            .into_iter()
            .map(|r| r.canonical_g6)
            .collect();
        let mut fresh = HashSet::new();
        let mut text = String::new();
        for r in records {
            if !existing.contains(&r.canonical_g6) && fresh.insert(r.canonical_g6.clone()) {
                text.push_str(&r.to_line());
                text.push('\n');
            }
        }
        if !text.is_empty() {
            self.write(&text)?;
        }
        Ok(fresh.len())
    }

    pub fn mark_complete(&self, key: &str, row_json: &str) -> Result<()> {
        if key.contains(['\t', '\n']) || row_json.contains('\n') {
            return Err(Error::Cache("marker fields must be single-line".into()));
        }
        self.write(&format!("{COMPLETE}\t{key}\t{row_json}\n"))
    }

    fn write(&self, text: &str) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(e.to_string()))?;
        f.write_all(text.as_bytes())
            .map_err(|e| Error::Cache(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(g6: &str, shard: &str) -> ResultRecord {
        ResultRecord {
            canonical_g6: g6.into(),
            n: 4,
            m: 5,
            flags: "PCUDKE".into(),
            audit_digest: "ok/9".into(),
            shard: shard.into(),
        }
    }

    #[test]
    fn append_dedups_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("c.tsv"));
        assert_eq!(cache.load().unwrap(), CacheContents::default());
        assert_eq!(cache.append(&[rec("A", "all"), rec("B", "all"), rec("A", "x")]).unwrap(), 2);
        assert_eq!(cache.append(&[rec("B", "d2:0/2"), rec("C", "all")]).unwrap(), 1);
        assert_eq!(cache.append(&[rec("C", "all")]).unwrap(), 0);
        cache.mark_complete("k", "{}").unwrap();
        let c = cache.load().unwrap();
        let names: Vec<&str> = c.records.iter().map(|r| r.canonical_g6.as_str()).collect();
        assert_eq!(names, ["A", "B", "C"]);
        assert_eq!(c.completed["k"], "{}");
    }

    #[test]
    fn malformed_lines_report_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.tsv");
        fs::write(&path, format!("{}\nnot a record\n", rec("A", "all").to_line())).unwrap();
        let err = ResultCache::new(&path).load().unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn duplicate_lines_on_disk_collapse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.tsv");
        let line = rec("A", "all").to_line();
        fs::write(&path, format!("{line}\n{line}\n")).unwrap();
        assert_eq!(ResultCache::new(&path).load().unwrap().records.len(), 1);
    }
}
