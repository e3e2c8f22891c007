//! Memoized Schubert problem degrees, persisted as `cache/degrees.txt`.
//!
//! One entry per line: `m;cond1|cond2|...;degree`, with the conditions in
//! canonical order. Lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::schur::{problem_degree, SchubertProblem};

pub const CACHE_FILE: &str = "degrees.txt";

#[derive(Debug, Default)]
pub struct DegreeCache {
    entries: RwLock<HashMap<String, BigUint>>,
}

impl DegreeCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `dir/degrees.txt`; a missing file yields an empty cache.
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(CACHE_FILE);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Self::new()),
            Err(e) => return Err(Error::io(path, e)),
        };
        let mut entries = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse { path: path.clone(), line: n + 1, msg: msg.into() };
            let (key, degree) = line.rsplit_once(';').ok_or_else(|| parse_err("expected `m;conditions;degree`"))?;
            let problem: SchubertProblem = key.parse().map_err(|e: Error| parse_err(&e.to_string()))?;
            let degree: BigUint = degree.trim().parse().map_err(|_| parse_err("bad degree"))?;
            entries.insert(problem.encode(), degree);
        }
        Ok(DegreeCache { entries: RwLock::new(entries) })
    }

    /// Writes all entries to `dir/degrees.txt`, sorted by key.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(CACHE_FILE);
        let entries = self.entries.read().unwrap();
        let mut keys: Vec<&String> = entries.keys().collect();
        keys.sort();
        let mut out = Vec::new();
        for k in keys {
            writeln!(out, "{k};{}", entries[k]).expect("write to Vec");
        }
        fs::write(&path, out).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, p: &SchubertProblem) -> Option<BigUint> {
        self.entries.read().unwrap().get(&p.encode()).cloned()
    }

    pub fn insert(&self, p: &SchubertProblem, degree: BigUint) {
        self.entries.write().unwrap().insert(p.encode(), degree);
    }

    /// Moves another cache's entries into this one.
    pub fn merge(&self, other: DegreeCache) {
        let other = other.entries.into_inner().unwrap();
        self.entries.write().unwrap().extend(other);
    }

    /// Degree from the cache, computing and storing it on a miss.
    pub fn degree(&self, p: &SchubertProblem) -> Result<BigUint> {
        if let Some(d) = self.get(p) {
            return Ok(d);
        }
        let d = problem_degree(p)?;
        self.insert(p, d.clone());
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{BoxBound, Partition};

    fn problem(m: u32, conds: &[&str]) -> SchubertProblem {
        SchubertProblem::new(
            BoxBound::new(m).unwrap(),
            conds.iter().map(|c| c.parse::<Partition>().unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn save_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DegreeCache::new();
        let p = problem(2, &["1", "1", "1", "1"]);
        assert_eq!(cache.degree(&p).unwrap(), BigUint::from(2u32));
        cache.degree(&problem(2, &["1", "2,1"])).unwrap();
        cache.save(dir.path()).unwrap();
        let text = fs::read_to_string(dir.path().join(CACHE_FILE)).unwrap();
        assert_eq!(text, "2;1|1|1|1;2\n2;2,1|1;1\n");

        let loaded = DegreeCache::load(dir.path()).unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded.get(&p), Some(BigUint::from(2u32)));
    }

    #[test]
    fn missing_file_is_empty_and_bad_line_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        assert!(DegreeCache::load(dir.path()).unwrap().is_empty());
        fs::write(dir.path().join(CACHE_FILE), "# header\n2;1|1|1|1;2\n2;1|1;x\n").unwrap();
        match DegreeCache::load(dir.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
