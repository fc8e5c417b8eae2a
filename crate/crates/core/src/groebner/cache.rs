//! On-disk cache of reduced bases, keyed by a SHA-256 of the input.
//!
//! Entries are plain JSON with elements written as operator strings. A
//! loaded entry is never trusted: every input generator must reduce to zero
//! and a deterministic sample of S-pairs must close, otherwise the entry is
//! counted as rejected and the caller recomputes.

use super::ideal::GroebnerBasis;
use crate::frontend::parse_operator;
use crate::weyl::sparse::{self, Terms};
use crate::weyl::{AlgebraProfile, TermOrder, WeylElement};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

#[derive(Debug)]
pub struct BasisCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
    rejected: AtomicUsize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub rejected: usize,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    order: String,
    vars: Vec<String>,
    elements: Vec<String>,
    cofactors: Option<Vec<Vec<String>>>,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(BasisCache { dir, hits: AtomicUsize::new(0), misses: AtomicUsize::new(0), rejected: AtomicUsize::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            rejected: self.rejected.load(Ordering::Relaxed),
        }
    }

    pub fn key(profile: &AlgebraProfile, order: &TermOrder, gens: &[WeylElement], track: &[bool]) -> String {
        let mut h = Sha256::new();
        h.update(profile.var_names().join(",").as_bytes());
        h.update(b"|");
        h.update(order.descriptor().as_bytes());
        h.update(b"|");
        h.update(track.iter().map(|&t| if t { '1' } else { '0' }).collect::<String>().as_bytes());
        for g in gens {
            h.update(b"|");
            h.update(g.to_string().as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub(crate) fn load(
        &self,
        key: &str,
        profile: &Arc<AlgebraProfile>,
        order: &TermOrder,
        gens: &[WeylElement],
    ) -> Option<GroebnerBasis> {
        let Ok(text) = std::fs::read_to_string(self.path(key)) else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        match Self::decode(&text, key, profile, order, gens) {
            Some(gb) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(gb)
            }
            None => {
                self.rejected.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn decode(
        text: &str,
        key: &str,
        profile: &Arc<AlgebraProfile>,
        order: &TermOrder,
        gens: &[WeylElement],
    ) -> Option<GroebnerBasis> {
        let entry: Entry = serde_json::from_str(text).ok()?;
        if entry.key != key || entry.order != order.descriptor() || entry.vars != profile.var_names() {
            return None;
        }
        let parse = |s: &String| -> Option<Terms> {
            let e = parse_operator(s, profile).ok()?;
            Some(sparse::resort(e.terms(), order))
        };
        let elements: Vec<Terms> = entry.elements.iter().map(parse).collect::<Option<_>>()?;
        if elements.iter().any(|t| t.is_empty()) {
            return None;
        }
        let cofactors = match &entry.cofactors {
            None => None,
            Some(rows) => {
                if rows.len() != elements.len() {
                    return None;
                }
                Some(rows.iter().map(|row| row.iter().map(parse).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?)
            }
        };
        let gb = GroebnerBasis::from_parts(profile, order, elements, cofactors);
        let seed = u8::from_str_radix(&key[..2], 16).unwrap_or(0) as usize;
        let pick = |len: usize| -> Vec<(usize, usize)> {
            if len < 2 {
                return Vec::new();
            }
            let i = seed % len;
            (0..len).filter(|&j| j != i).map(|j| (i, j)).collect()
        };
        gb.verify(gens, pick).then_some(gb)
    }

    /// Best effort: write failures leave the cache unchanged.
    pub(crate) fn store(&self, key: &str, gb: &GroebnerBasis) {
        let entry = Entry {
            key: key.to_string(),
            order: gb.order().descriptor(),
            vars: gb.profile().var_names(),
            elements: gb.elements().iter().map(|e| e.to_string()).collect(),
            cofactors: gb.cofactors().map(|cs| cs.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect()),
        };
        let Ok(json) = serde_json::to_string(&entry) else { return };
        let Ok(mut tmp) = tempfile::NamedTempFile::new_in(&self.dir) else { return };
        if tmp.write_all(json.as_bytes()).is_ok() {
            let _ = tmp.persist(self.path(key));
        }
    }
}
