//! On-disk cache of count series keyed by (pattern, N, engine, version).
//!
//! File layout: 8-byte magic, 32-byte SHA-256 of the payload, payload. The
//! payload is a list of length-prefixed little-endian byte strings: the
//! provenance tag followed by c_0..c_N. Writes go to a temporary file that is
//! renamed into place, so concurrent writers never expose partial files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use dashu::integer::UBig;
use sha2::{Digest, Sha256};

use super::Engine;
use crate::error::{Error, Result};
use crate::perm::Pattern;
use crate::series::CountSeries;

const MAGIC: &[u8; 8] = b"CPAPSER1";
const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CacheLookup {
    Hit(CountSeries),
    Miss,
    /// A file was present but unreadable; the caller should recompute.
    Corrupt { path: PathBuf, reason: String },
}

#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SeriesCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(pat: &Pattern, n: usize, engine: Engine) -> String {
        let mut h = Sha256::new();
        h.update(format!("{pat}|{n}|{}|{CODE_VERSION}", engine.name()));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, pat: &Pattern, n: usize, engine: Engine) -> PathBuf {
        self.dir.join(format!("{}.series", Self::key(pat, n, engine)))
    }

    pub fn load(&self, pat: &Pattern, n: usize, engine: Engine) -> CacheLookup {
        let path = self.path(pat, n, engine);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return CacheLookup::Miss,
            Err(e) => return CacheLookup::Corrupt { path, reason: e.to_string() },
        };
        match decode(&bytes) {
            Ok(s) if s.order() == n => CacheLookup::Hit(s),
            Ok(s) => CacheLookup::Corrupt {
                path,
                reason: format!("holds order {} instead of {n}", s.order()),
            },
            Err(reason) => CacheLookup::Corrupt { path, reason },
        }
    }

    pub fn store(&self, pat: &Pattern, engine: Engine, series: &CountSeries) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(pat, series.order(), engine);
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode(series))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

fn encode(series: &CountSeries) -> Vec<u8> {
    let mut payload = Vec::new();
    let mut push = |bytes: &[u8]| {
        payload.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        payload.extend_from_slice(bytes);
    };
    push(series.provenance().as_bytes());
    for c in series.counts() {
        push(&c.to_le_bytes());
    }
    let mut out = MAGIC.to_vec();
    out.extend_from_slice(&Sha256::digest(&payload));
    out.extend_from_slice(&payload);
    out
}

fn decode(bytes: &[u8]) -> std::result::Result<CountSeries, String> {
    if bytes.len() < 40 || &bytes[..8] != MAGIC {
        return Err("bad header".into());
    }
    let payload = &bytes[40..];
    if Sha256::digest(payload).as_slice() != &bytes[8..40] {
        return Err("checksum mismatch".into());
    }
    let mut fields = Vec::new();
    let mut rest = payload;
    while !rest.is_empty() {
        if rest.len() < 4 {
            return Err("truncated length".into());
        }
        let len = u32::from_le_bytes(rest[..4].try_into().unwrap()) as usize;
        rest = &rest[4..];
        if rest.len() < len {
            return Err("truncated field".into());
        }
        fields.push(&rest[..len]);
        rest = &rest[len..];
    }
    let (prov, counts) = fields.split_first().ok_or("empty payload")?;
    let prov = String::from_utf8(prov.to_vec()).map_err(|e| e.to_string())?;
    let counts = counts.iter().map(|b| UBig::from_le_bytes(b)).collect();
    CountSeries::new(counts, prov).map_err(|e: Error| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SeriesCache::new(dir.path());
        let pat: Pattern = "1423".parse().unwrap();
        let counts = [1u32, 1, 2, 6, 23].iter().map(|&c| UBig::from(c)).collect();
        let s = CountSeries::new(counts, "1423").unwrap();
        assert!(matches!(cache.load(&pat, 4, Engine::Ranks), CacheLookup::Miss));
        let path = cache.store(&pat, Engine::Ranks, &s).unwrap();
        match cache.load(&pat, 4, Engine::Ranks) {
            CacheLookup::Hit(got) => assert_eq!(got, s),
            other => panic!("{other:?}"),
        }
        // Other engines and orders use other keys.
        assert!(matches!(cache.load(&pat, 4, Engine::Frontier), CacheLookup::Miss));
        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        fs::write(&path, bytes).unwrap();
        assert!(matches!(cache.load(&pat, 4, Engine::Ranks), CacheLookup::Corrupt { .. }));
    }
}
