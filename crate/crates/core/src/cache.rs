//! On-disk cache of form masks.
//!
//! File layout: `b"TUSV"`, version byte `0x01`, the bound `N` as a
//! little-endian `u64`, then `ceil((N+1)/64)` little-endian `u64` words with
//! bit `i` set iff `i` is attained.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::generators::{Domain, TernaryForm};
use crate::sieve::{form_mask, ValueMask};

pub const MAGIC: &[u8; 4] = b"TUSV";
pub const VERSION: u8 = 0x01;
pub const ENV_DIR: &str = "TUSV_CACHE_DIR";
const HEADER: usize = 13;

pub fn encode(mask: &ValueMask) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER + 8 * mask.words().len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&mask.bound().to_le_bytes());
    for w in mask.words() {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<ValueMask> {
    if bytes.len() < HEADER || &bytes[..4] != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Cache(format!("unsupported version {:#04x}", bytes[4])));
    }
    let bound = u64::from_le_bytes(bytes[5..HEADER].try_into().expect("8 bytes"));
    let body = &bytes[HEADER..];
    let words = bound.checked_add(1).map(|n| n.div_ceil(64));
    if words.and_then(|w| w.checked_mul(8)) != Some(body.len() as u64) {
        return Err(Error::Cache(format!("length {} does not match bound {bound}", body.len())));
    }
    let words = body.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    ValueMask::from_words(bound, words).map_err(|e| Error::Cache(e.to_string()))
}

/// Hex SHA-256 of the canonical form text, per-term domain flags and bound.
pub fn cache_key(f: &TernaryForm, bound: u64) -> String {
    let flags: String = f
        .terms()
        .iter()
        .map(|g| match g.domain() {
            Domain::Naturals => 'N',
            Domain::Integers => 'Z',
        })
        .collect();
    let digest = Sha256::digest(format!("{f}|{flags}|{bound}").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// The file existed but was unusable; it was replaced.
    Rebuilt(String),
}

#[derive(Debug, Clone)]
pub struct MaskCache {
    dir: PathBuf,
}

impl MaskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache rooted at `$TUSV_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(ENV_DIR).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, f: &TernaryForm, bound: u64) -> PathBuf {
        self.dir.join(format!("{}.mask", cache_key(f, bound)))
    }

    /// `Ok(None)` when absent; a corrupt file is an error.
    pub fn load(&self, f: &TernaryForm, bound: u64) -> Result<Option<ValueMask>> {
        match fs::read(self.path(f, bound)) {
            Ok(bytes) => decode(&bytes).and_then(|m| {
                if m.bound() == bound {
                    Ok(Some(m))
                } else {
                    Err(Error::Cache(format!("stored bound {} != {bound}", m.bound())))
                }
            }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a temporary file in the same directory and renames it into
    /// place.
    pub fn store(&self, f: &TernaryForm, bound: u64, mask: &ValueMask) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(f, bound);
        let tmp = self.dir.join(format!(".{}.{}.tmp", cache_key(f, bound), std::process::id()));
        let res = (|| {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(&encode(mask))?;
            file.sync_all()?;
            fs::rename(&tmp, &path)
        })();
        if res.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        Ok(res?)
    }

    pub fn get_or_build(&self, f: &TernaryForm, bound: u64) -> Result<(ValueMask, CacheStatus)> {
        let status = match self.load(f, bound) {
            Ok(Some(m)) => return Ok((m, CacheStatus::Hit)),
            Ok(None) => CacheStatus::Miss,
            Err(Error::Cache(why)) => CacheStatus::Rebuilt(why),
            Err(e) => return Err(e),
        };
        let mask = form_mask(f, bound)?;
        self.store(f, bound, &mask)?;
        Ok((mask, status))
    }

    /// Removes every cache file; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut n = 0;
        for entry in entries {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "mask") {
                fs::remove_file(path)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(bound: u64) -> ValueMask {
        form_mask(&"tri + 2*sq + gp(3,2)".parse().unwrap(), bound).unwrap()
    }

    #[test]
    fn encode_decode() {
        for n in [0, 1, 63, 64, 65, 1000] {
            let m = mask(n);
            let bytes = encode(&m);
            assert_eq!(bytes.len(), 13 + 8 * (n as usize + 1).div_ceil(64));
            assert_eq!(&bytes[..5], b"TUSV\x01");
            assert_eq!(decode(&bytes).unwrap(), m);
        }
    }

    #[test]
    fn corrupt_inputs() {
        let bytes = encode(&mask(200));
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        assert!(decode(&bytes[..10]).is_err());
        let mut v = bytes.clone();
        v[4] = 2;
        assert!(decode(&v).is_err());
        let mut v = bytes.clone();
        v[0] = b'X';
        assert!(decode(&v).is_err());
        // A set bit past the bound.
        let mut v = bytes;
        let last = v.len() - 1;
        v[last] |= 0x80;
        assert!(decode(&v).is_err());
    }

    #[test]
    fn keys_distinguish_domain_and_bound() {
        let a: TernaryForm = "sq + gp(1,2) + 0".parse().unwrap();
        let b: TernaryForm = "sq@int + gp(1,2)@int + 0".parse().unwrap();
        assert_ne!(cache_key(&a, 10), cache_key(&b, 10));
        assert_ne!(cache_key(&a, 10), cache_key(&a, 11));
        assert_eq!(cache_key(&a, 10).len(), 64);
    }
}
