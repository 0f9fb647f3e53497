//! Persistent Bessel zeros.
//!
//! File layout: magic `CWZ1`, record count (u64 LE), records of three LE f64
//! (ν, m, j_{ν,m}), then the SHA-256 of everything before it. A record with
//! m = 0 stores how far the zeros of that order have been scanned, so a
//! lookup below that bound is a complete answer.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use conewave_core::special_fn::{bessel_zeros, bessel_zeros_resume};
use conewave_core::spectrum::ZeroProvider;
use sha2::{Digest, Sha256};

use crate::{io_err, CliError, Context, Result};

pub const MAGIC: &[u8; 4] = b"CWZ1";
const HEADER: usize = 12;
const RECORD: usize = 24;
const DIGEST: usize = 32;

#[derive(Debug, Clone, Default, PartialEq)]
struct Order {
    nu: f64,
    scanned_to: f64,
    zeros: Vec<f64>,
}

/// How the cache was opened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpenStatus {
    Missing,
    Loaded,
    /// The file failed validation and is ignored; it is overwritten on save.
    Rebuilt(String),
}

#[derive(Debug, Default)]
pub struct ZeroCache {
    path: Option<PathBuf>,
    orders: Mutex<BTreeMap<u64, Order>>,
}

/// BTreeMap key with the numeric order of nonnegative ν.
fn key(nu: f64) -> u64 {
    nu.to_bits()
}

impl ZeroCache {
    pub fn in_memory() -> Self {
        ZeroCache::default()
    }

    /// Loads `path` if it exists; a corrupt file is reported and replaced by an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<(Self, OpenStatus)> {
        let path = path.into();
        let mut cache = ZeroCache { path: Some(path.clone()), ..Default::default() };
        if !path.exists() {
            return Ok((cache, OpenStatus::Missing));
        }
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        match decode(&path, &bytes) {
            Ok(orders) => {
                cache.orders = Mutex::new(orders);
                Ok((cache, OpenStatus::Loaded))
            }
            Err(CliError::Checksum { reason, .. }) => Ok((cache, OpenStatus::Rebuilt(reason))),
            Err(e) => Err(e),
        }
    }

    /// Strict load: corruption is an error.
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(io_err(path))?;
        let orders = decode(path, &bytes)?;
        Ok(ZeroCache { path: Some(path.to_path_buf()), orders: Mutex::new(orders) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        self.save_to(path)
    }

    pub fn save_to(&self, path: &Path) -> Result<()> {
        let bytes = encode(&self.orders.lock().expect("cache lock"));
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
        // write-then-rename so a crash never leaves a truncated cache
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }

    /// The first `count` zeros of each order, computing what is missing.
    pub fn fill(&self, nus: &[f64], count: usize) -> Result<()> {
        for &nu in nus {
            let have = self.orders.lock().expect("cache lock").get(&key(nu)).map_or(0, |o| o.zeros.len());
            if have >= count {
                continue;
            }
            let zeros = bessel_zeros(nu, count).context(|| format!("zeros of J_{nu}"))?;
            let scanned_to = *zeros.last().unwrap_or(&0.0);
            let mut map = self.orders.lock().expect("cache lock");
            let entry = map.entry(key(nu)).or_insert_with(|| Order { nu, ..Default::default() });
            if entry.zeros.len() < zeros.len() {
                entry.zeros = zeros;
                entry.scanned_to = entry.scanned_to.max(scanned_to);
            }
        }
        Ok(())
    }

    /// All stored (ν, m, j_{ν,m}), sorted by (ν, m).
    pub fn triples(&self) -> Vec<(f64, u32, f64)> {
        let map = self.orders.lock().expect("cache lock");
        map.values().flat_map(|o| o.zeros.iter().enumerate().map(move |(i, &j)| (o.nu, i as u32 + 1, j))).collect()
    }

    pub fn get(&self, nu: f64, m: u32) -> Option<f64> {
        let map = self.orders.lock().expect("cache lock");
        map.get(&key(nu)).and_then(|o| o.zeros.get(m.checked_sub(1)? as usize).copied())
    }

    pub fn len(&self) -> usize {
        self.orders.lock().expect("cache lock").values().map(|o| o.zeros.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl ZeroProvider for ZeroCache {
    fn zeros_below(&self, nu: f64, xmax: f64) -> conewave_core::Result<Vec<f64>> {
        let known = {
            let map = self.orders.lock().expect("cache lock");
            match map.get(&key(nu)) {
                Some(o) if o.scanned_to >= xmax => {
                    return Ok(o.zeros.iter().copied().take_while(|&j| j <= xmax).collect());
                }
                Some(o) => o.zeros.clone(),
                None => Vec::new(),
            }
        };
        // the resumed scan is bit-identical to a cold one
        let more = bessel_zeros_resume(nu, &known, xmax)?;
        let mut map = self.orders.lock().expect("cache lock");
        let entry = map.entry(key(nu)).or_insert_with(|| Order { nu, ..Default::default() });
        if entry.zeros.len() == known.len() {
            entry.zeros.extend_from_slice(&more);
        }
        entry.scanned_to = entry.scanned_to.max(xmax);
        Ok(entry.zeros.iter().copied().take_while(|&j| j <= xmax).collect())
    }
}

fn encode(orders: &BTreeMap<u64, Order>) -> Vec<u8> {
    let mut records: Vec<[f64; 3]> = Vec::new();
    for o in orders.values() {
        records.push([o.nu, 0.0, o.scanned_to]);
        for (i, &j) in o.zeros.iter().enumerate() {
            records.push([o.nu, (i + 1) as f64, j]);
        }
    }
    let mut out = Vec::with_capacity(HEADER + RECORD * records.len() + DIGEST);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(records.len() as u64).to_le_bytes());
    for r in &records {
        for x in r {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

fn decode(path: &Path, bytes: &[u8]) -> Result<BTreeMap<u64, Order>> {
    let bad = |reason: &str| CliError::Checksum { path: path.to_path_buf(), reason: reason.into() };
    if bytes.len() < HEADER + DIGEST || &bytes[..4] != MAGIC {
        return Err(bad("missing CWZ1 header"));
    }
    let count = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes")) as usize;
    let body = count.checked_mul(RECORD).and_then(|b| b.checked_add(HEADER)).ok_or_else(|| bad("bad record count"))?;
    if bytes.len() != body + DIGEST {
        return Err(bad("length does not match the record count"));
    }
    if Sha256::digest(&bytes[..body]).as_slice() != &bytes[body..] {
        return Err(bad("checksum mismatch"));
    }
    let f = |at: usize| f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"));
    let mut orders: BTreeMap<u64, Order> = BTreeMap::new();
    for i in 0..count {
        let at = HEADER + RECORD * i;
        let (nu, m, j) = (f(at), f(at + 8), f(at + 16));
        if !(nu >= 0.0 && m >= 0.0 && m.fract() == 0.0 && j.is_finite()) {
            return Err(bad("malformed record"));
        }
        let o = orders.entry(key(nu)).or_insert_with(|| Order { nu, ..Default::default() });
        if m == 0.0 {
            o.scanned_to = j;
        } else if m as usize == o.zeros.len() + 1 {
            o.zeros.push(j);
        } else {
            return Err(bad("zero indices are not consecutive"));
        }
    }
    Ok(orders)
}
