//! Binary table cache and CSV curve cache.
//!
//! Table cache format: magic `NTMC`, format version (u32 LE), kind tag (u8:
//! 0 = d, 1 = r, 2 = tau), limit (u64 LE), then `limit` consecutive 64-bit LE
//! values. Any magic/version/kind/length mismatch invalidates the cache and
//! callers fall back to rebuilding. Tau tables can only be cached while every
//! value fits in 64 bits (true up to n = 2562); beyond that the write reports
//! an overflow and the caller simply skips caching.
//!
//! Curve cache: CSV with header `t,e_value` and 17-significant-digit decimal
//! text, one file per (range, config) key; the key hash goes in the filename.

use crate::error::{Error, Result};
use crate::numeric::fnv1a64;
use crate::tables::{ArithTable, TableKind};
use crate::zeta::{ECurve, QuadratureConfig};

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

pub const TABLE_MAGIC: &[u8; 4] = b"NTMC";
pub const TABLE_FORMAT_VERSION: u32 = 1;

/// Content-addressed file name for a table.
pub fn table_cache_path(dir: &Path, kind: TableKind, limit: u64) -> PathBuf {
    dir.join(format!(
        "ntmc-{}-{limit}-v{TABLE_FORMAT_VERSION}.bin",
        kind.label()
    ))
}

/// Serialize a table. Fails with `Overflow` when a tau value exceeds the
/// 64-bit cache word.
pub fn write_table(path: &Path, table: &ArithTable) -> Result<()> {
    let words = table.to_i64_words()?;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(TABLE_MAGIC)?;
    w.write_all(&TABLE_FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&[table.kind().tag()])?;
    w.write_all(&table.limit().to_le_bytes())?;
    for v in words {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Deserialize a table, validating magic, version, kind tag and length.
pub fn read_table(path: &Path) -> Result<ArithTable> {
    let mut r = BufReader::new(fs::File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|_| Error::CacheInvalid("truncated header".into()))?;
    if &magic != TABLE_MAGIC {
        return Err(Error::CacheInvalid("bad magic bytes".into()));
    }
    let mut buf4 = [0u8; 4];
    r.read_exact(&mut buf4)
        .map_err(|_| Error::CacheInvalid("truncated version".into()))?;
    let version = u32::from_le_bytes(buf4);
    if version != TABLE_FORMAT_VERSION {
        return Err(Error::CacheInvalid(format!(
            "format version {version}, expected {TABLE_FORMAT_VERSION}"
        )));
    }
    let mut tag = [0u8; 1];
    r.read_exact(&mut tag)
        .map_err(|_| Error::CacheInvalid("truncated kind tag".into()))?;
    let kind = TableKind::from_tag(tag[0])
        .ok_or_else(|| Error::CacheInvalid(format!("unknown kind tag {}", tag[0])))?;
    let mut buf8 = [0u8; 8];
    r.read_exact(&mut buf8)
        .map_err(|_| Error::CacheInvalid("truncated limit".into()))?;
    let limit = u64::from_le_bytes(buf8);
    let mut values = Vec::with_capacity(limit as usize);
    for _ in 0..limit {
        r.read_exact(&mut buf8)
            .map_err(|_| Error::CacheInvalid("truncated values".into()))?;
        values.push(i64::from_le_bytes(buf8));
    }
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(Error::CacheInvalid("trailing bytes".into()));
    }
    Ok(ArithTable::from_raw_i64(kind, values))
}

/// Whether a load was served from disk or rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Rebuilt,
}

/// Load a table from `dir` or build (and best-effort cache) it.
/// Invalid or unreadable cache files trigger a rebuild; failure to *write*
/// the cache (including tau overflow past the 64-bit word) is non-fatal.
pub fn load_or_build_table(
    dir: &Path,
    kind: TableKind,
    limit: u64,
) -> Result<(ArithTable, CacheStatus)> {
    let path = table_cache_path(dir, kind, limit);
    if path.exists() {
        match read_table(&path) {
            Ok(table) if table.kind() == kind && table.limit() == limit => {
                return Ok((table, CacheStatus::Hit));
            }
            Ok(_) | Err(Error::CacheInvalid(_)) | Err(Error::Io(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let table = ArithTable::build(kind, limit)?;
    let _ = write_table(&path, &table);
    Ok((table, CacheStatus::Rebuilt))
}

/// Key for a curve cache entry.
pub fn curve_cache_path(dir: &Path, t_min: f64, t_max: f64, config: &QuadratureConfig) -> PathBuf {
    let key = format!(
        "tmin={t_min:e};tmax={t_max:e};{}",
        config.canonical_string()
    );
    dir.join(format!("ecurve-{:016x}.csv", fnv1a64(key.as_bytes())))
}

/// Write a curve as `t,e_value` CSV with 17 significant digits.
pub fn write_curve(path: &Path, curve: &ECurve) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "t,e_value")?;
    for (t, e) in curve.grid().iter().zip(curve.values()) {
        writeln!(w, "{t:.16e},{e:.16e}")?;
    }
    w.flush()?;
    Ok(())
}

/// Read a curve back; the config is supplied by the caller (it is part of
/// the file name key, not the payload).
pub fn read_curve(path: &Path, config: &QuadratureConfig) -> Result<ECurve> {
    let r = BufReader::new(fs::File::open(path)?);
    let mut lines = r.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == "t,e_value" => {}
        _ => return Err(Error::CacheInvalid("bad curve header".into())),
    }
    let mut ts = Vec::new();
    let mut es = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let t = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| Error::CacheInvalid("bad t field".into()))?;
        let e = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| Error::CacheInvalid("bad e field".into()))?;
        ts.push(t);
        es.push(e);
    }
    ECurve::from_grid(ts, es, *config, f64::NAN)
}

/// Load a curve from cache or build and cache it.
pub fn load_or_build_curve(
    dir: &Path,
    t_min: f64,
    t_max: f64,
    config: &QuadratureConfig,
) -> Result<(ECurve, CacheStatus)> {
    let path = curve_cache_path(dir, t_min, t_max, config);
    if path.exists() {
        if let Ok(curve) = read_curve(&path, config) {
            return Ok((curve, CacheStatus::Hit));
        }
    }
    let curve = crate::zeta::build_e_curve(t_min, t_max, config)?;
    let _ = write_curve(&path, &curve);
    Ok((curve, CacheStatus::Rebuilt))
}
